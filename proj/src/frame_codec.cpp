#include <lfc/frame_codec.hpp>

#include <lfc/byte_io.hpp>
#include <lfc/error.hpp>
#include <lfc/range_coder.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace lfc {

using entropy::BitModel;
using entropy::ByteModel;
using entropy::RangeDecoder;
using entropy::RangeEncoder;
using entropy::SIntModel;
using entropy::UIntModel;

namespace {

constexpr std::array<char, 4> kFrameMagic{'L', 'F', 'I', 'F'};
constexpr std::size_t kFrameHeaderSize = 4 + 1 + 4 + 4 + 1 + 4;
constexpr std::uint32_t kMaxDimension = 1U << 16;
constexpr std::int64_t kMaxLevel = 1 << 20;

void check_qp(int qp) {
  if (qp < 0 || qp > kMaxQp) {
    throw Error("qp " + std::to_string(qp) + " outside [0, 51]");
  }
}

const std::array<double, 64> &basis() {
  static const auto table = [] {
    std::array<double, 64> c{};
    for (int k = 0; k < 8; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int n = 0; n < 8; ++n) {
        c[k * 8 + n] = scale * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
      }
    }
    return c;
  }();
  return table;
}

struct ConstPlane {
  int width;
  int height;
  std::span<const std::uint8_t> samples;
};

struct MutablePlane {
  int width;
  int height;
  std::span<std::uint8_t> samples;
};

// Context set for the transform path of one plane type (luma or chroma).
struct CoefficientModels {
  SIntModel dc;
  BitModel coded[2]{};
  std::array<UIntModel, 4> run{};
  std::array<UIntModel, 4> level{};
  std::array<BitModel, 16> last{};

  static int run_context(int prev) { return prev == 0 ? 0 : prev < 6 ? 1 : prev < 20 ? 2 : 3; }
  static int level_context(int pos) { return pos < 3 ? 0 : pos < 10 ? 1 : pos < 28 ? 2 : 3; }
  static int last_context(int pos, std::uint32_t magnitude) {
    return std::min(pos / 8, 7) * 2 + (magnitude > 1 ? 1 : 0);
  }
};

std::uint8_t sample_at(const ConstPlane &p, int x, int y) {
  x = std::clamp(x, 0, p.width - 1);
  y = std::clamp(y, 0, p.height - 1);
  return p.samples[static_cast<std::size_t>(y) * p.width + x];
}

std::int32_t quantize(double coefficient, double step) {
  return static_cast<std::int32_t>(std::lround(coefficient / step));
}

void encode_plane_transform(RangeEncoder &enc, CoefficientModels &models, const ConstPlane &plane,
                            int qp) {
  const double step = quantizer_step(qp);
  const double dc_step = dc_quantizer_step(qp);
  const auto &zz = dct::zigzag();
  std::int32_t prev_dc = 0;
  int prev_coded = 0;
  for (int by = 0; by < plane.height; by += 8) {
    for (int bx = 0; bx < plane.width; bx += 8) {
      dct::Block block{};
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          block[y * 8 + x] = sample_at(plane, bx + x, by + y) - 128.0;
        }
      }
      dct::forward(block);

      std::array<std::int32_t, 64> levels{};
      levels[0] = quantize(block[0], dc_step);
      for (int pos = 1; pos < 64; ++pos) {
        levels[pos] = quantize(block[zz[pos]], step);
      }

      models.dc.encode(enc, levels[0] - prev_dc);
      prev_dc = levels[0];

      int last_pos = 0;
      for (int pos = 63; pos > 0; --pos) {
        if (levels[pos] != 0) {
          last_pos = pos;
          break;
        }
      }
      const int coded = last_pos > 0 ? 1 : 0;
      enc.encode(models.coded[prev_coded], coded);
      prev_coded = coded;
      if (coded == 0) {
        continue;
      }

      int prev = 0;
      for (int pos = 1; pos <= last_pos; ++pos) {
        if (levels[pos] == 0) {
          continue;
        }
        const auto magnitude = static_cast<std::uint32_t>(std::abs(levels[pos]));
        models.run[CoefficientModels::run_context(prev)].encode(
            enc, static_cast<std::uint32_t>(pos - prev - 1));
        models.level[CoefficientModels::level_context(pos)].encode(enc, magnitude - 1);
        enc.encode_direct(levels[pos] < 0 ? 1U : 0U, 1);
        if (pos < 63) {
          enc.encode(models.last[CoefficientModels::last_context(pos, magnitude)],
                     pos == last_pos ? 1 : 0);
        }
        prev = pos;
      }
    }
  }
}

void decode_plane_transform(RangeDecoder &dec, CoefficientModels &models, MutablePlane plane,
                            int qp) {
  const double step = quantizer_step(qp);
  const double dc_step = dc_quantizer_step(qp);
  const auto &zz = dct::zigzag();
  std::int32_t prev_dc = 0;
  int prev_coded = 0;
  for (int by = 0; by < plane.height; by += 8) {
    for (int bx = 0; bx < plane.width; bx += 8) {
      std::array<std::int32_t, 64> levels{};
      const std::int64_t dc = static_cast<std::int64_t>(prev_dc) + models.dc.decode(dec);
      if (dc > kMaxLevel || dc < -kMaxLevel) {
        throw FormatError("DC level out of range");
      }
      levels[0] = static_cast<std::int32_t>(dc);
      prev_dc = levels[0];

      const int coded = dec.decode(models.coded[prev_coded]);
      prev_coded = coded;
      if (coded != 0) {
        int prev = 0;
        for (;;) {
          const auto run = models.run[CoefficientModels::run_context(prev)].decode(dec);
          const auto pos = static_cast<std::int64_t>(prev) + run + 1;
          if (pos > 63) {
            throw FormatError("coefficient run past end of block");
          }
          const auto p = static_cast<int>(pos);
          const auto magnitude =
              static_cast<std::int64_t>(models.level[CoefficientModels::level_context(p)].decode(dec)) + 1;
          if (magnitude > kMaxLevel) {
            throw FormatError("AC level out of range");
          }
          const bool negative = dec.decode_direct(1) != 0;
          levels[p] = static_cast<std::int32_t>(negative ? -magnitude : magnitude);
          prev = p;
          if (p == 63 ||
              dec.decode(models.last[CoefficientModels::last_context(
                  p, static_cast<std::uint32_t>(magnitude))]) == 1) {
            break;
          }
        }
      }

      dct::Block block{};
      block[0] = levels[0] * dc_step;
      for (int pos = 1; pos < 64; ++pos) {
        block[zz[pos]] = levels[pos] * step;
      }
      dct::inverse(block);
      for (int y = 0; y < 8 && by + y < plane.height; ++y) {
        for (int x = 0; x < 8 && bx + x < plane.width; ++x) {
          plane.samples[static_cast<std::size_t>(by + y) * plane.width + bx + x] =
              static_cast<std::uint8_t>(std::clamp(std::round(block[y * 8 + x] + 128.0), 0.0, 255.0));
        }
      }
    }
  }
}

// Median edge detector (LOCO-I).
int med_predict(std::span<const std::uint8_t> s, int width, int x, int y) {
  if (y == 0) {
    return x == 0 ? 128 : s[x - 1];
  }
  const auto row = static_cast<std::size_t>(y) * width;
  const int b = s[row - width + x];
  if (x == 0) {
    return b;
  }
  const int a = s[row + x - 1];
  const int c = s[row - width + x - 1];
  if (c >= std::max(a, b)) {
    return std::min(a, b);
  }
  if (c <= std::min(a, b)) {
    return std::max(a, b);
  }
  return a + b - c;
}

void encode_plane_lossless(RangeEncoder &enc, ByteModel &model, const ConstPlane &plane) {
  const auto s = plane.samples;
  for (int y = 0; y < plane.height; ++y) {
    for (int x = 0; x < plane.width; ++x) {
      const int residual = s[static_cast<std::size_t>(y) * plane.width + x] -
                           med_predict(s, plane.width, x, y);
      model.encode(enc, static_cast<std::uint8_t>(residual & 0xFF));
    }
  }
}

void decode_plane_lossless(RangeDecoder &dec, ByteModel &model, MutablePlane plane) {
  const auto s = plane.samples;
  for (int y = 0; y < plane.height; ++y) {
    for (int x = 0; x < plane.width; ++x) {
      const int predicted = med_predict(s, plane.width, x, y);
      s[static_cast<std::size_t>(y) * plane.width + x] =
          static_cast<std::uint8_t>((predicted + model.decode(dec)) & 0xFF);
    }
  }
}

} // namespace

double quantizer_step(int qp) {
  check_qp(qp);
  return std::exp2((qp - 4) / 6.0);
}

double dc_quantizer_step(int qp) { return std::min(quantizer_step(qp), 8.0); }

namespace dct {

void forward(Block &block) {
  const auto &c = basis();
  Block tmp{};
  // rows
  for (int y = 0; y < 8; ++y) {
    for (int k = 0; k < 8; ++k) {
      double s = 0.0;
      for (int n = 0; n < 8; ++n) {
        s += c[k * 8 + n] * block[y * 8 + n];
      }
      tmp[y * 8 + k] = s;
    }
  }
  // columns
  for (int x = 0; x < 8; ++x) {
    for (int k = 0; k < 8; ++k) {
      double s = 0.0;
      for (int n = 0; n < 8; ++n) {
        s += c[k * 8 + n] * tmp[n * 8 + x];
      }
      block[k * 8 + x] = s;
    }
  }
}

void inverse(Block &block) {
  const auto &c = basis();
  Block tmp{};
  for (int x = 0; x < 8; ++x) {
    for (int n = 0; n < 8; ++n) {
      double s = 0.0;
      for (int k = 0; k < 8; ++k) {
        s += c[k * 8 + n] * block[k * 8 + x];
      }
      tmp[n * 8 + x] = s;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int n = 0; n < 8; ++n) {
      double s = 0.0;
      for (int k = 0; k < 8; ++k) {
        s += c[k * 8 + n] * tmp[y * 8 + k];
      }
      block[y * 8 + n] = s;
    }
  }
}

const std::array<int, 64> &zigzag() {
  static const auto table = [] {
    std::array<int, 64> order{};
    int i = 0;
    for (int diagonal = 0; diagonal < 15; ++diagonal) {
      for (int j = 0; j <= diagonal; ++j) {
        // even diagonals run bottom-left to top-right
        const int y = diagonal % 2 == 0 ? diagonal - j : j;
        const int x = diagonal - y;
        if (x < 8 && y < 8) {
          order[i++] = y * 8 + x;
        }
      }
    }
    return order;
  }();
  return table;
}

} // namespace dct

std::vector<std::uint8_t> encode_internal_frame(const YuvFrame &frame, int qp) {
  check_qp(qp);
  if (!frame.valid()) {
    throw Error("cannot encode a YUV frame with inconsistent planes");
  }
  const std::array<ConstPlane, 3> planes{
      ConstPlane{frame.width, frame.height, frame.y},
      ConstPlane{frame.chroma_width(), frame.chroma_height(), frame.u},
      ConstPlane{frame.chroma_width(), frame.chroma_height(), frame.v},
  };

  RangeEncoder enc;
  if (qp == 0) {
    ByteModel luma_model;
    ByteModel chroma_model;
    encode_plane_lossless(enc, luma_model, planes[0]);
    encode_plane_lossless(enc, chroma_model, planes[1]);
    encode_plane_lossless(enc, chroma_model, planes[2]);
  } else {
    CoefficientModels luma_models;
    CoefficientModels chroma_models;
    encode_plane_transform(enc, luma_models, planes[0], qp);
    encode_plane_transform(enc, chroma_models, planes[1], qp);
    encode_plane_transform(enc, chroma_models, planes[2], qp);
  }
  const auto payload = enc.finish();

  ByteWriter out;
  out.bytes(kFrameMagic);
  out.u8(kFrameFormatVersion);
  out.u32(static_cast<std::uint32_t>(frame.width));
  out.u32(static_cast<std::uint32_t>(frame.height));
  out.u8(static_cast<std::uint8_t>(qp));
  out.u32(static_cast<std::uint32_t>(payload.size()));
  out.bytes(payload);
  return out.take();
}

YuvFrame decode_internal_frame(std::span<const std::uint8_t> stream) {
  ByteReader in(stream);
  if (stream.size() < kFrameHeaderSize) {
    throw FormatError("frame stream truncated: " + std::to_string(stream.size()) + " bytes");
  }
  const auto magic = in.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kFrameMagic.begin())) {
    throw FormatError("not an internal frame stream (bad magic)");
  }
  const auto version = in.u8();
  if (version != kFrameFormatVersion) {
    throw FormatError("unsupported frame format version " + std::to_string(version));
  }
  const auto width = in.u32();
  const auto height = in.u32();
  const auto qp = in.u8();
  const auto payload_size = in.u32();
  if (width == 0 || height == 0 || width > kMaxDimension || height > kMaxDimension) {
    throw FormatError("frame dimensions out of range");
  }
  if (qp > kMaxQp) {
    throw FormatError("frame qp out of range");
  }
  if (in.remaining() != payload_size) {
    throw FormatError("frame payload is " + std::to_string(in.remaining()) + " bytes, header says " +
                      std::to_string(payload_size));
  }

  YuvFrame frame(static_cast<int>(width), static_cast<int>(height));
  const std::array<MutablePlane, 3> planes{
      MutablePlane{frame.width, frame.height, frame.y},
      MutablePlane{frame.chroma_width(), frame.chroma_height(), frame.u},
      MutablePlane{frame.chroma_width(), frame.chroma_height(), frame.v},
  };
  RangeDecoder dec(in.bytes(payload_size));
  if (qp == 0) {
    ByteModel luma_model;
    ByteModel chroma_model;
    decode_plane_lossless(dec, luma_model, planes[0]);
    decode_plane_lossless(dec, chroma_model, planes[1]);
    decode_plane_lossless(dec, chroma_model, planes[2]);
  } else {
    CoefficientModels luma_models;
    CoefficientModels chroma_models;
    decode_plane_transform(dec, luma_models, planes[0], qp);
    decode_plane_transform(dec, chroma_models, planes[1], qp);
    decode_plane_transform(dec, chroma_models, planes[2], qp);
  }
  return frame;
}

} // namespace lfc
