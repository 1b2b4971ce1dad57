#include <lfc/codec.hpp>

#include <lfc/byte_io.hpp>
#include <lfc/color.hpp>
#include <lfc/error.hpp>
#include <lfc/frame_codec.hpp>
#include <lfc/process.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>

namespace lfc {
namespace fs = std::filesystem;

namespace {
constexpr std::array<char, 4> kContainerMagic{'L', 'F', 'S', 'S'};

std::vector<std::uint8_t> read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path &path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error("cannot write " + path.string());
  }
}

// Last n bytes of tool output, on its own line.
std::string tail(std::string text, std::size_t n = 2000) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  if (text.empty()) {
    return {};
  }
  return "\n" + (text.size() <= n ? text : "..." + text.substr(text.size() - n));
}
} // namespace

Backend parse_backend(std::string_view name) {
  if (name == "internal") {
    return Backend::Internal;
  }
  if (name == "external") {
    return Backend::External;
  }
  throw Error("unknown codec backend '" + std::string(name) + "' (expected internal|external)");
}

std::string_view to_string(Backend backend) {
  return backend == Backend::Internal ? "internal" : "external";
}

void CodecConfig::validate() const {
  if (qp < 0 || qp > kMaxQp) {
    throw Error("qp " + std::to_string(qp) + " outside [0, 51]");
  }
  if (backend == Backend::External &&
      (external_encode_command.empty() || external_decode_command.empty())) {
    throw Error("external backend needs both encode and decode command templates");
  }
}

std::size_t EncodedLightField::total_bytes() const noexcept {
  std::size_t total = kContainerHeaderSize;
  for (const auto &chunk : chunks) {
    total += kChunkHeaderSize + chunk.payload.size();
  }
  return total;
}

std::uint64_t EncodedLightField::coded_bits() const noexcept {
  if (backend == Backend::Internal) {
    return 8ULL * total_bytes();
  }
  std::uint64_t bytes = 0;
  for (const auto &chunk : chunks) {
    bytes += chunk.payload.size();
  }
  return 8 * bytes;
}

std::vector<std::uint8_t> serialize(const EncodedLightField &enc) {
  ByteWriter out;
  out.bytes(kContainerMagic);
  out.u16(kContainerVersion);
  out.u8(enc.pattern.id());
  out.u16(static_cast<std::uint16_t>(enc.grid_rows));
  out.u16(static_cast<std::uint16_t>(enc.grid_cols));
  out.u32(static_cast<std::uint32_t>(enc.view_width));
  out.u32(static_cast<std::uint32_t>(enc.view_height));
  out.u8(static_cast<std::uint8_t>(enc.qp));
  out.u8(static_cast<std::uint8_t>(enc.backend));
  out.u32(static_cast<std::uint32_t>(enc.chunks.size()));
  for (const auto &chunk : enc.chunks) {
    out.u16(static_cast<std::uint16_t>(chunk.view.row));
    out.u16(static_cast<std::uint16_t>(chunk.view.col));
    out.u32(static_cast<std::uint32_t>(chunk.payload.size()));
    out.bytes(chunk.payload);
  }
  return out.take();
}

EncodedLightField parse_container(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const auto magic = in.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kContainerMagic.begin())) {
    throw FormatError("not a light field container (bad magic)");
  }
  const auto version = in.u16();
  if (version != kContainerVersion) {
    throw FormatError("unsupported container version " + std::to_string(version));
  }

  EncodedLightField enc;
  enc.pattern = SamplingPattern::from_id(in.u8());
  enc.grid_rows = in.u16();
  enc.grid_cols = in.u16();
  enc.view_width = static_cast<int>(in.u32());
  enc.view_height = static_cast<int>(in.u32());
  enc.qp = in.u8();
  const auto backend = in.u8();
  const auto chunk_count = in.u32();

  if (enc.grid_rows < 1 || enc.grid_cols < 1 || enc.view_width < 1 || enc.view_height < 1) {
    throw FormatError("container dimensions out of range");
  }
  if (enc.qp > kMaxQp) {
    throw FormatError("container qp out of range");
  }
  if (backend > static_cast<std::uint8_t>(Backend::External)) {
    throw FormatError("unknown backend id " + std::to_string(backend));
  }
  enc.backend = static_cast<Backend>(backend);

  ScanSequence order;
  try {
    order = snake_order(make_mask(enc.pattern, enc.grid_rows, enc.grid_cols));
  } catch (const FormatError &) {
    throw;
  } catch (const Error &e) {
    throw FormatError(std::string("container header: ") + e.what());
  }
  if (chunk_count != order.size()) {
    throw FormatError("container holds " + std::to_string(chunk_count) + " chunks, pattern " +
                      enc.pattern.name() + " retains " + std::to_string(order.size()));
  }

  enc.chunks.reserve(chunk_count);
  for (const auto &expected : order) {
    EncodedChunk chunk;
    chunk.view.row = in.u16();
    chunk.view.col = in.u16();
    if (chunk.view != expected) {
      throw FormatError("chunk " + to_string(chunk.view) + " out of snake order, expected " +
                        to_string(expected));
    }
    const auto length = in.u32();
    const auto payload = in.bytes(length);
    chunk.payload.assign(payload.begin(), payload.end());
    enc.chunks.push_back(std::move(chunk));
  }
  if (in.remaining() != 0) {
    throw FormatError(std::to_string(in.remaining()) + " trailing bytes after last chunk");
  }
  return enc;
}

void write_container(const fs::path &path, const EncodedLightField &enc) {
  write_file(path, serialize(enc));
}

EncodedLightField read_container(const fs::path &path) { return parse_container(read_file(path)); }

namespace external {

void write_i420(const fs::path &path, std::span<const YuvFrame> frames) {
  std::ofstream out(path, std::ios::binary);
  for (const auto &f : frames) {
    for (const auto *plane : {&f.y, &f.u, &f.v}) {
      out.write(reinterpret_cast<const char *>(plane->data()),
                static_cast<std::streamsize>(plane->size()));
    }
  }
  if (!out) {
    throw Error("cannot write " + path.string());
  }
}

std::vector<YuvFrame> read_i420(const fs::path &path, int width, int height, int frame_count) {
  const auto bytes = read_file(path);
  const YuvFrame shape(width, height);
  const auto expected = shape.byte_size() * static_cast<std::size_t>(frame_count);
  if (bytes.size() != expected) {
    throw Error("decoded stream " + path.string() + " has " + std::to_string(bytes.size()) +
                " bytes, expected " + std::to_string(expected));
  }
  std::vector<YuvFrame> frames;
  auto it = bytes.begin();
  for (int i = 0; i < frame_count; ++i) {
    YuvFrame f(width, height);
    for (auto *plane : {&f.y, &f.u, &f.v}) {
      std::copy_n(it, plane->size(), plane->begin());
      it += static_cast<std::ptrdiff_t>(plane->size());
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<std::uint8_t> encode(std::span<const YuvFrame> frames, const CodecConfig &cfg) {
  cfg.validate();
  if (frames.empty()) {
    throw Error("nothing to encode");
  }
  TempDir dir("lfc-extenc", cfg.work_root);
  const auto input = dir.path() / "input.yuv";
  const auto output = dir.path() / "output.bin";
  write_i420(input, frames);
  const auto command = expand_template(cfg.external_encode_command,
                                       {{"input", input.string()},
                                        {"output", output.string()},
                                        {"width", std::to_string(frames.front().width)},
                                        {"height", std::to_string(frames.front().height)},
                                        {"frames", std::to_string(frames.size())},
                                        {"qp", std::to_string(cfg.qp)}});
  const auto result = run_shell(command, dir.path() / "encoder.log");
  if (result.exit_code != 0) {
    throw ExternalToolError("external encoder failed (exit " + std::to_string(result.exit_code) +
                            "): " + command + tail(result.output));
  }
  if (!fs::exists(output)) {
    throw ExternalToolError("external encoder produced no output file: " + command +
                            tail(result.output));
  }
  return read_file(output);
}

std::vector<YuvFrame> decode(std::span<const std::uint8_t> bitstream, int width, int height,
                             int frame_count, const CodecConfig &cfg) {
  if (cfg.external_decode_command.empty()) {
    throw Error("external backend needs a decode command template");
  }
  TempDir dir("lfc-extdec", cfg.work_root);
  const auto input = dir.path() / "input.bin";
  const auto output = dir.path() / "output.yuv";
  write_file(input, bitstream);
  const auto command = expand_template(cfg.external_decode_command,
                                       {{"input", input.string()},
                                        {"output", output.string()},
                                        {"width", std::to_string(width)},
                                        {"height", std::to_string(height)},
                                        {"frames", std::to_string(frame_count)},
                                        {"qp", std::to_string(cfg.qp)}});
  const auto result = run_shell(command, dir.path() / "decoder.log");
  if (result.exit_code != 0) {
    throw ExternalToolError("external decoder failed (exit " + std::to_string(result.exit_code) +
                            "): " + command + tail(result.output));
  }
  if (!fs::exists(output)) {
    throw ExternalToolError("external decoder produced no output file: " + command +
                            tail(result.output));
  }
  return read_i420(output, width, height, frame_count);
}

} // namespace external

EncodedLightField encode_lightfield(const SampledLightField &slf, const CodecConfig &cfg) {
  cfg.validate();
  slf.validate();
  const auto order = snake_order(slf.mask);

  EncodedLightField enc;
  enc.pattern = slf.pattern;
  enc.grid_rows = slf.grid_rows();
  enc.grid_cols = slf.grid_cols();
  enc.view_width = slf.view_width;
  enc.view_height = slf.view_height;
  enc.qp = cfg.qp;
  enc.backend = cfg.backend;

  if (cfg.backend == Backend::Internal) {
    for (const auto &idx : order) {
      enc.chunks.push_back({idx, encode_internal_frame(rgb_to_yuv420(slf.views.at(idx)), cfg.qp)});
    }
    return enc;
  }

  std::vector<YuvFrame> frames;
  frames.reserve(order.size());
  for (const auto &idx : order) {
    frames.push_back(rgb_to_yuv420(slf.views.at(idx)));
  }
  auto bitstream = external::encode(frames, cfg);
  for (const auto &idx : order) {
    enc.chunks.push_back({idx, {}});
  }
  enc.chunks.front().payload = std::move(bitstream);
  return enc;
}

SampledLightField decode_lightfield(const EncodedLightField &enc, const CodecConfig &cfg) {
  if (cfg.backend != enc.backend) {
    throw Error("backend mismatch: container was produced by the " +
                std::string(to_string(enc.backend)) + " backend, decoder configured for " +
                std::string(to_string(cfg.backend)));
  }
  auto mask = make_mask(enc.pattern, enc.grid_rows, enc.grid_cols);
  const auto order = snake_order(mask);
  if (order.size() != enc.chunks.size()) {
    throw FormatError("chunk count does not match the pattern");
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (enc.chunks[i].view != order[i]) {
      throw FormatError("chunks are not in snake order");
    }
  }

  SampledLightField slf{enc.pattern, std::move(mask), enc.view_width, enc.view_height, {}};
  if (enc.backend == Backend::Internal) {
    for (const auto &chunk : enc.chunks) {
      const auto frame = decode_internal_frame(chunk.payload);
      if (frame.width != enc.view_width || frame.height != enc.view_height) {
        throw FormatError("chunk " + to_string(chunk.view) + " decodes to the wrong size");
      }
      slf.views.emplace(chunk.view, yuv420_to_rgb(frame));
    }
    return slf;
  }

  std::vector<std::uint8_t> bitstream;
  for (const auto &chunk : enc.chunks) {
    bitstream.insert(bitstream.end(), chunk.payload.begin(), chunk.payload.end());
  }
  CodecConfig decode_cfg = cfg;
  decode_cfg.qp = enc.qp;
  const auto frames = external::decode(bitstream, enc.view_width, enc.view_height,
                                       static_cast<int>(order.size()), decode_cfg);
  for (std::size_t i = 0; i < order.size(); ++i) {
    slf.views.emplace(order[i], yuv420_to_rgb(frames[i]));
  }
  return slf;
}

} // namespace lfc
