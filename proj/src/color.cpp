#include <lfc/color.hpp>

#include <lfc/error.hpp>

#include <algorithm>
#include <cmath>

namespace lfc {

namespace {
constexpr double kUScale = 0.5 / (1.0 - kLumaBlue);
constexpr double kVScale = 0.5 / (1.0 - kLumaRed);
} // namespace

std::uint8_t clamp_round(double value) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

YuvFrame rgb_to_yuv420(const RgbView &view) {
  const int w = view.width();
  const int h = view.height();
  YuvFrame frame(w, h);
  const auto &rp = view.plane(0);
  const auto &gp = view.plane(1);
  const auto &bp = view.plane(2);

  std::vector<double> u_full(view.pixel_count());
  std::vector<double> v_full(view.pixel_count());
  for (std::size_t i = 0; i < view.pixel_count(); ++i) {
    const double y = luma(rp[i], gp[i], bp[i]);
    frame.y[i] = clamp_round(y);
    u_full[i] = 128.0 + (bp[i] - y) * kUScale;
    v_full[i] = 128.0 + (rp[i] - y) * kVScale;
  }

  const int cw = frame.chroma_width();
  const int ch = frame.chroma_height();
  for (int cy = 0; cy < ch; ++cy) {
    for (int cx = 0; cx < cw; ++cx) {
      double su = 0.0;
      double sv = 0.0;
      int n = 0;
      for (int y = 2 * cy; y < std::min(2 * cy + 2, h); ++y) {
        for (int x = 2 * cx; x < std::min(2 * cx + 2, w); ++x) {
          const auto i = static_cast<std::size_t>(y) * w + x;
          su += u_full[i];
          sv += v_full[i];
          ++n;
        }
      }
      const auto ci = static_cast<std::size_t>(cy) * cw + cx;
      frame.u[ci] = clamp_round(su / n);
      frame.v[ci] = clamp_round(sv / n);
    }
  }
  return frame;
}

RgbView yuv420_to_rgb(const YuvFrame &frame) {
  if (!frame.valid()) {
    throw Error("YUV frame plane sizes do not match " + std::to_string(frame.width) + "x" +
                std::to_string(frame.height));
  }
  RgbView view(frame.width, frame.height);
  const int cw = frame.chroma_width();
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const auto i = static_cast<std::size_t>(y) * frame.width + x;
      const auto ci = static_cast<std::size_t>(y / 2) * cw + x / 2;
      const double luma_value = frame.y[i];
      const double cb = frame.u[ci] - 128.0;
      const double cr = frame.v[ci] - 128.0;
      const double r = luma_value + cr / kVScale;
      const double b = luma_value + cb / kUScale;
      const double g = (luma_value - kLumaRed * r - kLumaBlue * b) / kLumaGreen;
      view.plane(0)[i] = clamp_round(r);
      view.plane(1)[i] = clamp_round(g);
      view.plane(2)[i] = clamp_round(b);
    }
  }
  return view;
}

std::vector<std::uint8_t> luma_plane(const RgbView &view) {
  std::vector<std::uint8_t> out(view.pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = clamp_round(luma(view.plane(0)[i], view.plane(1)[i], view.plane(2)[i]));
  }
  return out;
}

} // namespace lfc
