#pragma once

#include <lfc/lightfield.hpp>

#include <cstdint>
#include <vector>

namespace lfc {

// BT.601 full-range coefficients.
inline constexpr double kLumaRed = 0.299;
inline constexpr double kLumaBlue = 0.114;
inline constexpr double kLumaGreen = 1.0 - kLumaRed - kLumaBlue;

/// Unrounded luma of one RGB sample.
[[nodiscard]] constexpr double luma(double r, double g, double b) noexcept {
  return kLumaRed * r + kLumaGreen * g + kLumaBlue * b;
}

/// Rounded and clamped 8-bit sample (round half away from zero).
[[nodiscard]] std::uint8_t clamp_round(double value) noexcept;

/// RGB -> YUV 4:2:0, chroma averaged over each 2x2 block (or the part of it
/// inside the image for odd sizes) before rounding.
YuvFrame rgb_to_yuv420(const RgbView &view);

/// YUV 4:2:0 -> RGB with nearest-neighbour chroma upsampling. Throws
/// lfc::Error when plane sizes are inconsistent.
RgbView yuv420_to_rgb(const YuvFrame &frame);

/// Full-resolution 8-bit luma plane (same rounding as rgb_to_yuv420's Y).
std::vector<std::uint8_t> luma_plane(const RgbView &view);

} // namespace lfc
