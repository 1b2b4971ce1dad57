#pragma once

#include <lfc/lightfield.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lfc {

/// PSNR returned for identical images, and the upper bound of every result.
inline constexpr double kPsnrCap = 100.0;

enum class PsnrDomain { Y, RGB };

PsnrDomain parse_psnr_domain(std::string_view name);
std::string_view to_string(PsnrDomain domain);

/// 10 log10(255^2 / MSE), MSE over the luma plane (Y) or all three RGB
/// channels pooled. Capped at kPsnrCap.
double psnr(const RgbView &test, const RgbView &ref, PsnrDomain domain = PsnrDomain::Y);

/// PSNR from a mean squared error on 8-bit samples.
double psnr_from_mse(double mse);

/// Single-scale SSIM on luma: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, L = 255, averaged over every window position fully inside the
/// image. Throws when either side is below 11 pixels.
double ssim(const RgbView &test, const RgbView &ref);

/// SSIM between two 8-bit planes of the given size.
double ssim_plane(const std::vector<std::uint8_t> &test, const std::vector<std::uint8_t> &ref,
                  int width, int height);

/// Normalised 11x11 window weights, row-major.
const std::vector<double> &ssim_window();

inline constexpr int kSsimWindow = 11;

/// Bits per pixel of the full light field, whatever subset was coded.
double bits_per_pixel(std::uint64_t total_bits, const LightField &lf);
double bits_per_pixel(std::uint64_t total_bits, int grid_rows, int grid_cols, int view_width,
                      int view_height);

struct MeanStd {
  double mean{};
  double std{};
};

/// Arithmetic mean and sample (n - 1) standard deviation; std = 0 for n = 1.
MeanStd per_view_stats(const std::vector<double> &values);

} // namespace lfc
