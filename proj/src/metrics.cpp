#include <lfc/metrics.hpp>

#include <lfc/color.hpp>
#include <lfc/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace lfc {

PsnrDomain parse_psnr_domain(std::string_view name) {
  if (name == "y" || name == "Y") {
    return PsnrDomain::Y;
  }
  if (name == "rgb" || name == "RGB") {
    return PsnrDomain::RGB;
  }
  throw Error("unknown PSNR domain '" + std::string(name) + "' (expected y|rgb)");
}

std::string_view to_string(PsnrDomain domain) { return domain == PsnrDomain::Y ? "y" : "rgb"; }

double psnr_from_mse(double mse) {
  if (mse <= 0.0) {
    return kPsnrCap;
  }
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

namespace {

double sum_squared_error(const std::vector<std::uint8_t> &a, const std::vector<std::uint8_t> &b) {
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sse);
}

} // namespace

double psnr(const RgbView &test, const RgbView &ref, PsnrDomain domain) {
  if (!test.same_shape(ref)) {
    throw Error("PSNR needs images of equal size");
  }
  if (domain == PsnrDomain::Y) {
    const auto n = static_cast<double>(test.pixel_count());
    return psnr_from_mse(sum_squared_error(luma_plane(test), luma_plane(ref)) / n);
  }
  double sse = 0.0;
  for (int c = 0; c < RgbView::channels; ++c) {
    sse += sum_squared_error(test.plane(c), ref.plane(c));
  }
  return psnr_from_mse(sse / (3.0 * static_cast<double>(test.pixel_count())));
}

const std::vector<double> &ssim_window() {
  static const auto weights = [] {
    constexpr double sigma = 1.5;
    constexpr int radius = kSsimWindow / 2;
    std::vector<double> w(kSsimWindow * kSsimWindow);
    double total = 0.0;
    for (int y = -radius; y <= radius; ++y) {
      for (int x = -radius; x <= radius; ++x) {
        const double v = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        w[(y + radius) * kSsimWindow + (x + radius)] = v;
        total += v;
      }
    }
    for (auto &v : w) {
      v /= total;
    }
    return w;
  }();
  return weights;
}

double ssim_plane(const std::vector<std::uint8_t> &test, const std::vector<std::uint8_t> &ref,
                  int width, int height) {
  if (width < kSsimWindow || height < kSsimWindow) {
    throw Error("SSIM needs images of at least 11x11 pixels");
  }
  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);

  // The 2-D Gaussian is separable: filter rows with the 1-D kernel, then columns.
  std::vector<double> kernel(kSsimWindow);
  {
    const auto &w2 = ssim_window();
    const int mid = kSsimWindow / 2;
    const double center = std::sqrt(w2[mid * kSsimWindow + mid]);
    for (int i = 0; i < kSsimWindow; ++i) {
      kernel[i] = w2[mid * kSsimWindow + i] / center;
    }
  }

  const int out_w = width - kSsimWindow + 1;
  const int out_h = height - kSsimWindow + 1;
  // five statistics: x, y, x^2, y^2, xy
  std::vector<std::array<double, 5>> rows(static_cast<std::size_t>(out_w) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < out_w; ++x) {
      std::array<double, 5> acc{};
      for (int k = 0; k < kSsimWindow; ++k) {
        const auto i = static_cast<std::size_t>(y) * width + x + k;
        const double a = test[i];
        const double b = ref[i];
        const double w = kernel[k];
        acc[0] += w * a;
        acc[1] += w * b;
        acc[2] += w * a * a;
        acc[3] += w * b * b;
        acc[4] += w * a * b;
      }
      rows[static_cast<std::size_t>(y) * out_w + x] = acc;
    }
  }

  double total = 0.0;
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      std::array<double, 5> m{};
      for (int k = 0; k < kSsimWindow; ++k) {
        const auto &r = rows[static_cast<std::size_t>(y + k) * out_w + x];
        for (int s = 0; s < 5; ++s) {
          m[s] += kernel[k] * r[s];
        }
      }
      const double var_a = m[2] - m[0] * m[0];
      const double var_b = m[3] - m[1] * m[1];
      const double cov = m[4] - m[0] * m[1];
      total += ((2.0 * m[0] * m[1] + c1) * (2.0 * cov + c2)) /
               ((m[0] * m[0] + m[1] * m[1] + c1) * (var_a + var_b + c2));
    }
  }
  return total / (static_cast<double>(out_w) * out_h);
}

double ssim(const RgbView &test, const RgbView &ref) {
  if (!test.same_shape(ref)) {
    throw Error("SSIM needs images of equal size");
  }
  return ssim_plane(luma_plane(test), luma_plane(ref), test.width(), test.height());
}

double bits_per_pixel(std::uint64_t total_bits, int grid_rows, int grid_cols, int view_width,
                      int view_height) {
  if (total_bits == 0) {
    throw Error("bits per pixel of an empty stream");
  }
  const double pixels = static_cast<double>(grid_rows) * grid_cols * view_width * view_height;
  if (pixels <= 0.0) {
    throw Error("bits per pixel of an empty light field");
  }
  return static_cast<double>(total_bits) / pixels;
}

double bits_per_pixel(std::uint64_t total_bits, const LightField &lf) {
  return bits_per_pixel(total_bits, lf.grid_rows(), lf.grid_cols(), lf.view_width(),
                        lf.view_height());
}

MeanStd per_view_stats(const std::vector<double> &values) {
  if (values.empty()) {
    throw Error("statistics of an empty grid");
  }
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / (n - 1.0))};
}

} // namespace lfc
