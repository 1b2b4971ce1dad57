#pragma once

#include <lfc/lightfield.hpp>
#include <lfc/metrics.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lfc {

/// One quality/rate measurement of a reconstructed light field.
struct RdPoint {
  int qp{};
  double bpp{};
  int grid_rows{};
  int grid_cols{};
  std::vector<double> psnr_per_view; ///< row-major
  std::vector<double> ssim_per_view; ///< row-major
  double psnr_mean{};
  double psnr_std{};
  double ssim_mean{};
};

/// RD points of one strategy, ascending in bpp.
struct RdCurve {
  std::string label;
  std::vector<RdPoint> points;

  void sort_by_rate();

  /// Throws lfc::Error when empty or bpp is not strictly increasing.
  void validate() const;
};

/// Per-view PSNR (in `domain`) and SSIM against the original, aggregates and bpp.
RdPoint evaluate(const LightField &reconstructed, const LightField &original,
                 std::uint64_t total_bits, int qp, PsnrDomain domain = PsnrDomain::Y);

/// Cubic c0 + c1 u + c2 u^2 + c3 u^3 in u = x - origin.
struct Cubic {
  std::array<double, 4> c{};
  double origin{};

  [[nodiscard]] double operator()(double x) const noexcept {
    const double u = x - origin;
    return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
  }

  /// Exact definite integral over [lo, hi].
  [[nodiscard]] double integral(double lo, double hi) const noexcept;

  /// Coefficient-wise difference; both operands must share the origin.
  friend Cubic operator-(const Cubic &a, const Cubic &b);
};

/// Least-squares cubic through (x, y), expanded around `origin`. Needs at
/// least four distinct x.
Cubic fit_cubic(std::span<const double> x, std::span<const double> y, double origin);

/// Expanded around the mean of x.
Cubic fit_cubic(std::span<const double> x, std::span<const double> y);

struct Interval {
  double lo{};
  double hi{};
};

struct BdResult {
  double bd_psnr{}; ///< dB, positive when the test curve has higher quality
  double bd_rate{}; ///< percent, negative when the test curve needs less rate
  Interval log_rate_overlap; ///< integration range of bd_psnr (log10 bpp)
  Interval psnr_overlap;     ///< integration range of bd_rate (dB)
};

/// Bjontegaard deltas from cubic fits: PSNR over log10 rate for bd_psnr and
/// log10 rate over PSNR for bd_rate, integrated in closed form over the
/// overlap of the two curves. Throws for fewer than four points, repeated
/// abscissae or curves that do not overlap.
BdResult bd_metrics(std::span<const double> test_rate, std::span<const double> test_psnr,
                    std::span<const double> anchor_rate, std::span<const double> anchor_psnr);

/// Uses bpp and psnr_mean of each point.
BdResult bd_metrics(const RdCurve &test, const RdCurve &anchor);

} // namespace lfc
