#include <lfc/rate_distortion.hpp>

#include <lfc/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <cmath>

namespace lfc {

void RdCurve::sort_by_rate() {
  std::sort(points.begin(), points.end(),
            [](const RdPoint &a, const RdPoint &b) { return a.bpp < b.bpp; });
}

void RdCurve::validate() const {
  if (points.empty()) {
    throw Error("RD curve '" + label + "' has no points");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].bpp > points[i - 1].bpp)) {
      throw Error("RD curve '" + label + "' is not strictly increasing in bpp");
    }
  }
}

RdPoint evaluate(const LightField &reconstructed, const LightField &original,
                 std::uint64_t total_bits, int qp, PsnrDomain domain) {
  if (reconstructed.grid_rows() != original.grid_rows() ||
      reconstructed.grid_cols() != original.grid_cols() ||
      reconstructed.view_width() != original.view_width() ||
      reconstructed.view_height() != original.view_height()) {
    throw Error("reconstructed and original light fields differ in size");
  }
  RdPoint point;
  point.qp = qp;
  point.bpp = bits_per_pixel(total_bits, original);
  point.grid_rows = original.grid_rows();
  point.grid_cols = original.grid_cols();
  for (std::size_t i = 0; i < original.views().size(); ++i) {
    const auto &test = reconstructed.views()[i];
    const auto &ref = original.views()[i];
    point.psnr_per_view.push_back(psnr(test, ref, domain));
    point.ssim_per_view.push_back(ssim(test, ref));
  }
  const auto psnr_stats = per_view_stats(point.psnr_per_view);
  point.psnr_mean = psnr_stats.mean;
  point.psnr_std = psnr_stats.std;
  point.ssim_mean = per_view_stats(point.ssim_per_view).mean;
  return point;
}

double Cubic::integral(double lo, double hi) const noexcept {
  const auto antiderivative = [this](double x) {
    return (((c[3] / 4.0 * x + c[2] / 3.0) * x + c[1] / 2.0) * x + c[0]) * x;
  };
  return antiderivative(hi - origin) - antiderivative(lo - origin);
}

Cubic operator-(const Cubic &a, const Cubic &b) {
  if (a.origin != b.origin) {
    throw Error("cubic difference needs a common origin");
  }
  Cubic d;
  d.origin = a.origin;
  for (int k = 0; k < 4; ++k) {
    d.c[k] = a.c[k] - b.c[k];
  }
  return d;
}

Cubic fit_cubic(std::span<const double> x, std::span<const double> y, double origin) {
  if (x.size() != y.size()) {
    throw Error("cubic fit needs matching abscissae and ordinates");
  }
  if (x.size() < 4) {
    throw Error("insufficient points for a cubic fit: " + std::to_string(x.size()) +
                " (need at least 4)");
  }
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("duplicate abscissae in cubic fit");
  }

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd vandermonde(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k < 4; ++k) {
      vandermonde(i, k) = p;
      p *= x[static_cast<std::size_t>(i)] - origin;
    }
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coeffs = vandermonde.colPivHouseholderQr().solve(rhs);
  Cubic cubic;
  cubic.origin = origin;
  for (int k = 0; k < 4; ++k) {
    cubic.c[k] = coeffs(k);
  }
  return cubic;
}

Cubic fit_cubic(std::span<const double> x, std::span<const double> y) {
  const double mean =
      x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  return fit_cubic(x, y, mean);
}

namespace {

Interval overlap(std::span<const double> a, std::span<const double> b, const char *what) {
  const auto [a_lo, a_hi] = std::minmax_element(a.begin(), a.end());
  const auto [b_lo, b_hi] = std::minmax_element(b.begin(), b.end());
  const Interval range{std::max(*a_lo, *b_lo), std::min(*a_hi, *b_hi)};
  if (!(range.hi > range.lo)) {
    throw Error(std::string("RD curves do not overlap in ") + what);
  }
  return range;
}

} // namespace

BdResult bd_metrics(std::span<const double> test_rate, std::span<const double> test_psnr,
                    std::span<const double> anchor_rate, std::span<const double> anchor_psnr) {
  if (test_rate.size() < 4 || anchor_rate.size() < 4) {
    throw Error("insufficient points for Bjontegaard metrics (need at least 4 per curve)");
  }
  if (test_rate.size() != test_psnr.size() || anchor_rate.size() != anchor_psnr.size()) {
    throw Error("rate and PSNR lists differ in length");
  }
  const auto log_rates = [](std::span<const double> rates) {
    std::vector<double> out;
    for (double r : rates) {
      if (!(r > 0.0)) {
        throw Error("Bjontegaard metrics need positive rates");
      }
      out.push_back(std::log10(r));
    }
    return out;
  };
  const auto test_log = log_rates(test_rate);
  const auto anchor_log = log_rates(anchor_rate);

  BdResult result;

  // quality difference at equal rate
  // fits share an origin at the middle of the overlap for conditioning
  result.log_rate_overlap = overlap(test_log, anchor_log, "rate");
  const auto &lr = result.log_rate_overlap;
  const double lr_mid = 0.5 * (lr.lo + lr.hi);
  const auto psnr_test_fit = fit_cubic(test_log, test_psnr, lr_mid);
  const auto psnr_anchor_fit = fit_cubic(anchor_log, anchor_psnr, lr_mid);
  result.bd_psnr = (psnr_test_fit - psnr_anchor_fit).integral(lr.lo, lr.hi) / (lr.hi - lr.lo);

  // rate difference at equal quality
  result.psnr_overlap = overlap(test_psnr, anchor_psnr, "PSNR");
  const auto &pr = result.psnr_overlap;
  const double pr_mid = 0.5 * (pr.lo + pr.hi);
  const auto rate_test_fit = fit_cubic(test_psnr, test_log, pr_mid);
  const auto rate_anchor_fit = fit_cubic(anchor_psnr, anchor_log, pr_mid);
  const double mean_log_delta =
      (rate_test_fit - rate_anchor_fit).integral(pr.lo, pr.hi) / (pr.hi - pr.lo);
  result.bd_rate = std::expm1(mean_log_delta * std::log(10.0)) * 100.0;
  return result;
}

BdResult bd_metrics(const RdCurve &test, const RdCurve &anchor) {
  const auto columns = [](const RdCurve &curve) {
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const auto &p : curve.points) {
      out.first.push_back(p.bpp);
      out.second.push_back(p.psnr_mean);
    }
    return out;
  };
  const auto [test_rate, test_psnr] = columns(test);
  const auto [anchor_rate, anchor_psnr] = columns(anchor);
  return bd_metrics(test_rate, test_psnr, anchor_rate, anchor_psnr);
}

} // namespace lfc
