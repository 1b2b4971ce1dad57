#include <lfc/synthetic.hpp>

#include <lfc/color.hpp>
#include <lfc/error.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace lfc {

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "ramp") {
    return SyntheticKind::Ramp;
  }
  if (name == "shifted-texture") {
    return SyntheticKind::ShiftedTexture;
  }
  throw Error("unknown synthetic kind '" + std::string(name) + "' (expected ramp|shifted-texture)");
}

std::string_view to_string(SyntheticKind kind) {
  return kind == SyntheticKind::Ramp ? "ramp" : "shifted-texture";
}

namespace {

// A sinusoid with whole cycles across the view, so the sum tiles exactly.
struct Wave {
  int fx;
  int fy;
  double phase;
  std::array<double, 3> amplitude; // per RGB channel
};

// Uniform in [0, 1) from raw engine output; std distributions are not
// reproducible across standard library implementations.
double unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_int(std::mt19937_64 &rng, int lo, int hi) {
  return lo + static_cast<int>(unit(rng) * (hi - lo + 1));
}

std::vector<Wave> make_texture(const SyntheticSpec &spec) {
  std::mt19937_64 rng(spec.seed);
  const int max_fx = std::max(1, spec.view_width / 6);
  const int max_fy = std::max(1, spec.view_height / 6);
  std::vector<Wave> waves;
  constexpr int kWaves = 48;
  for (int i = 0; i < kWaves; ++i) {
    Wave w{};
    do {
      w.fx = uniform_int(rng, -max_fx, max_fx);
      w.fy = uniform_int(rng, 0, max_fy);
    } while (w.fx == 0 && w.fy == 0);
    w.phase = 2.0 * std::numbers::pi * unit(rng);
    // 1/f falloff, shared luminance component plus a weaker per-channel part
    const double f = std::hypot(static_cast<double>(w.fx) / spec.view_width * 64.0,
                                static_cast<double>(w.fy) / spec.view_height * 64.0);
    const double base = 60.0 / (1.0 + f) * (0.5 + unit(rng));
    for (auto &a : w.amplitude) {
      a = base * (0.7 + 0.6 * unit(rng));
    }
    waves.push_back(w);
  }
  return waves;
}

} // namespace

LightField gen_synthetic(const SyntheticSpec &spec) {
  if (spec.grid_rows < 1 || spec.grid_cols < 1 || spec.view_width < 1 || spec.view_height < 1) {
    throw Error("synthetic light field dimensions must be positive");
  }
  if (spec.disparity < 0.0) {
    throw Error("disparity must be non-negative");
  }

  std::vector<RgbView> views;
  views.reserve(static_cast<std::size_t>(spec.grid_rows) * spec.grid_cols);

  if (spec.kind == SyntheticKind::Ramp) {
    for (int r = 0; r < spec.grid_rows; ++r) {
      for (int c = 0; c < spec.grid_cols; ++c) {
        views.emplace_back(spec.view_width, spec.view_height,
                           clamp_round(spec.ramp_row_step * r + spec.ramp_col_step * c));
      }
    }
    return LightField(spec.grid_rows, spec.grid_cols, std::move(views));
  }

  const auto waves = make_texture(spec);
  const double two_pi = 2.0 * std::numbers::pi;
  const auto w = static_cast<std::size_t>(spec.view_width);
  const auto h = static_cast<std::size_t>(spec.view_height);
  // cos(a + b) = cos a cos b - sin a sin b with a from x and b from y
  std::vector<double> cos_x(waves.size() * w), sin_x(waves.size() * w);
  std::vector<double> cos_y(waves.size() * h), sin_y(waves.size() * h);
  for (int r = 0; r < spec.grid_rows; ++r) {
    for (int c = 0; c < spec.grid_cols; ++c) {
      const double dx = spec.disparity * c;
      const double dy = spec.disparity * r;
      for (std::size_t k = 0; k < waves.size(); ++k) {
        for (std::size_t x = 0; x < w; ++x) {
          const double a = two_pi * waves[k].fx * (static_cast<double>(x) + dx) / spec.view_width +
                           waves[k].phase;
          cos_x[k * w + x] = std::cos(a);
          sin_x[k * w + x] = std::sin(a);
        }
        for (std::size_t y = 0; y < h; ++y) {
          const double b = two_pi * waves[k].fy * (static_cast<double>(y) + dy) / spec.view_height;
          cos_y[k * h + y] = std::cos(b);
          sin_y[k * h + y] = std::sin(b);
        }
      }

      RgbView view(spec.view_width, spec.view_height);
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          std::array<double, 3> value{128.0, 128.0, 128.0};
          for (std::size_t k = 0; k < waves.size(); ++k) {
            const double s = cos_x[k * w + x] * cos_y[k * h + y] - sin_x[k * w + x] * sin_y[k * h + y];
            for (int ch = 0; ch < 3; ++ch) {
              value[ch] += waves[k].amplitude[ch] * s;
            }
          }
          for (int ch = 0; ch < 3; ++ch) {
            view.at(ch, static_cast<int>(x), static_cast<int>(y)) = clamp_round(value[ch]);
          }
        }
      }
      views.push_back(std::move(view));
    }
  }
  return LightField(spec.grid_rows, spec.grid_cols, std::move(views));
}

} // namespace lfc
