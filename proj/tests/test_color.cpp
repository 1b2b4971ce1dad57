#include <doctest.h>

#include <lfc/color.hpp>
#include <lfc/error.hpp>

#include <cmath>
#include <random>

using namespace lfc;

namespace {

// Per-pixel scalar evaluation of the conversion formulas.
struct ScalarYuv {
  double y, u, v;
};

ScalarYuv scalar(int r, int g, int b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return {y, 128.0 + (b - y) * 0.5 / 0.886, 128.0 + (r - y) * 0.5 / 0.701};
}

int round_clamp(double v) {
  const double r = std::round(v);
  return static_cast<int>(std::min(255.0, std::max(0.0, r)));
}

} // namespace

TEST_CASE("achromatic fixed points") {
  for (int g : {0, 128, 255}) {
    const auto f = rgb_to_yuv420(RgbView(6, 4, static_cast<std::uint8_t>(g)));
    CHECK(f.y == std::vector<std::uint8_t>(24, static_cast<std::uint8_t>(g)));
    CHECK(f.u == std::vector<std::uint8_t>(6, 128));
    CHECK(f.v == std::vector<std::uint8_t>(6, 128));
    CHECK(yuv420_to_rgb(f) == RgbView(6, 4, static_cast<std::uint8_t>(g)));
  }
}

TEST_CASE("pure red matches the scalar formulas") {
  RgbView red(2, 2);
  red.plane(0).assign(4, 255);
  const auto f = rgb_to_yuv420(red);
  const auto s = scalar(255, 0, 0);
  CHECK(f.y[0] == 76);
  CHECK(f.y[0] == round_clamp(s.y));
  CHECK(f.u[0] == round_clamp(s.u));
  CHECK(f.v[0] == round_clamp(s.v));
  CHECK(f.v[0] == 255);
  CHECK(f.u[0] == 85);
}

TEST_CASE("random images match the scalar oracle, odd sizes included") {
  std::mt19937 rng(3);
  for (auto [w, h] : {std::pair{8, 8}, std::pair{7, 5}, std::pair{1, 1}, std::pair{3, 10}}) {
    RgbView view(w, h);
    for (int c = 0; c < 3; ++c) {
      for (auto &s : view.plane(c)) {
        s = static_cast<std::uint8_t>(rng() % 256);
      }
    }
    const auto f = rgb_to_yuv420(view);
    REQUIRE(f.valid());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const auto s = scalar(view.at(0, x, y), view.at(1, x, y), view.at(2, x, y));
        CHECK(f.y[y * w + x] == round_clamp(s.y));
      }
    }
    for (int cy = 0; cy < f.chroma_height(); ++cy) {
      for (int cx = 0; cx < f.chroma_width(); ++cx) {
        double su = 0.0, sv = 0.0;
        int n = 0;
        for (int y = 2 * cy; y < std::min(h, 2 * cy + 2); ++y) {
          for (int x = 2 * cx; x < std::min(w, 2 * cx + 2); ++x) {
            const auto s = scalar(view.at(0, x, y), view.at(1, x, y), view.at(2, x, y));
            su += s.u;
            sv += s.v;
            ++n;
          }
        }
        CHECK(f.u[cy * f.chroma_width() + cx] == round_clamp(su / n));
        CHECK(f.v[cy * f.chroma_width() + cx] == round_clamp(sv / n));
      }
    }
  }
}

TEST_CASE("round trip of smooth content stays within a few code values") {
  RgbView view(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      view.at(0, x, y) = static_cast<std::uint8_t>(60 + 4 * x);
      view.at(1, x, y) = static_cast<std::uint8_t>(90 + 3 * y);
      view.at(2, x, y) = static_cast<std::uint8_t>(120 + x + y);
    }
  }
  const auto back = yuv420_to_rgb(rgb_to_yuv420(view));
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < view.pixel_count(); ++i) {
      CHECK(std::abs(back.plane(c)[i] - view.plane(c)[i]) <= 8);
    }
  }
}

TEST_CASE("luma plane agrees with the Y plane") {
  RgbView view(5, 3);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < view.pixel_count(); ++i) {
      view.plane(c)[i] = static_cast<std::uint8_t>(i * 17 + c * 91);
    }
  }
  CHECK(luma_plane(view) == rgb_to_yuv420(view).y);
}

TEST_CASE("inconsistent planes are rejected") {
  YuvFrame f(4, 4);
  f.v.resize(3);
  CHECK_THROWS_AS(yuv420_to_rgb(f), Error);
  CHECK(clamp_round(-3.2) == 0);
  CHECK(clamp_round(300.0) == 255);
  CHECK(clamp_round(10.5) == 11);
}
