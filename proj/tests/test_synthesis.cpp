#include <doctest.h>

#include <lfc/error.hpp>
#include <lfc/process.hpp>
#include <lfc/synthesis.hpp>
#include <lfc/synthetic.hpp>

#include <set>

using namespace lfc;

namespace {

std::set<ViewIndex> targets_of(const SynthesisStep &step) {
  std::set<ViewIndex> out;
  for (const auto &t : step.targets) {
    out.insert(t.target);
  }
  return out;
}

std::set<ViewIndex> retained_set(const SamplingPattern &p, int rows, int cols) {
  const auto v = make_mask(p, rows, cols).retained_views();
  return {v.begin(), v.end()};
}

LightField transpose(const LightField &lf) {
  std::vector<RgbView> views;
  for (int c = 0; c < lf.grid_cols(); ++c) {
    for (int r = 0; r < lf.grid_rows(); ++r) {
      views.push_back(lf.view_at({r, c}));
    }
  }
  return {lf.grid_cols(), lf.grid_rows(), std::move(views)};
}

LightField texture(int rows, int cols, double disparity) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::ShiftedTexture;
  spec.grid_rows = rows;
  spec.grid_cols = cols;
  spec.view_width = spec.view_height = 12;
  spec.disparity = disparity;
  return gen_synthetic(spec);
}

} // namespace

TEST_CASE("bilinear examples") {
  const RgbView a(4, 3, 10);
  CHECK(bilinear_synthesize(a, a, 0.3) == a);
  CHECK(bilinear_synthesize(RgbView(4, 3, 0), RgbView(4, 3, 200), 0.5) == RgbView(4, 3, 100));
  CHECK(bilinear_synthesize(a, RgbView(4, 3, 11), 0.5) == RgbView(4, 3, 11));
  CHECK_THROWS_AS(bilinear_synthesize(a, a, 0.0), Error);
  CHECK_THROWS_AS(bilinear_synthesize(a, a, 1.0), Error);
  CHECK_THROWS_AS(bilinear_synthesize(a, RgbView(3, 3), 0.5), Error);
}

TEST_CASE("plan sizes") {
  CHECK(build_plan(SamplingPattern::full(), 9, 9).steps.empty());

  const auto c2 = build_plan({AxisKind::Corners, 2}, 9, 9);
  REQUIRE(c2.steps.size() == 2);
  CHECK(c2.steps[0].direction == Direction::Horizontal);
  CHECK(c2.steps[0].targets.size() == 20);
  for (const auto &t : c2.steps[0].targets) {
    CHECK(t.target.row % 2 == 0);
    CHECK(t.target.col % 2 == 1);
  }
  CHECK(c2.steps[1].targets.size() == 36);
  for (const auto &t : c2.steps[1].targets) {
    CHECK(t.target.row % 2 == 1);
  }

  const auto c4 = build_plan({AxisKind::Corners, 4}, 9, 9);
  CHECK(c4.steps.size() == 4);
  CHECK(c4.target_count() == 72);

  CHECK(build_plan({AxisKind::Row, 2}, 9, 9).target_count() == 36);
  CHECK(build_plan({AxisKind::Row, 4}, 9, 9).steps.size() == 2);
  CHECK_THROWS_AS(build_plan({AxisKind::Col, 4}, 9, 7), Error);
}

TEST_CASE("every step is a midpoint between available sources") {
  for (const auto &p : all_patterns()) {
    for (int n : {5, 9, 13}) {
      for (auto order : {CascadeOrder::HorizontalFirst, CascadeOrder::VerticalFirst}) {
        const auto plan = build_plan(p, n, n, order);
        auto available = retained_set(p, n, n);
        for (const auto &step : plan.steps) {
          std::set<ViewIndex> produced;
          for (const auto &t : step.targets) {
            CHECK(available.contains(t.first));
            CHECK(available.contains(t.second));
            CHECK_FALSE(available.contains(t.target));
            CHECK(t.alpha == 0.5);
            CHECK(t.target.row * 2 == t.first.row + t.second.row);
            CHECK(t.target.col * 2 == t.first.col + t.second.col);
            if (step.direction == Direction::Horizontal) {
              CHECK(t.first.row == t.target.row);
            } else {
              CHECK(t.first.col == t.target.col);
            }
            CHECK(produced.insert(t.target).second);
          }
          available.insert(produced.begin(), produced.end());
        }
        CHECK(available.size() == static_cast<std::size_t>(n * n));
      }
    }
  }
}

TEST_CASE("first level of a 4x plan restores the 2x grid") {
  for (auto kind : {AxisKind::Row, AxisKind::Col, AxisKind::Corners}) {
    for (int n : {5, 9, 13}) {
      const auto plan = build_plan({kind, 4}, n, n);
      std::set<ViewIndex> level1;
      for (const auto &step : plan.steps) {
        if (step.level == 1) {
          const auto t = targets_of(step);
          level1.insert(t.begin(), t.end());
        }
      }
      std::set<ViewIndex> expected;
      const auto r4 = retained_set({kind, 4}, n, n);
      for (const auto &v : retained_set({kind, 2}, n, n)) {
        if (!r4.contains(v)) {
          expected.insert(v);
        }
      }
      CHECK(level1 == expected);
    }
  }
}

TEST_CASE("reconstruct passes retained views through") {
  const auto lf = texture(9, 9, 1.0);
  for (const auto &p : all_patterns()) {
    const auto out = reconstruct(apply_pattern(lf, p), BilinearSynthesizer{});
    for (const auto &v : make_mask(p, 9, 9).retained_views()) {
      CHECK(out.view_at(v) == lf.view_at(v));
    }
    if (p == SamplingPattern::full()) {
      CHECK(out == lf);
    }
  }
}

TEST_CASE("identical views are a fixed point") {
  const LightField lf(9, 9, 6, 5, 77);
  for (const auto &p : all_patterns()) {
    CHECK(reconstruct(apply_pattern(lf, p), BilinearSynthesizer{}) == lf);
  }
}

TEST_CASE("row ramp is reproduced exactly by row_2x") {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::Ramp;
  spec.ramp_row_step = 10;
  spec.ramp_col_step = 0;
  spec.view_width = spec.view_height = 8;
  const auto lf = gen_synthetic(spec);
  CHECK(lf.view_at({3, 5}) == RgbView(8, 8, 30));
  CHECK(reconstruct(apply_pattern(lf, {AxisKind::Row, 2}), BilinearSynthesizer{}) == lf);
}

TEST_CASE("transposition commutes with reconstruction") {
  const auto lf = texture(9, 5, 1.5);
  for (const auto &p : all_patterns()) {
    const auto direct = reconstruct(apply_pattern(lf, p), BilinearSynthesizer{},
                                    CascadeOrder::HorizontalFirst);
    const auto flipped = reconstruct(apply_pattern(transpose(lf), p.transposed()),
                                     BilinearSynthesizer{}, CascadeOrder::VerticalFirst);
    CHECK(transpose(flipped) == direct);
  }
}

TEST_CASE("synthesizer selection") {
  CHECK(make_synthesizer("bilinear")->name() == "bilinear");
  CHECK(make_synthesizer("external:cp {a} {output}")->name() == "external:cp {a} {output}");
  CHECK_THROWS_AS(make_synthesizer("cyclelf"), Error);
  CHECK_THROWS_AS(make_synthesizer("external:"), Error);
  CHECK(parse_cascade_order("vertical-first") == CascadeOrder::VerticalFirst);
  CHECK(to_string(CascadeOrder::HorizontalFirst) == "horizontal-first");
}

TEST_CASE("external synthesizer contract") {
  TempDir dir("lfc-synth-test");
  const RgbView a(5, 4, 10);
  const RgbView b(5, 4, 90);
  const ExternalSynthesizer copy_first("test {alpha} = 0.5 && cp {a} {output}", dir.path());
  CHECK(copy_first.synthesize(a, b, 0.5) == a);
  const ExternalSynthesizer copy_second("cp {b} {output}", dir.path());
  CHECK(copy_second.synthesize(a, b, 0.5) == b);
  const ExternalSynthesizer broken("exit 1", dir.path());
  CHECK_THROWS_AS((void)broken.synthesize(a, b, 0.5), ExternalToolError);
  const ExternalSynthesizer silent("true", dir.path());
  CHECK_THROWS_AS((void)silent.synthesize(a, b, 0.5), ExternalToolError);
}
