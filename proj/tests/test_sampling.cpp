#include <doctest.h>

#include <lfc/error.hpp>
#include <lfc/sampling.hpp>

#include <algorithm>
#include <set>

using namespace lfc;

TEST_CASE("pattern names, ids and validity") {
  const std::vector<std::string> names{"full",   "row_2x",     "row_4x",    "col_2x",
                                       "col_4x", "corners_2x", "corners_4x"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto p = SamplingPattern::parse(names[i]);
    CHECK(p.name() == names[i]);
    CHECK(p.id() == i);
    CHECK(SamplingPattern::from_id(static_cast<std::uint8_t>(i)) == p);
    CHECK(all_patterns()[i] == p);
  }
  CHECK_THROWS_AS(SamplingPattern::parse("row_3x"), Error);
  CHECK_THROWS_AS(SamplingPattern::from_id(7), Error);
  CHECK_THROWS_AS(SamplingPattern(AxisKind::Full, 2), Error);
  CHECK_THROWS_AS(SamplingPattern(AxisKind::Row, 1), Error);
  CHECK(SamplingPattern::parse("row_4x").transposed().name() == "col_4x");
  CHECK(SamplingPattern::parse("corners_2x").transposed().name() == "corners_2x");
}

TEST_CASE("mask examples on 9x9") {
  const auto row2 = make_mask({AxisKind::Row, 2}, 9, 9);
  CHECK(row2.retained_count() == 45);
  for (int r = 0; r < 9; ++r) {
    CHECK(row2.retained({r, 3}) == (r % 2 == 0));
  }
  const auto c4 = make_mask({AxisKind::Corners, 4}, 9, 9);
  CHECK(c4.retained_count() == 9);
  std::vector<ViewIndex> grid;
  for (int r : {0, 4, 8}) {
    for (int c : {0, 4, 8}) {
      grid.push_back({r, c});
    }
  }
  CHECK(c4.retained_views() == grid);
  CHECK_THROWS_AS(make_mask({AxisKind::Corners, 2}, 8, 8), Error);
  CHECK_THROWS_AS(make_mask({AxisKind::Row, 4}, 7, 3), Error);
  CHECK_NOTHROW(make_mask({AxisKind::Row, 4}, 9, 4)); // columns untouched
}

TEST_CASE("mask algebra, closed-form counts and nesting") {
  for (int rows : {1, 3, 5, 9, 13, 17}) {
    for (int cols : {1, 5, 9, 13}) {
      for (int k : {2, 4}) {
        if ((rows - 1) % k != 0 || (cols - 1) % k != 0) {
          continue;
        }
        const auto row = make_mask({AxisKind::Row, k}, rows, cols);
        const auto col = make_mask({AxisKind::Col, k}, rows, cols);
        const auto corners = make_mask({AxisKind::Corners, k}, rows, cols);
        CHECK(corners == (row & col));
        CHECK(row.retained_count() == ((rows - 1) / k + 1) * cols);
        CHECK(col.retained_count() == ((cols - 1) / k + 1) * rows);
        CHECK(corners.retained_count() == ((rows - 1) / k + 1) * ((cols - 1) / k + 1));
        // all four corner views are always kept
        for (const auto &m : {row, col, corners}) {
          CHECK(m.retained({0, 0}));
          CHECK(m.retained({rows - 1, cols - 1}));
        }
        if (k == 4) {
          for (auto kind : {AxisKind::Row, AxisKind::Col, AxisKind::Corners}) {
            const auto m4 = make_mask({kind, 4}, rows, cols);
            const auto m2 = make_mask({kind, 2}, rows, cols);
            CHECK((m4 & m2) == m4);
          }
        }
      }
    }
  }
}

TEST_CASE("masks need at least one retained view") {
  CHECK_THROWS_AS(SamplingMask(2, 2, std::vector<bool>(4, false)), Error);
  CHECK_THROWS_AS(SamplingMask(2, 2, std::vector<bool>(3, true)), Error);
}

TEST_CASE("snake order examples") {
  const auto full = snake_order(make_mask(SamplingPattern::full(), 3, 3));
  CHECK(full == ScanSequence{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}, {1, 0}, {2, 0}, {2, 1}, {2, 2}});
  const auto c4 = snake_order(make_mask({AxisKind::Corners, 4}, 9, 9));
  CHECK(c4 == ScanSequence{{0, 0}, {0, 4}, {0, 8}, {4, 8}, {4, 4}, {4, 0}, {8, 0}, {8, 4}, {8, 8}});
  CHECK(snake_order(make_mask(SamplingPattern::full(), 1, 1)).size() == 1);
}

TEST_CASE("snake order is a serpentine permutation with adjacent steps") {
  for (const auto &p : all_patterns()) {
    for (int n : {5, 9, 13}) {
      const auto mask = make_mask(p, n, n);
      const auto seq = snake_order(mask);
      const auto retained = mask.retained_views();
      REQUIRE(seq.size() == retained.size());
      CHECK(std::set<ViewIndex>(seq.begin(), seq.end()) ==
            std::set<ViewIndex>(retained.begin(), retained.end()));

      // compacted coordinates of each entry
      std::vector<int> rows, cols;
      for (const auto &v : retained) {
        rows.push_back(v.row);
        cols.push_back(v.col);
      }
      std::sort(rows.begin(), rows.end());
      rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      const auto compact = [&](ViewIndex v) {
        const auto r = std::lower_bound(rows.begin(), rows.end(), v.row) - rows.begin();
        const auto c = std::lower_bound(cols.begin(), cols.end(), v.col) - cols.begin();
        return std::pair<long, long>{r, c};
      };
      for (std::size_t i = 1; i < seq.size(); ++i) {
        const auto [r0, c0] = compact(seq[i - 1]);
        const auto [r1, c1] = compact(seq[i]);
        CHECK(std::abs(r1 - r0) + std::abs(c1 - c0) == 1);
      }
    }
  }
}

TEST_CASE("apply_pattern keeps exactly the retained views") {
  std::vector<RgbView> views;
  for (int i = 0; i < 81; ++i) {
    views.emplace_back(3, 2, static_cast<std::uint8_t>(i));
  }
  const LightField lf(9, 9, views);

  const auto all = apply_pattern(lf, SamplingPattern::full());
  CHECK(all.views.size() == 81);
  CHECK(all.views.at({4, 5}) == lf.view_at({4, 5}));

  const auto col4 = apply_pattern(lf, {AxisKind::Col, 4});
  CHECK(col4.views.size() == 27);
  for (const auto &[idx, view] : col4.views) {
    CHECK(idx.col % 4 == 0);
    CHECK(view == lf.view_at(idx));
  }
  const auto c2 = apply_pattern(lf, {AxisKind::Corners, 2});
  CHECK(c2.views.size() == 25);
  CHECK_NOTHROW(c2.validate());

  auto broken = c2;
  broken.views.erase({0, 0});
  CHECK_THROWS_AS(broken.validate(), Error);
}

TEST_CASE("missing views complement the mask") {
  CHECK(missing_views(make_mask(SamplingPattern::full(), 9, 9)).empty());
  CHECK(missing_views(make_mask({AxisKind::Corners, 4}, 9, 9)).size() == 72);
  const auto row2 = missing_views(make_mask({AxisKind::Row, 2}, 9, 9));
  CHECK(row2.size() == 36);
  CHECK(std::all_of(row2.begin(), row2.end(), [](ViewIndex v) { return v.row % 2 == 1; }));
}
