#include <doctest.h>

#include <lfc/error.hpp>
#include <lfc/lightfield.hpp>

using namespace lfc;

namespace {

LightField numbered(int rows, int cols) {
  std::vector<RgbView> views;
  for (int i = 0; i < rows * cols; ++i) {
    views.emplace_back(4, 3, static_cast<std::uint8_t>(i));
  }
  return {rows, cols, std::move(views)};
}

} // namespace

TEST_CASE("view_at addresses row-major views") {
  const auto lf = numbered(9, 9);
  CHECK(lf.view_at({0, 0}).at(0, 0, 0) == 0);
  CHECK(lf.view_at({8, 8}).at(0, 0, 0) == 80);
  CHECK(view_at(lf, {1, 4}).at(1, 2, 2) == 13);
  CHECK_THROWS_AS((void)lf.view_at({9, 0}), Error);
  CHECK_THROWS_AS((void)lf.view_at({0, -1}), Error);
}

TEST_CASE("light field construction is validated") {
  std::vector<RgbView> three(3, RgbView(2, 2));
  CHECK_THROWS_AS(LightField(2, 2, three), Error);
  std::vector<RgbView> mixed{RgbView(2, 2), RgbView(3, 2)};
  CHECK_THROWS_AS(LightField(1, 2, mixed), Error);
  const LightField filled(2, 3, 5, 4, 7);
  CHECK(filled.view_count() == 6);
  CHECK(filled.view_at({1, 2}).plane(2) == std::vector<std::uint8_t>(20, 7));
}

TEST_CASE("yuv frame geometry rounds chroma up") {
  const YuvFrame f(5, 3);
  CHECK(f.chroma_width() == 3);
  CHECK(f.chroma_height() == 2);
  CHECK(f.byte_size() == 15 + 2 * 6);
  CHECK(f.valid());
  YuvFrame broken = f;
  broken.u.pop_back();
  CHECK_FALSE(broken.valid());
}

TEST_CASE("view index formatting and order") {
  CHECK(to_string(ViewIndex{3, 7}) == "(3,7)");
  CHECK(ViewIndex{0, 8} < ViewIndex{1, 0});
}
