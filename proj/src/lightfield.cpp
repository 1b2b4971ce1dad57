#include <lfc/lightfield.hpp>

#include <lfc/error.hpp>

#include <utility>

namespace lfc {

std::string to_string(ViewIndex idx) {
  return "(" + std::to_string(idx.row) + "," + std::to_string(idx.col) + ")";
}

RgbView::RgbView(int width, int height, std::uint8_t fill) : width_{width}, height_{height} {
  if (width <= 0 || height <= 0) {
    throw Error("view dimensions must be positive");
  }
  for (auto &p : planes_) {
    p.assign(pixel_count(), fill);
  }
}

LightField::LightField(int grid_rows, int grid_cols, std::vector<RgbView> views)
    : rows_{grid_rows}, cols_{grid_cols}, views_{std::move(views)} {
  if (rows_ < 1 || cols_ < 1) {
    throw Error("light field grid must be at least 1x1");
  }
  if (views_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw Error("light field expects " + std::to_string(rows_ * cols_) + " views, got " +
                std::to_string(views_.size()));
  }
  width_ = views_.front().width();
  height_ = views_.front().height();
  for (const auto &v : views_) {
    if (v.width() != width_ || v.height() != height_) {
      throw Error("light field views differ in size");
    }
  }
}

LightField::LightField(int grid_rows, int grid_cols, int view_width, int view_height,
                       std::uint8_t fill)
    : LightField(grid_rows, grid_cols,
                 std::vector<RgbView>(static_cast<std::size_t>(grid_rows) * grid_cols,
                                      RgbView(view_width, view_height, fill))) {}

const RgbView &LightField::view_at(ViewIndex idx) const {
  if (!contains(idx)) {
    throw Error("view index " + to_string(idx) + " outside " + std::to_string(rows_) + "x" +
                std::to_string(cols_) + " grid");
  }
  return views_[static_cast<std::size_t>(idx.row) * cols_ + idx.col];
}

RgbView &LightField::view_at(ViewIndex idx) {
  return const_cast<RgbView &>(std::as_const(*this).view_at(idx));
}

const RgbView &view_at(const LightField &lf, ViewIndex idx) { return lf.view_at(idx); }

YuvFrame::YuvFrame(int w, int h) : width{w}, height{h} {
  if (w <= 0 || h <= 0) {
    throw Error("frame dimensions must be positive");
  }
  y.assign(static_cast<std::size_t>(w) * h, 0);
  const auto chroma = static_cast<std::size_t>(chroma_width()) * chroma_height();
  u.assign(chroma, 128);
  v.assign(chroma, 128);
}

std::size_t YuvFrame::byte_size() const noexcept {
  return static_cast<std::size_t>(width) * height +
         2 * static_cast<std::size_t>(chroma_width()) * chroma_height();
}

bool YuvFrame::valid() const noexcept {
  if (width <= 0 || height <= 0) {
    return false;
  }
  const auto chroma = static_cast<std::size_t>(chroma_width()) * chroma_height();
  return y.size() == static_cast<std::size_t>(width) * height && u.size() == chroma &&
         v.size() == chroma;
}

} // namespace lfc
