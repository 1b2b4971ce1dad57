#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lfc {

/// Angular (camera-plane) position of a sub-aperture view. Origin is the
/// top-left view; rows grow downward and columns rightward.
struct ViewIndex {
  int row{};
  int col{};

  friend auto operator<=>(const ViewIndex &, const ViewIndex &) = default;
};

std::string to_string(ViewIndex idx);

/// One sub-aperture view: three 8-bit planes (R, G, B), row-major.
class RgbView {
public:
  static constexpr int channels = 3;

  RgbView() = default;
  RgbView(int width, int height, std::uint8_t fill = 0);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  [[nodiscard]] std::vector<std::uint8_t> &plane(int c) { return planes_[c]; }
  [[nodiscard]] const std::vector<std::uint8_t> &plane(int c) const { return planes_[c]; }

  [[nodiscard]] std::uint8_t &at(int c, int x, int y) {
    return planes_[c][static_cast<std::size_t>(y) * width_ + x];
  }
  [[nodiscard]] std::uint8_t at(int c, int x, int y) const {
    return planes_[c][static_cast<std::size_t>(y) * width_ + x];
  }

  /// Same dimensions as `other`.
  [[nodiscard]] bool same_shape(const RgbView &other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const RgbView &, const RgbView &) = default;

private:
  int width_{};
  int height_{};
  std::array<std::vector<std::uint8_t>, channels> planes_{};
};

/// Dense grid of sub-aperture views sharing one spatial size.
class LightField {
public:
  LightField() = default;

  /// Builds a light field from row-major views. Throws lfc::Error when the
  /// count does not match the grid or the views differ in size.
  LightField(int grid_rows, int grid_cols, std::vector<RgbView> views);

  /// Every view initialised to `fill`.
  LightField(int grid_rows, int grid_cols, int view_width, int view_height,
             std::uint8_t fill = 0);

  [[nodiscard]] int grid_rows() const noexcept { return rows_; }
  [[nodiscard]] int grid_cols() const noexcept { return cols_; }
  [[nodiscard]] int view_width() const noexcept { return width_; }
  [[nodiscard]] int view_height() const noexcept { return height_; }
  [[nodiscard]] int view_count() const noexcept { return rows_ * cols_; }

  [[nodiscard]] bool contains(ViewIndex idx) const noexcept {
    return idx.row >= 0 && idx.row < rows_ && idx.col >= 0 && idx.col < cols_;
  }

  /// Bounds-checked access; throws lfc::Error for out-of-range indices.
  [[nodiscard]] const RgbView &view_at(ViewIndex idx) const;
  [[nodiscard]] RgbView &view_at(ViewIndex idx);

  [[nodiscard]] const std::vector<RgbView> &views() const noexcept { return views_; }

  friend bool operator==(const LightField &, const LightField &) = default;

private:
  int rows_{};
  int cols_{};
  int width_{};
  int height_{};
  std::vector<RgbView> views_;
};

/// Free-function accessor mirroring LightField::view_at.
[[nodiscard]] const RgbView &view_at(const LightField &lf, ViewIndex idx);

/// Planar 8-bit YUV 4:2:0 frame. Chroma planes are ceil(w/2) x ceil(h/2).
struct YuvFrame {
  int width{};
  int height{};
  std::vector<std::uint8_t> y;
  std::vector<std::uint8_t> u;
  std::vector<std::uint8_t> v;

  YuvFrame() = default;
  YuvFrame(int width, int height);

  [[nodiscard]] int chroma_width() const noexcept { return (width + 1) / 2; }
  [[nodiscard]] int chroma_height() const noexcept { return (height + 1) / 2; }

  /// Byte size of one I420 frame of this geometry.
  [[nodiscard]] std::size_t byte_size() const noexcept;

  /// True when plane sizes are consistent with width/height.
  [[nodiscard]] bool valid() const noexcept;

  friend bool operator==(const YuvFrame &, const YuvFrame &) = default;
};

} // namespace lfc
