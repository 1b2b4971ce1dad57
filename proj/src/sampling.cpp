#include <lfc/sampling.hpp>

#include <lfc/error.hpp>

#include <algorithm>

namespace lfc {

SamplingPattern::SamplingPattern(AxisKind kind, int factor) : kind_{kind}, factor_{factor} {
  if (kind == AxisKind::Full ? factor != 1 : (factor != 2 && factor != 4)) {
    throw Error("invalid sampling pattern factor " + std::to_string(factor));
  }
}

SamplingPattern SamplingPattern::parse(std::string_view name) {
  for (const auto &p : all_patterns()) {
    if (p.name() == name) {
      return p;
    }
  }
  throw Error("unknown sampling pattern '" + std::string(name) +
              "' (expected full|row_2x|row_4x|col_2x|col_4x|corners_2x|corners_4x)");
}

SamplingPattern SamplingPattern::from_id(std::uint8_t id) {
  const auto &all = all_patterns();
  if (id >= all.size()) {
    throw FormatError("unknown sampling pattern id " + std::to_string(id));
  }
  return all[id];
}

std::uint8_t SamplingPattern::id() const noexcept {
  const auto &all = all_patterns();
  return static_cast<std::uint8_t>(std::find(all.begin(), all.end(), *this) - all.begin());
}

std::string SamplingPattern::name() const {
  const auto suffix = "_" + std::to_string(factor_) + "x";
  switch (kind_) {
  case AxisKind::Row:
    return "row" + suffix;
  case AxisKind::Col:
    return "col" + suffix;
  case AxisKind::Corners:
    return "corners" + suffix;
  case AxisKind::Full:
    break;
  }
  return "full";
}

SamplingPattern SamplingPattern::transposed() const {
  switch (kind_) {
  case AxisKind::Row:
    return {AxisKind::Col, factor_};
  case AxisKind::Col:
    return {AxisKind::Row, factor_};
  default:
    return *this;
  }
}

const std::vector<SamplingPattern> &all_patterns() {
  static const std::vector<SamplingPattern> patterns{
      SamplingPattern{},
      SamplingPattern{AxisKind::Row, 2},
      SamplingPattern{AxisKind::Row, 4},
      SamplingPattern{AxisKind::Col, 2},
      SamplingPattern{AxisKind::Col, 4},
      SamplingPattern{AxisKind::Corners, 2},
      SamplingPattern{AxisKind::Corners, 4},
  };
  return patterns;
}

SamplingMask::SamplingMask(int grid_rows, int grid_cols, std::vector<bool> retained)
    : rows_{grid_rows}, cols_{grid_cols}, retained_{std::move(retained)} {
  if (rows_ < 1 || cols_ < 1 || retained_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw Error("sampling mask does not match its grid");
  }
  if (std::none_of(retained_.begin(), retained_.end(), [](bool b) { return b; })) {
    throw Error("sampling mask retains no views");
  }
}

bool SamplingMask::retained(ViewIndex idx) const {
  if (idx.row < 0 || idx.row >= rows_ || idx.col < 0 || idx.col >= cols_) {
    throw Error("view index " + to_string(idx) + " outside mask");
  }
  return retained_[static_cast<std::size_t>(idx.row) * cols_ + idx.col];
}

int SamplingMask::retained_count() const noexcept {
  return static_cast<int>(std::count(retained_.begin(), retained_.end(), true));
}

std::vector<ViewIndex> SamplingMask::retained_views() const {
  std::vector<ViewIndex> out;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (retained({r, c})) {
        out.push_back({r, c});
      }
    }
  }
  return out;
}

SamplingMask SamplingMask::operator&(const SamplingMask &other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error("mask grids differ");
  }
  std::vector<bool> both(retained_.size());
  for (std::size_t i = 0; i < both.size(); ++i) {
    both[i] = retained_[i] && other.retained_[i];
  }
  return {rows_, cols_, std::move(both)};
}

void SampledLightField::validate() const {
  const auto expected = mask.retained_views();
  if (views.size() != expected.size()) {
    throw Error("sampled light field holds " + std::to_string(views.size()) + " views, mask retains " +
                std::to_string(expected.size()));
  }
  for (const auto &idx : expected) {
    const auto it = views.find(idx);
    if (it == views.end()) {
      throw Error("sampled light field lacks retained view " + to_string(idx));
    }
    if (it->second.width() != view_width || it->second.height() != view_height) {
      throw Error("sampled view " + to_string(idx) + " has wrong dimensions");
    }
  }
}

SamplingMask make_mask(const SamplingPattern &pattern, int grid_rows, int grid_cols) {
  if (grid_rows < 1 || grid_cols < 1) {
    throw Error("grid dimensions must be at least 1x1");
  }
  const int k = pattern.factor();
  if (pattern.subsamples_rows() && (grid_rows - 1) % k != 0) {
    throw Error(pattern.name() + " needs (rows - 1) divisible by " + std::to_string(k) + ", got " +
                std::to_string(grid_rows) + " rows");
  }
  if (pattern.subsamples_cols() && (grid_cols - 1) % k != 0) {
    throw Error(pattern.name() + " needs (cols - 1) divisible by " + std::to_string(k) + ", got " +
                std::to_string(grid_cols) + " cols");
  }
  std::vector<bool> retained(static_cast<std::size_t>(grid_rows) * grid_cols);
  for (int r = 0; r < grid_rows; ++r) {
    for (int c = 0; c < grid_cols; ++c) {
      const bool row_ok = !pattern.subsamples_rows() || r % k == 0;
      const bool col_ok = !pattern.subsamples_cols() || c % k == 0;
      retained[static_cast<std::size_t>(r) * grid_cols + c] = row_ok && col_ok;
    }
  }
  return {grid_rows, grid_cols, std::move(retained)};
}

SampledLightField apply_pattern(const LightField &lf, const SamplingPattern &pattern) {
  auto mask = make_mask(pattern, lf.grid_rows(), lf.grid_cols());
  SampledLightField out{pattern, mask, lf.view_width(), lf.view_height(), {}};
  for (const auto &idx : mask.retained_views()) {
    out.views.emplace(idx, lf.view_at(idx));
  }
  return out;
}

ScanSequence snake_order(const SamplingMask &mask) {
  ScanSequence seq;
  bool rightward = true;
  for (int r = 0; r < mask.grid_rows(); ++r) {
    ScanSequence row;
    for (int c = 0; c < mask.grid_cols(); ++c) {
      if (mask.retained({r, c})) {
        row.push_back({r, c});
      }
    }
    if (row.empty()) {
      continue;
    }
    if (!rightward) {
      std::reverse(row.begin(), row.end());
    }
    seq.insert(seq.end(), row.begin(), row.end());
    rightward = !rightward;
  }
  if (seq.empty()) {
    throw Error("snake order of an empty mask");
  }
  return seq;
}

std::vector<ViewIndex> missing_views(const SamplingMask &mask) {
  std::vector<ViewIndex> out;
  for (int r = 0; r < mask.grid_rows(); ++r) {
    for (int c = 0; c < mask.grid_cols(); ++c) {
      if (!mask.retained({r, c})) {
        out.push_back({r, c});
      }
    }
  }
  return out;
}

} // namespace lfc
