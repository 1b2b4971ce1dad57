#pragma once

#include <lfc/lightfield.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lfc {

enum class AxisKind : std::uint8_t { Full, Row, Col, Corners };

/// One of the seven view selection strategies: the full-grid anchor or
/// row/col/corners sub-sampling at factor 2 or 4.
class SamplingPattern {
public:
  /// The anchor (no sub-sampling).
  SamplingPattern() = default;

  /// Throws lfc::Error unless Full pairs with factor 1 and the other kinds
  /// with factor 2 or 4.
  SamplingPattern(AxisKind kind, int factor);

  static SamplingPattern full() { return {}; }

  /// Parses "full", "row_2x", ..., "corners_4x".
  static SamplingPattern parse(std::string_view name);

  /// Wire id used by the container (0 = full, 1..6 in name order row, col, corners x 2/4).
  static SamplingPattern from_id(std::uint8_t id);
  [[nodiscard]] std::uint8_t id() const noexcept;

  [[nodiscard]] AxisKind kind() const noexcept { return kind_; }
  [[nodiscard]] int factor() const noexcept { return factor_; }
  [[nodiscard]] std::string name() const;

  [[nodiscard]] bool subsamples_rows() const noexcept {
    return kind_ == AxisKind::Row || kind_ == AxisKind::Corners;
  }
  [[nodiscard]] bool subsamples_cols() const noexcept {
    return kind_ == AxisKind::Col || kind_ == AxisKind::Corners;
  }

  /// The same kind at factor 2 (used for cascade decomposition of 4x).
  [[nodiscard]] SamplingPattern with_factor(int factor) const { return {kind_, factor}; }

  /// Row <-> Col, others unchanged.
  [[nodiscard]] SamplingPattern transposed() const;

  friend bool operator==(const SamplingPattern &, const SamplingPattern &) = default;

private:
  AxisKind kind_{AxisKind::Full};
  int factor_{1};
};

/// All seven strategies in report order, anchor first.
const std::vector<SamplingPattern> &all_patterns();

/// Retained flag per angular position.
class SamplingMask {
public:
  SamplingMask(int grid_rows, int grid_cols, std::vector<bool> retained);

  [[nodiscard]] int grid_rows() const noexcept { return rows_; }
  [[nodiscard]] int grid_cols() const noexcept { return cols_; }
  [[nodiscard]] bool retained(ViewIndex idx) const;
  [[nodiscard]] int retained_count() const noexcept;
  [[nodiscard]] std::vector<ViewIndex> retained_views() const;

  [[nodiscard]] SamplingMask operator&(const SamplingMask &other) const;

  friend bool operator==(const SamplingMask &, const SamplingMask &) = default;

private:
  int rows_{};
  int cols_{};
  std::vector<bool> retained_;
};

using ScanSequence = std::vector<ViewIndex>;

/// Views kept after sub-sampling, keyed by their original grid position.
struct SampledLightField {
  SamplingPattern pattern;
  SamplingMask mask;
  int view_width{};
  int view_height{};
  std::map<ViewIndex, RgbView> views;

  [[nodiscard]] int grid_rows() const noexcept { return mask.grid_rows(); }
  [[nodiscard]] int grid_cols() const noexcept { return mask.grid_cols(); }

  /// Throws lfc::Error if the keys differ from the mask or sizes disagree.
  void validate() const;
};

/// Row_k keeps rows r % k == 0, Col_k columns c % k == 0, Corners_k both.
/// Throws when (N - 1) % k != 0 along a sub-sampled axis.
SamplingMask make_mask(const SamplingPattern &pattern, int grid_rows, int grid_cols);

SampledLightField apply_pattern(const LightField &lf, const SamplingPattern &pattern);

/// Serpentine scan of the retained views: first retained row left to right,
/// then alternate direction on each following retained row.
ScanSequence snake_order(const SamplingMask &mask);

std::vector<ViewIndex> missing_views(const SamplingMask &mask);

} // namespace lfc
