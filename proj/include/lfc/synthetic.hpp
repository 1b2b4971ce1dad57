#pragma once

#include <lfc/lightfield.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace lfc {

enum class SyntheticKind { Ramp, ShiftedTexture };

SyntheticKind parse_synthetic_kind(std::string_view name);
std::string_view to_string(SyntheticKind kind);

struct SyntheticSpec {
  SyntheticKind kind{SyntheticKind::ShiftedTexture};
  int grid_rows{9};
  int grid_cols{9};
  int view_width{128};
  int view_height{128};
  double disparity{1.0}; ///< pixels of shift between adjacent views
  std::uint64_t seed{1};
  double ramp_row_step{10.0}; ///< ramp: gray level added per angular row
  double ramp_col_step{10.0}; ///< ramp: gray level added per angular column
};

/// Ramp: view (r, c) is the constant gray a*r + b*c (clamped).
/// Shifted texture: one seeded periodic texture, view (r, c) sampled at
/// (x + d*c, y + d*r) with wrap-around, so d sets the baseline.
LightField gen_synthetic(const SyntheticSpec &spec);

} // namespace lfc
