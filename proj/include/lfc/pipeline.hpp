#pragma once

#include <lfc/codec.hpp>
#include <lfc/image_io.hpp>
#include <lfc/metrics.hpp>
#include <lfc/rate_distortion.hpp>
#include <lfc/synthesis.hpp>
#include <lfc/synthetic.hpp>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lfc {

inline const std::vector<int> kDefaultQps{20, 25, 30, 35, 40, 45};
inline constexpr const char *kAnchorLabel = "full";

/// Everything a strategy x QP sweep needs. Either `dataset` or `synthetic`
/// provides the input light field.
struct PipelineConfig {
  std::filesystem::path dataset;
  NamingScheme naming{NamingScheme::Linear};
  int grid_rows{9};
  int grid_cols{9};
  std::optional<SyntheticSpec> synthetic;

  std::vector<std::string> strategies{"full",   "row_2x",     "row_4x",    "col_2x",
                                      "col_4x", "corners_2x", "corners_4x"};
  std::vector<int> qps{kDefaultQps};
  CodecConfig codec{};
  std::string synthesizer{"bilinear"};
  PsnrDomain psnr_domain{PsnrDomain::Y};
  CascadeOrder cascade_order{CascadeOrder::HorizontalFirst};
  std::filesystem::path output_dir;
  int workers{0}; ///< 0 = hardware concurrency

  /// Throws lfc::Error for empty lists, unknown names or bad QPs.
  void validate() const;

  [[nodiscard]] nlohmann::json to_json() const;

  /// Missing keys keep their defaults.
  static PipelineConfig from_json(const nlohmann::json &j);
};

/// Everything one strategy x QP job produces.
struct CellOutput {
  EncodedLightField encoded;
  LightField reconstructed;
  RdPoint point;
};

/// Each view passed through the 4:2:0 round trip: what a lossless codec
/// hands back, and the reference distortion is measured against.
LightField codec_reference(const LightField &original);

/// sub-sample -> encode -> decode -> reconstruct (skipped for the anchor) -> evaluate
CellOutput run_cell(const LightField &original, const SamplingPattern &pattern, int qp,
                    const PipelineConfig &cfg, const Synthesizer &synth);

struct CellFailure {
  std::string strategy;
  int qp{};
  std::string message;
};

struct BdRow {
  std::string strategy;
  BdResult result;
};

struct BdTable {
  std::string anchor;
  std::vector<BdRow> rows;
  std::vector<std::string> notes;
};

/// BD-PSNR / BD-Rate of every curve other than the anchor. Throws when the
/// anchor is missing or a curve has fewer than four points.
BdTable report_bd(const std::vector<RdCurve> &curves, const std::string &anchor_label = kAnchorLabel);

struct PipelineResult {
  std::vector<RdCurve> curves; ///< one per strategy, in configuration order
  std::vector<CellFailure> failures;
  BdTable bd;
};

/// Runs every strategy x QP cell on `lf` with a bounded worker pool. A failing
/// cell is recorded and skipped; the rest of the sweep continues.
PipelineResult run_pipeline(const PipelineConfig &cfg, const LightField &lf);

/// Loads (or generates) the input, runs the sweep and, when output_dir is set,
/// writes rd_curves.csv, rd_curves.json, bd_table.csv, heatmap_<strategy>_<qp>.json
/// and config.json.
PipelineResult run_pipeline(const PipelineConfig &cfg);

LightField load_input(const PipelineConfig &cfg);

} // namespace lfc
