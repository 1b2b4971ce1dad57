#pragma once

#include <lfc/pipeline.hpp>
#include <lfc/rate_distortion.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lfc {

/// CSV columns: strategy, qp, bpp, psnr_mean, psnr_std, ssim_mean. Values are
/// printed with round-trip precision.
std::string rd_curves_csv(const std::vector<RdCurve> &curves);

/// Parses rd_curves_csv output back into curves (per-view grids empty),
/// grouped by strategy in first-seen order.
std::vector<RdCurve> parse_rd_curves_csv(std::string_view text);

nlohmann::json to_json(const RdPoint &point);
nlohmann::json to_json(const RdCurve &curve);

/// Heatmap payload: per-view PSNR/SSIM grids plus the retained-view mask.
nlohmann::json heatmap_json(const std::string &strategy, const RdPoint &point,
                            const SamplingMask &mask);

std::string bd_table_csv(const BdTable &table);

/// Fixed-width text rendering for terminals.
std::string bd_table_text(const BdTable &table);

void write_text(const std::filesystem::path &path, std::string_view text);
std::string read_text(const std::filesystem::path &path);

/// Writes every report of a sweep into `dir`.
void write_reports(const std::filesystem::path &dir, const PipelineConfig &cfg,
                   const PipelineResult &result);

} // namespace lfc
