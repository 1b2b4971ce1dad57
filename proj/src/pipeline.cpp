#include <lfc/pipeline.hpp>

#include <lfc/color.hpp>
#include <lfc/error.hpp>
#include <lfc/report.hpp>

#include <algorithm>
#include <atomic>
#include <thread>

namespace lfc {
namespace fs = std::filesystem;
using nlohmann::json;

void PipelineConfig::validate() const {
  if (strategies.empty()) {
    throw Error("strategy list is empty");
  }
  if (qps.empty()) {
    throw Error("qp list is empty");
  }
  for (const auto &s : strategies) {
    (void)SamplingPattern::parse(s);
  }
  for (int qp : qps) {
    CodecConfig c = codec;
    c.qp = qp;
    c.validate();
  }
  (void)make_synthesizer(synthesizer);
  if (!synthetic && dataset.empty()) {
    throw Error("no input: set a dataset directory or a synthetic light field");
  }
}

json PipelineConfig::to_json() const {
  json j;
  if (synthetic) {
    j["synthetic"] = {{"kind", std::string(to_string(synthetic->kind))},
                      {"grid_rows", synthetic->grid_rows},
                      {"grid_cols", synthetic->grid_cols},
                      {"view_width", synthetic->view_width},
                      {"view_height", synthetic->view_height},
                      {"disparity", synthetic->disparity},
                      {"seed", synthetic->seed},
                      {"ramp_row_step", synthetic->ramp_row_step},
                      {"ramp_col_step", synthetic->ramp_col_step}};
  } else {
    j["dataset"] = dataset.string();
    j["naming"] = std::string(to_string(naming));
    j["grid_rows"] = grid_rows;
    j["grid_cols"] = grid_cols;
  }
  j["strategies"] = strategies;
  j["qps"] = qps;
  j["backend"] = std::string(to_string(codec.backend));
  if (codec.backend == Backend::External) {
    j["encoder_command"] = codec.external_encode_command;
    j["decoder_command"] = codec.external_decode_command;
  }
  j["synthesizer"] = synthesizer;
  j["psnr_domain"] = std::string(to_string(psnr_domain));
  j["cascade_order"] = std::string(to_string(cascade_order));
  j["output_dir"] = output_dir.string();
  j["workers"] = workers;
  return j;
}

PipelineConfig PipelineConfig::from_json(const json &j) {
  PipelineConfig cfg;
  try {
    if (j.contains("synthetic")) {
      const auto &s = j.at("synthetic");
      SyntheticSpec spec;
      spec.kind = parse_synthetic_kind(s.value("kind", std::string(to_string(spec.kind))));
      spec.grid_rows = s.value("grid_rows", spec.grid_rows);
      spec.grid_cols = s.value("grid_cols", spec.grid_cols);
      spec.view_width = s.value("view_width", spec.view_width);
      spec.view_height = s.value("view_height", spec.view_height);
      spec.disparity = s.value("disparity", spec.disparity);
      spec.seed = s.value("seed", spec.seed);
      spec.ramp_row_step = s.value("ramp_row_step", spec.ramp_row_step);
      spec.ramp_col_step = s.value("ramp_col_step", spec.ramp_col_step);
      cfg.synthetic = spec;
      cfg.grid_rows = spec.grid_rows;
      cfg.grid_cols = spec.grid_cols;
    }
    cfg.dataset = j.value("dataset", std::string{});
    cfg.naming = parse_naming_scheme(j.value("naming", std::string(to_string(cfg.naming))));
    cfg.grid_rows = j.value("grid_rows", cfg.grid_rows);
    cfg.grid_cols = j.value("grid_cols", cfg.grid_cols);
    cfg.strategies = j.value("strategies", cfg.strategies);
    cfg.qps = j.value("qps", cfg.qps);
    cfg.codec.backend = parse_backend(j.value("backend", std::string("internal")));
    cfg.codec.external_encode_command = j.value("encoder_command", std::string{});
    cfg.codec.external_decode_command = j.value("decoder_command", std::string{});
    cfg.synthesizer = j.value("synthesizer", cfg.synthesizer);
    cfg.psnr_domain = parse_psnr_domain(j.value("psnr_domain", std::string("y")));
    cfg.cascade_order =
        parse_cascade_order(j.value("cascade_order", std::string(to_string(cfg.cascade_order))));
    cfg.output_dir = j.value("output_dir", std::string{});
    cfg.workers = j.value("workers", cfg.workers);
  } catch (const json::exception &e) {
    throw Error(std::string("invalid pipeline configuration: ") + e.what());
  }
  return cfg;
}

LightField codec_reference(const LightField &original) {
  std::vector<RgbView> views;
  views.reserve(original.views().size());
  for (const auto &v : original.views()) {
    views.push_back(yuv420_to_rgb(rgb_to_yuv420(v)));
  }
  return {original.grid_rows(), original.grid_cols(), std::move(views)};
}

CellOutput run_cell(const LightField &original, const SamplingPattern &pattern, int qp,
                    const PipelineConfig &cfg, const Synthesizer &synth) {
  CodecConfig codec = cfg.codec;
  codec.qp = qp;
  const auto sampled = apply_pattern(original, pattern);
  auto encoded = encode_lightfield(sampled, codec);
  auto decoded = decode_lightfield(encoded, codec);

  LightField reconstructed;
  if (pattern.kind() == AxisKind::Full) {
    std::vector<RgbView> views;
    for (auto &[idx, view] : decoded.views) {
      views.push_back(std::move(view)); // std::map iterates row-major
    }
    reconstructed = LightField(original.grid_rows(), original.grid_cols(), std::move(views));
  } else {
    reconstructed = reconstruct(decoded, synth, cfg.cascade_order);
  }
  auto point = evaluate(reconstructed, codec_reference(original), encoded.coded_bits(), qp,
                        cfg.psnr_domain);
  return {std::move(encoded), std::move(reconstructed), std::move(point)};
}

BdTable report_bd(const std::vector<RdCurve> &curves, const std::string &anchor_label) {
  const auto anchor = std::find_if(curves.begin(), curves.end(),
                                   [&](const RdCurve &c) { return c.label == anchor_label; });
  if (anchor == curves.end()) {
    throw Error("anchor curve '" + anchor_label + "' not found");
  }
  BdTable table;
  table.anchor = anchor_label;
  for (const auto &curve : curves) {
    if (curve.label == anchor_label) {
      continue;
    }
    table.rows.push_back({curve.label, bd_metrics(curve, *anchor)});
  }
  return table;
}

PipelineResult run_pipeline(const PipelineConfig &cfg, const LightField &lf) {
  cfg.validate();

  struct Job {
    std::size_t strategy;
    int qp;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
    for (int qp : cfg.qps) {
      jobs.push_back({s, qp});
    }
  }
  std::vector<std::optional<RdPoint>> points(jobs.size());
  std::vector<std::string> errors(jobs.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    const auto synth = make_synthesizer(cfg.synthesizer);
    for (auto i = next++; i < jobs.size(); i = next++) {
      try {
        const auto pattern = SamplingPattern::parse(cfg.strategies[jobs[i].strategy]);
        points[i] = run_cell(lf, pattern, jobs[i].qp, cfg, *synth).point;
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
  };
  const auto hw = std::max(1U, std::thread::hardware_concurrency());
  const auto pool_size =
      std::min<std::size_t>(jobs.size(), cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers) : hw);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < pool_size; ++t) {
      pool.emplace_back(worker);
    }
    worker();
  }

  PipelineResult result;
  for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
    RdCurve curve{cfg.strategies[s], {}};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].strategy != s) {
        continue;
      }
      if (points[i]) {
        curve.points.push_back(std::move(*points[i]));
      } else {
        result.failures.push_back({cfg.strategies[s], jobs[i].qp, errors[i]});
      }
    }
    curve.sort_by_rate();
    result.curves.push_back(std::move(curve));
  }

  result.bd.anchor = kAnchorLabel;
  const bool has_anchor =
      std::any_of(result.curves.begin(), result.curves.end(),
                  [](const RdCurve &c) { return c.label == kAnchorLabel; });
  if (!has_anchor) {
    result.bd.notes.push_back("no anchor ('full') strategy in the sweep; BD table empty");
    return result;
  }
  const auto anchor = *std::find_if(result.curves.begin(), result.curves.end(),
                                    [](const RdCurve &c) { return c.label == kAnchorLabel; });
  for (const auto &curve : result.curves) {
    if (curve.label == kAnchorLabel) {
      continue;
    }
    try {
      result.bd.rows.push_back({curve.label, bd_metrics(curve, anchor)});
    } catch (const Error &e) {
      result.bd.notes.push_back(curve.label + ": " + e.what());
    }
  }
  return result;
}

LightField load_input(const PipelineConfig &cfg) {
  if (cfg.synthetic) {
    return gen_synthetic(*cfg.synthetic);
  }
  return load_lightfield(cfg.dataset, cfg.naming, cfg.grid_rows, cfg.grid_cols);
}

PipelineResult run_pipeline(const PipelineConfig &cfg) {
  cfg.validate();
  const auto lf = load_input(cfg);
  auto result = run_pipeline(cfg, lf);
  if (!cfg.output_dir.empty()) {
    write_reports(cfg.output_dir, cfg, result);
  }
  return result;
}

} // namespace lfc
