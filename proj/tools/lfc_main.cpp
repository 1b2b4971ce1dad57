// lfc: light field sub-sampling, coding, reconstruction and RD evaluation.

#include <lfc/codec.hpp>
#include <lfc/error.hpp>
#include <lfc/image_io.hpp>
#include <lfc/metrics.hpp>
#include <lfc/pipeline.hpp>
#include <lfc/report.hpp>
#include <lfc/sampling.hpp>
#include <lfc/synthesis.hpp>
#include <lfc/synthetic.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lfc;

namespace {

constexpr const char *kSampledManifest = "sampled.json";

// A sub-sampled light field on disk: retained views as {row}_{col}.png plus
// a manifest with the pattern and geometry.
void save_sampled(const fs::path &dir, const SampledLightField &slf) {
  fs::create_directories(dir);
  json views = json::array();
  for (const auto &[idx, view] : slf.views) {
    const auto stem = view_file_stem(NamingScheme::Explicit, idx, slf.grid_cols());
    write_image(dir / (stem + ".png"), view);
    views.push_back({idx.row, idx.col});
  }
  const json manifest{{"pattern", slf.pattern.name()},
                      {"grid_rows", slf.grid_rows()},
                      {"grid_cols", slf.grid_cols()},
                      {"view_width", slf.view_width},
                      {"view_height", slf.view_height},
                      {"views", std::move(views)}};
  write_text(dir / kSampledManifest, manifest.dump(2) + "\n");
}

SampledLightField load_sampled(const fs::path &dir) {
  json manifest;
  try {
    manifest = json::parse(read_text(dir / kSampledManifest));
  } catch (const json::exception &e) {
    throw Error("bad " + (dir / kSampledManifest).string() + ": " + e.what());
  }
  const auto pattern = SamplingPattern::parse(manifest.at("pattern").get<std::string>());
  const int rows = manifest.at("grid_rows").get<int>();
  const int cols = manifest.at("grid_cols").get<int>();
  SampledLightField slf{pattern, make_mask(pattern, rows, cols),
                        manifest.at("view_width").get<int>(),
                        manifest.at("view_height").get<int>(), {}};
  for (const auto &idx : slf.mask.retained_views()) {
    const auto path = dir / (view_file_stem(NamingScheme::Explicit, idx, cols) + ".png");
    if (!fs::exists(path)) {
      throw Error("missing view " + to_string(idx) + " in " + dir.string());
    }
    slf.views.emplace(idx, read_image(path));
  }
  slf.validate();
  return slf;
}

struct DatasetArgs {
  std::string dir;
  std::string naming{"linear"};
  int rows{9};
  int cols{9};

  void add(CLI::App *cmd, const std::string &flag, bool required) {
    auto *opt = cmd->add_option(flag, dir, "light field directory");
    if (required) {
      opt->required()->check(CLI::ExistingDirectory);
    }
    cmd->add_option("--naming", naming, "view file naming: linear|explicit")->capture_default_str();
    cmd->add_option("--rows", rows, "angular grid rows")->capture_default_str();
    cmd->add_option("--cols", cols, "angular grid columns")->capture_default_str();
  }

  [[nodiscard]] LightField load() const {
    return load_lightfield(dir, parse_naming_scheme(naming), rows, cols);
  }
};

struct CodecArgs {
  std::string backend{"internal"};
  int qp{30};
  std::string encoder;
  std::string decoder;

  void add(CLI::App *cmd) {
    cmd->add_option("--backend", backend, "internal|external")->capture_default_str();
    cmd->add_option("--qp", qp, "quantization parameter 0-51 (0 = lossless)")
        ->capture_default_str();
    cmd->add_option("--encoder-command", encoder,
                    "external encoder template ({input} {output} {width} {height} {frames} {qp})");
    cmd->add_option("--decoder-command", decoder, "external decoder template");
  }

  [[nodiscard]] CodecConfig config() const {
    CodecConfig cfg;
    cfg.backend = parse_backend(backend);
    cfg.qp = qp;
    cfg.external_encode_command = encoder;
    cfg.external_decode_command = decoder;
    return cfg;
  }
};

void print_point(const std::string &label, const RdPoint &p) {
  std::printf("%-12s qp %2d  bpp %.5f  psnr %.3f dB (std %.3f)  ssim %.5f\n", label.c_str(), p.qp,
              p.bpp, p.psnr_mean, p.psnr_std, p.ssim_mean);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Light field view sub-sampling, coding and rate-distortion evaluation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // gen-synthetic ------------------------------------------------------------
  SyntheticSpec synth_spec;
  std::string synth_kind{"shifted-texture"};
  std::string synth_out;
  std::string synth_naming{"linear"};
  auto *gen = app.add_subcommand("gen-synthetic", "write a synthetic light field");
  gen->add_option("--kind", synth_kind, "ramp|shifted-texture")->capture_default_str();
  gen->add_option("--rows", synth_spec.grid_rows)->capture_default_str();
  gen->add_option("--cols", synth_spec.grid_cols)->capture_default_str();
  gen->add_option("--width", synth_spec.view_width)->capture_default_str();
  gen->add_option("--height", synth_spec.view_height)->capture_default_str();
  gen->add_option("--disparity", synth_spec.disparity, "pixels per view step")
      ->capture_default_str();
  gen->add_option("--seed", synth_spec.seed)->capture_default_str();
  gen->add_option("--row-step", synth_spec.ramp_row_step, "ramp gray step per row")
      ->capture_default_str();
  gen->add_option("--col-step", synth_spec.ramp_col_step, "ramp gray step per column")
      ->capture_default_str();
  gen->add_option("--naming", synth_naming)->capture_default_str();
  gen->add_option("--out", synth_out)->required();

  // subsample ----------------------------------------------------------------
  DatasetArgs sub_data;
  std::string sub_pattern;
  std::string sub_out;
  auto *sub = app.add_subcommand("subsample", "keep the views of one sampling pattern");
  sub_data.add(sub, "--dataset", true);
  sub->add_option("--pattern", sub_pattern, "full|row_2x|row_4x|col_2x|col_4x|corners_2x|corners_4x")
      ->required();
  sub->add_option("--out", sub_out)->required();

  // encode -------------------------------------------------------------------
  DatasetArgs enc_data;
  std::string enc_sampled;
  std::string enc_pattern;
  CodecArgs enc_codec;
  std::string enc_out;
  auto *enc = app.add_subcommand("encode", "encode a sub-sampled light field into a container");
  enc_data.add(enc, "--dataset", false);
  enc->add_option("--sampled", enc_sampled, "directory written by 'subsample'");
  enc->add_option("--pattern", enc_pattern, "pattern applied to --dataset");
  enc_codec.add(enc);
  enc->add_option("--out", enc_out, "container file")->required();

  // decode -------------------------------------------------------------------
  std::string dec_in;
  std::string dec_out;
  std::string dec_decoder;
  auto *dec = app.add_subcommand("decode", "decode a container into retained views");
  dec->add_option("--input", dec_in, "container file")->required()->check(CLI::ExistingFile);
  dec->add_option("--decoder-command", dec_decoder,
                  "external decoder template, for containers from the external backend");
  dec->add_option("--out", dec_out)->required();

  // reconstruct --------------------------------------------------------------
  std::string rec_in;
  std::string rec_out;
  std::string rec_synth{"bilinear"};
  std::string rec_order{"horizontal-first"};
  std::string rec_naming{"explicit"};
  auto *rec = app.add_subcommand("reconstruct", "synthesize the missing views");
  rec->add_option("--input", rec_in, "sub-sampled or decoded directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  rec->add_option("--synthesizer", rec_synth, "bilinear | external:<command>")
      ->capture_default_str();
  rec->add_option("--cascade-order", rec_order, "horizontal-first|vertical-first")
      ->capture_default_str();
  rec->add_option("--naming", rec_naming, "naming of the written views")->capture_default_str();
  rec->add_option("--out", rec_out)->required();

  // evaluate -----------------------------------------------------------------
  DatasetArgs eval_orig;
  std::string eval_recon;
  std::string eval_recon_naming{"explicit"};
  std::uint64_t eval_bits{0};
  std::string eval_stream;
  std::string eval_domain{"y"};
  std::string eval_strategy{"unknown"};
  std::string eval_out;
  int eval_qp{0};
  bool eval_raw{false};
  auto *eval = app.add_subcommand("evaluate", "per-view PSNR/SSIM and bpp of a reconstruction");
  eval_orig.add(eval, "--original", true);
  eval->add_option("--reconstructed", eval_recon)->required()->check(CLI::ExistingDirectory);
  eval->add_option("--reconstructed-naming", eval_recon_naming)->capture_default_str();
  auto *bits_opt = eval->add_option("--bits", eval_bits, "coded size in bits");
  auto *stream_opt = eval->add_option("--bitstream", eval_stream, "container whose size is charged")
                         ->check(CLI::ExistingFile);
  bits_opt->excludes(stream_opt);
  eval->add_option("--qp", eval_qp, "qp recorded in the report");
  eval->add_option("--psnr-domain", eval_domain, "y|rgb")->capture_default_str();
  eval->add_option("--strategy", eval_strategy, "label for the heatmap report");
  eval->add_flag("--raw-reference", eval_raw,
                 "compare against the original RGB instead of its 4:2:0 round trip");
  eval->add_option("--out", eval_out, "heatmap JSON file");

  // sweep --------------------------------------------------------------------
  std::string sw_config;
  std::string sw_dataset, sw_naming, sw_synthetic, sw_backend, sw_encoder, sw_decoder;
  std::string sw_synth, sw_domain, sw_order, sw_out;
  std::optional<int> sw_rows, sw_cols, sw_workers, sw_width, sw_height;
  std::optional<std::uint64_t> sw_seed;
  std::optional<double> sw_disparity;
  std::vector<std::string> sw_strategies;
  std::vector<int> sw_qps;
  auto *sw = app.add_subcommand("sweep", "run every strategy x qp cell and write reports");
  sw->add_option("--config", sw_config, "JSON configuration; flags below override it")
      ->check(CLI::ExistingFile);
  sw->add_option("--dataset", sw_dataset);
  sw->add_option("--naming", sw_naming);
  sw->add_option("--rows", sw_rows);
  sw->add_option("--cols", sw_cols);
  sw->add_option("--synthetic", sw_synthetic, "generate the input: ramp|shifted-texture");
  sw->add_option("--disparity", sw_disparity);
  sw->add_option("--seed", sw_seed);
  sw->add_option("--width", sw_width, "synthetic view width");
  sw->add_option("--height", sw_height, "synthetic view height");
  sw->add_option("--strategies", sw_strategies)->delimiter(',');
  sw->add_option("--qps", sw_qps)->delimiter(',');
  sw->add_option("--backend", sw_backend);
  sw->add_option("--encoder-command", sw_encoder);
  sw->add_option("--decoder-command", sw_decoder);
  sw->add_option("--synthesizer", sw_synth);
  sw->add_option("--psnr-domain", sw_domain);
  sw->add_option("--cascade-order", sw_order);
  sw->add_option("--workers", sw_workers);
  sw->add_option("--out", sw_out, "report directory");

  // bd -----------------------------------------------------------------------
  std::string bd_curves;
  std::string bd_anchor{kAnchorLabel};
  std::string bd_out;
  auto *bd = app.add_subcommand("bd", "BD-PSNR / BD-Rate table from rd_curves.csv");
  bd->add_option("--curves", bd_curves)->required()->check(CLI::ExistingFile);
  bd->add_option("--anchor", bd_anchor)->capture_default_str();
  bd->add_option("--out", bd_out, "bd_table.csv to write");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      synth_spec.kind = parse_synthetic_kind(synth_kind);
      const auto lf = gen_synthetic(synth_spec);
      save_lightfield(synth_out, lf, parse_naming_scheme(synth_naming));
      std::printf("wrote %d views of %dx%d to %s\n", lf.view_count(), lf.view_width(),
                  lf.view_height(), synth_out.c_str());
    } else if (sub->parsed()) {
      const auto slf = apply_pattern(sub_data.load(), SamplingPattern::parse(sub_pattern));
      save_sampled(sub_out, slf);
      std::printf("%s: kept %zu of %d views\n", sub_pattern.c_str(), slf.views.size(),
                  slf.grid_rows() * slf.grid_cols());
    } else if (enc->parsed()) {
      const auto slf = [&] {
        if (!enc_sampled.empty()) {
          if (!enc_pattern.empty() || !enc_data.dir.empty()) {
            throw Error("use either --sampled or --dataset with --pattern");
          }
          return load_sampled(enc_sampled);
        }
        if (enc_data.dir.empty() || enc_pattern.empty()) {
          throw Error("encode needs --sampled, or --dataset and --pattern");
        }
        return apply_pattern(enc_data.load(), SamplingPattern::parse(enc_pattern));
      }();
      const auto encoded = encode_lightfield(slf, enc_codec.config());
      write_container(enc_out, encoded);
      std::printf("%zu views, %zu bytes, %.5f bpp\n", encoded.chunks.size(), encoded.total_bytes(),
                  bits_per_pixel(encoded.coded_bits(), encoded.grid_rows, encoded.grid_cols,
                                 encoded.view_width, encoded.view_height));
    } else if (dec->parsed()) {
      const auto encoded = read_container(dec_in);
      CodecConfig cfg;
      cfg.backend = encoded.backend;
      cfg.qp = encoded.qp;
      cfg.external_decode_command = dec_decoder;
      save_sampled(dec_out, decode_lightfield(encoded, cfg));
      std::printf("decoded %zu views (%s, qp %d)\n", encoded.chunks.size(),
                  encoded.pattern.name().c_str(), encoded.qp);
    } else if (rec->parsed()) {
      const auto slf = load_sampled(rec_in);
      const auto synth = make_synthesizer(rec_synth);
      const auto lf = reconstruct(slf, *synth, parse_cascade_order(rec_order));
      save_lightfield(rec_out, lf, parse_naming_scheme(rec_naming));
      std::printf("reconstructed %d views with %s\n", lf.view_count(), synth->name().c_str());
    } else if (eval->parsed()) {
      const auto original = eval_orig.load();
      const auto recon = load_lightfield(eval_recon, parse_naming_scheme(eval_recon_naming),
                                         eval_orig.rows, eval_orig.cols);
      std::uint64_t bits = 0;
      if (bits_opt->count() > 0) {
        bits = eval_bits;
      } else if (!eval_stream.empty()) {
        const auto encoded = read_container(eval_stream);
        bits = encoded.coded_bits();
        eval_qp = encoded.qp;
        eval_strategy = eval_strategy == "unknown" ? encoded.pattern.name() : eval_strategy;
      } else {
        throw Error("evaluate needs --bits or --bitstream");
      }
      const auto reference = eval_raw ? original : codec_reference(original);
      const auto point = evaluate(recon, reference, bits, eval_qp, parse_psnr_domain(eval_domain));
      print_point(eval_strategy, point);
      if (!eval_out.empty()) {
        SamplingMask mask = make_mask(SamplingPattern::full(), point.grid_rows, point.grid_cols);
        if (eval_strategy != "unknown") {
          mask = make_mask(SamplingPattern::parse(eval_strategy), point.grid_rows, point.grid_cols);
        }
        auto j = heatmap_json(eval_strategy, point, mask);
        j["psnr_domain"] = eval_domain;
        j["reference"] = eval_raw ? "rgb" : "yuv420";
        write_text(eval_out, j.dump(2) + "\n");
      }
    } else if (sw->parsed()) {
      PipelineConfig cfg;
      if (!sw_config.empty()) {
        json j;
        try {
          j = json::parse(read_text(sw_config));
        } catch (const json::exception &e) {
          throw Error("bad config " + sw_config + ": " + e.what());
        }
        cfg = PipelineConfig::from_json(j);
      }
      if (!sw_synthetic.empty()) {
        SyntheticSpec spec = cfg.synthetic.value_or(SyntheticSpec{});
        spec.kind = parse_synthetic_kind(sw_synthetic);
        cfg.synthetic = spec;
      }
      if (!sw_dataset.empty()) {
        cfg.dataset = sw_dataset;
        cfg.synthetic.reset();
      }
      if (cfg.synthetic) {
        auto &s = *cfg.synthetic;
        s.grid_rows = sw_rows.value_or(s.grid_rows);
        s.grid_cols = sw_cols.value_or(s.grid_cols);
        s.disparity = sw_disparity.value_or(s.disparity);
        s.seed = sw_seed.value_or(s.seed);
        s.view_width = sw_width.value_or(s.view_width);
        s.view_height = sw_height.value_or(s.view_height);
        cfg.grid_rows = s.grid_rows;
        cfg.grid_cols = s.grid_cols;
      } else {
        cfg.grid_rows = sw_rows.value_or(cfg.grid_rows);
        cfg.grid_cols = sw_cols.value_or(cfg.grid_cols);
      }
      if (!sw_naming.empty()) {
        cfg.naming = parse_naming_scheme(sw_naming);
      }
      if (!sw_strategies.empty()) {
        cfg.strategies = sw_strategies;
      }
      if (!sw_qps.empty()) {
        cfg.qps = sw_qps;
      }
      if (!sw_backend.empty()) {
        cfg.codec.backend = parse_backend(sw_backend);
      }
      if (!sw_encoder.empty()) {
        cfg.codec.external_encode_command = sw_encoder;
      }
      if (!sw_decoder.empty()) {
        cfg.codec.external_decode_command = sw_decoder;
      }
      if (!sw_synth.empty()) {
        cfg.synthesizer = sw_synth;
      }
      if (!sw_domain.empty()) {
        cfg.psnr_domain = parse_psnr_domain(sw_domain);
      }
      if (!sw_order.empty()) {
        cfg.cascade_order = parse_cascade_order(sw_order);
      }
      cfg.workers = sw_workers.value_or(cfg.workers);
      if (!sw_out.empty()) {
        cfg.output_dir = sw_out;
      }

      const auto result = run_pipeline(cfg);
      for (const auto &curve : result.curves) {
        for (const auto &p : curve.points) {
          print_point(curve.label, p);
        }
      }
      for (const auto &f : result.failures) {
        std::fprintf(stderr, "failed: %s qp %d: %s\n", f.strategy.c_str(), f.qp,
                     f.message.c_str());
      }
      std::printf("\n%s", bd_table_text(result.bd).c_str());
      if (!cfg.output_dir.empty()) {
        std::printf("reports in %s\n", cfg.output_dir.c_str());
      }
      return result.failures.empty() ? 0 : 2;
    } else if (bd->parsed()) {
      auto curves = parse_rd_curves_csv(read_text(bd_curves));
      for (auto &c : curves) {
        c.sort_by_rate();
      }
      const auto table = report_bd(curves, bd_anchor);
      std::printf("%s", bd_table_text(table).c_str());
      if (!bd_out.empty()) {
        write_text(bd_out, bd_table_csv(table));
      }
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "lfc: %s\n", e.what());
    return 1;
  }
  return 0;
}
