#include <doctest.h>

#include <lfc/error.hpp>
#include <lfc/pipeline.hpp>
#include <lfc/process.hpp>
#include <lfc/report.hpp>

#include <cmath>

using namespace lfc;
namespace fs = std::filesystem;

namespace {

SyntheticSpec small_texture(double disparity = 1.0) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::ShiftedTexture;
  spec.grid_rows = spec.grid_cols = 9;
  spec.view_width = spec.view_height = 32;
  spec.disparity = disparity;
  return spec;
}

const RdCurve &find(const PipelineResult &r, const std::string &label) {
  for (const auto &c : r.curves) {
    if (c.label == label) {
      return c;
    }
  }
  throw Error("no curve " + label);
}

} // namespace

TEST_CASE("synthetic generator") {
  SyntheticSpec ramp;
  ramp.kind = SyntheticKind::Ramp;
  ramp.ramp_row_step = 10;
  ramp.ramp_col_step = 0;
  ramp.view_width = ramp.view_height = 4;
  CHECK(gen_synthetic(ramp).view_at({3, 7}) == RgbView(4, 4, 30));

  auto flat = small_texture(0.0);
  const auto still = gen_synthetic(flat);
  for (const auto &v : still.views()) {
    CHECK(v == still.views().front());
  }
  const auto a = gen_synthetic(small_texture());
  CHECK(a == gen_synthetic(small_texture()));
  CHECK_FALSE(a.view_at({0, 0}) == a.view_at({0, 1}));
  // integer disparity on a tileable texture is a cyclic shift
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      CHECK(a.view_at({2, 3}).at(1, x, y) == a.view_at({2, 2}).at(1, (x + 1) % 32, y));
    }
  }
  auto other_seed = small_texture();
  other_seed.seed = 2;
  CHECK_FALSE(gen_synthetic(other_seed) == a);
  CHECK(parse_synthetic_kind("shifted-texture") == SyntheticKind::ShiftedTexture);
  CHECK_THROWS_AS(parse_synthetic_kind("noise"), Error);
}

TEST_CASE("anchor at qp 0 is lossless") {
  PipelineConfig cfg;
  cfg.synthetic = small_texture();
  cfg.strategies = {"full"};
  cfg.qps = {0};
  const auto r = run_pipeline(cfg);
  REQUIRE(r.curves.size() == 1);
  REQUIRE(r.curves[0].points.size() == 1);
  const auto &p = r.curves[0].points[0];
  CHECK(p.psnr_per_view == std::vector<double>(81, 100.0));
  CHECK(p.psnr_std == 0.0);
  CHECK(r.bd.rows.empty());
}

TEST_CASE("ramp survives every strategy at qp 0") {
  SyntheticSpec ramp;
  ramp.kind = SyntheticKind::Ramp;
  ramp.view_width = ramp.view_height = 16;
  PipelineConfig cfg;
  cfg.synthetic = ramp;
  cfg.qps = {0};
  const auto lf = gen_synthetic(ramp);
  BilinearSynthesizer synth;
  for (const auto &p : all_patterns()) {
    const auto cell = run_cell(lf, p, 0, cfg, synth);
    CHECK(cell.reconstructed == lf);
    CHECK(cell.point.psnr_mean == 100.0);
  }
}

TEST_CASE("two strategies over six QPs give one BD row") {
  PipelineConfig cfg;
  cfg.synthetic = small_texture();
  cfg.strategies = {"full", "corners_2x"};
  cfg.workers = 3;
  const auto r = run_pipeline(cfg);
  REQUIRE(r.curves.size() == 2);
  CHECK(r.curves[0].points.size() == 6);
  CHECK(r.curves[1].points.size() == 6);
  CHECK(r.failures.empty());
  REQUIRE(r.bd.rows.size() == 1);
  CHECK(r.bd.rows[0].strategy == "corners_2x");
  CHECK(std::isfinite(r.bd.rows[0].result.bd_psnr));
  for (const auto &c : r.curves) {
    CHECK_NOTHROW(c.validate());
  }
}

TEST_CASE("no anchor leaves the BD table empty with a note") {
  PipelineConfig cfg;
  cfg.synthetic = small_texture();
  cfg.strategies = {"corners_4x"};
  const auto r = run_pipeline(cfg);
  CHECK(r.curves.size() == 1);
  CHECK(r.bd.rows.empty());
  REQUIRE(r.bd.notes.size() == 1);
  CHECK(r.bd.notes[0].find("anchor") != std::string::npos);
}

TEST_CASE("retained views are local maxima of the corners_4x heatmap") {
  const auto lf = gen_synthetic(small_texture());
  PipelineConfig cfg;
  const auto cell = run_cell(lf, {AxisKind::Corners, 4}, 30, cfg, BilinearSynthesizer{});
  const auto &q = cell.point.psnr_per_view;
  for (int r : {0, 4, 8}) {
    for (int c : {0, 4, 8}) {
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nr = r + dr;
          const int nc = c + dc;
          if ((dr != 0 || dc != 0) && nr >= 0 && nr < 9 && nc >= 0 && nc < 9) {
            CHECK(q[r * 9 + c] > q[nr * 9 + nc]);
          }
        }
      }
    }
  }
}

TEST_CASE("failing cells are isolated") {
  PipelineConfig cfg;
  cfg.synthetic = small_texture();
  cfg.strategies = {"full", "row_2x"};
  cfg.qps = {20, 30};
  cfg.codec.backend = Backend::External;
  cfg.codec.external_encode_command = "test {qp} = 30 && cp {input} {output}";
  cfg.codec.external_decode_command = "cp {input} {output}";
  const auto r = run_pipeline(cfg);
  CHECK(r.failures.size() == 2);
  for (const auto &f : r.failures) {
    CHECK(f.qp == 20);
    CHECK(f.message.find("external encoder failed") != std::string::npos);
  }
  CHECK(find(r, "full").points.size() == 1);
  CHECK(find(r, "row_2x").points.size() == 1);
  CHECK(r.bd.rows.empty());
  CHECK_FALSE(r.bd.notes.empty());
}

TEST_CASE("configuration validation and JSON round trip") {
  PipelineConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), Error); // no input
  cfg.synthetic = small_texture(2.5);
  CHECK_NOTHROW(cfg.validate());
  cfg.strategies = {};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.strategies = {"diagonal_2x"};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.strategies = {"full"};
  cfg.qps = {};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.qps = {60};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.qps = {22, 37};
  cfg.psnr_domain = PsnrDomain::RGB;
  cfg.cascade_order = CascadeOrder::VerticalFirst;
  cfg.workers = 2;

  const auto back = PipelineConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
  CHECK(back.synthetic->disparity == 2.5);
  CHECK(back.qps == std::vector<int>{22, 37});
  CHECK(back.cascade_order == CascadeOrder::VerticalFirst);

  const auto partial = PipelineConfig::from_json(nlohmann::json{{"qps", {25}}});
  CHECK(partial.strategies.size() == 7);
  CHECK(partial.qps == std::vector<int>{25});
  CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json{{"qps", "many"}}), Error);
}

TEST_CASE("report_bd") {
  RdCurve anchor{"full", {}};
  RdCurve half{"corners_4x", {}};
  for (int i = 0; i < 5; ++i) {
    RdPoint p;
    p.bpp = 0.1 * (i + 1);
    p.psnr_mean = 30.0 + 2.0 * i - 0.1 * i * i;
    anchor.points.push_back(p);
    p.bpp *= 0.5;
    half.points.push_back(p);
  }
  const auto table = report_bd({anchor, half});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].result.bd_rate == doctest::Approx(-50.0).epsilon(1e-12));
  const auto self = report_bd({anchor}, "full");
  CHECK(self.rows.empty());
  const auto vs_self = report_bd({anchor, RdCurve{"copy", anchor.points}});
  CHECK(std::abs(vs_self.rows[0].result.bd_psnr) < 1e-12);
  CHECK(std::abs(vs_self.rows[0].result.bd_rate) < 1e-12);

  RdCurve three{"row_2x", {anchor.points.begin(), anchor.points.begin() + 3}};
  CHECK_THROWS_WITH_AS(report_bd({anchor, three}), doctest::Contains("insufficient points"), Error);
  CHECK_THROWS_AS(report_bd({half}), Error);
}

TEST_CASE("reports are written and CSV round trips") {
  TempDir dir("lfc-report");
  PipelineConfig cfg;
  cfg.synthetic = small_texture();
  cfg.strategies = {"full", "row_4x", "corners_4x"};
  cfg.qps = {20, 30, 40, 45};
  cfg.output_dir = dir.path();
  const auto r = run_pipeline(cfg);

  for (const char *name : {"rd_curves.csv", "rd_curves.json", "bd_table.csv", "config.json",
                           "heatmap_corners_4x_30.json", "heatmap_full_45.json"}) {
    CHECK(fs::exists(dir.path() / name));
  }
  const auto parsed = parse_rd_curves_csv(read_text(dir.path() / "rd_curves.csv"));
  REQUIRE(parsed.size() == r.curves.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].label == r.curves[i].label);
    REQUIRE(parsed[i].points.size() == r.curves[i].points.size());
    for (std::size_t k = 0; k < parsed[i].points.size(); ++k) {
      const auto &a = parsed[i].points[k];
      const auto &b = r.curves[i].points[k];
      CHECK(a.qp == b.qp);
      CHECK(a.bpp == b.bpp);
      CHECK(a.psnr_mean == b.psnr_mean);
      CHECK(a.psnr_std == b.psnr_std);
      CHECK(a.ssim_mean == b.ssim_mean);
    }
  }
  CHECK(rd_curves_csv(parsed) == read_text(dir.path() / "rd_curves.csv"));

  const auto heat = nlohmann::json::parse(read_text(dir.path() / "heatmap_corners_4x_30.json"));
  CHECK(heat.at("psnr_per_view").size() == 9);
  CHECK(heat.at("retained")[4][4] == true);
  CHECK(heat.at("retained")[4][3] == false);
  CHECK(heat.at("config").at("qps").size() == 4);

  const auto bd = read_text(dir.path() / "bd_table.csv");
  CHECK(bd.find("row_4x,full,") != std::string::npos);
  CHECK(bd_table_text(r.bd).find("corners_4x") != std::string::npos);

  CHECK_THROWS_AS(parse_rd_curves_csv("bogus\n"), Error);
  CHECK_THROWS_AS(parse_rd_curves_csv("strategy,qp,bpp,psnr_mean,psnr_std,ssim_mean\nfull,1,x,2,3,4\n"),
                  Error);
}
