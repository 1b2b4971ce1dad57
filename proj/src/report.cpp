#include <lfc/report.hpp>

#include <lfc/error.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lfc {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

double parse_double(const std::string &s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception &) {
    throw Error("rd csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

json grid(const std::vector<double> &values, int rows, int cols) {
  json out = json::array();
  for (int r = 0; r < rows; ++r) {
    json row = json::array();
    for (int c = 0; c < cols; ++c) {
      row.push_back(values[static_cast<std::size_t>(r) * cols + c]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

constexpr std::string_view kCsvHeader = "strategy,qp,bpp,psnr_mean,psnr_std,ssim_mean";

} // namespace

std::string rd_curves_csv(const std::vector<RdCurve> &curves) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto &curve : curves) {
    for (const auto &p : curve.points) {
      out += curve.label + "," + std::to_string(p.qp) + "," + exact(p.bpp) + "," +
             exact(p.psnr_mean) + "," + exact(p.psnr_std) + "," + exact(p.ssim_mean) + "\n";
    }
  }
  return out;
}

std::vector<RdCurve> parse_rd_curves_csv(std::string_view text) {
  std::vector<RdCurve> curves;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.empty()) {
      continue;
    }
    if (line_no == 1) {
      if (line != kCsvHeader) {
        throw Error("rd csv: unexpected header '" + std::string(line) + "'");
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw Error("rd csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    RdPoint p;
    p.qp = static_cast<int>(parse_double(fields[1], line_no));
    p.bpp = parse_double(fields[2], line_no);
    p.psnr_mean = parse_double(fields[3], line_no);
    p.psnr_std = parse_double(fields[4], line_no);
    p.ssim_mean = parse_double(fields[5], line_no);
    auto it = std::find_if(curves.begin(), curves.end(),
                           [&](const RdCurve &c) { return c.label == fields[0]; });
    if (it == curves.end()) {
      curves.push_back({fields[0], {}});
      it = std::prev(curves.end());
    }
    it->points.push_back(std::move(p));
  }
  return curves;
}

json to_json(const RdPoint &p) {
  return {{"qp", p.qp},
          {"bpp", p.bpp},
          {"psnr_mean", p.psnr_mean},
          {"psnr_std", p.psnr_std},
          {"ssim_mean", p.ssim_mean},
          {"psnr_per_view", grid(p.psnr_per_view, p.grid_rows, p.grid_cols)},
          {"ssim_per_view", grid(p.ssim_per_view, p.grid_rows, p.grid_cols)}};
}

json to_json(const RdCurve &curve) {
  json points = json::array();
  for (const auto &p : curve.points) {
    points.push_back(to_json(p));
  }
  return {{"strategy", curve.label}, {"points", std::move(points)}};
}

json heatmap_json(const std::string &strategy, const RdPoint &point, const SamplingMask &mask) {
  json retained = json::array();
  for (int r = 0; r < mask.grid_rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < mask.grid_cols(); ++c) {
      row.push_back(mask.retained({r, c}));
    }
    retained.push_back(std::move(row));
  }
  auto j = to_json(point);
  j["strategy"] = strategy;
  j["grid_rows"] = point.grid_rows;
  j["grid_cols"] = point.grid_cols;
  j["retained"] = std::move(retained);
  return j;
}

std::string bd_table_csv(const BdTable &table) {
  std::string out = "strategy,anchor,bd_psnr_db,bd_rate_percent\n";
  for (const auto &row : table.rows) {
    out += row.strategy + "," + table.anchor + "," + exact(row.result.bd_psnr) + "," +
           exact(row.result.bd_rate) + "\n";
  }
  return out;
}

std::string bd_table_text(const BdTable &table) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "strategy" << std::right << std::setw(14) << "BD-PSNR [dB]"
      << std::setw(14) << "BD-Rate [%]" << "\n";
  for (const auto &row : table.rows) {
    out << std::left << std::setw(14) << row.strategy << std::right << std::fixed
        << std::setprecision(3) << std::setw(14) << row.result.bd_psnr << std::setprecision(2)
        << std::setw(14) << row.result.bd_rate << "\n";
  }
  if (table.rows.empty()) {
    out << "(no rows)\n";
  }
  for (const auto &note : table.notes) {
    out << "note: " << note << "\n";
  }
  out << "anchor: " << table.anchor << "\n";
  return out.str();
}

void write_text(const fs::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw Error("cannot write " + path.string());
  }
}

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_reports(const fs::path &dir, const PipelineConfig &cfg, const PipelineResult &result) {
  fs::create_directories(dir);
  const auto config = cfg.to_json();
  write_text(dir / "config.json", config.dump(2) + "\n");
  write_text(dir / "rd_curves.csv", rd_curves_csv(result.curves));
  write_text(dir / "bd_table.csv", bd_table_csv(result.bd));

  json curves = json::array();
  for (const auto &curve : result.curves) {
    curves.push_back(to_json(curve));
    const auto pattern = SamplingPattern::parse(curve.label);
    for (const auto &p : curve.points) {
      const auto mask = make_mask(pattern, p.grid_rows, p.grid_cols);
      auto heatmap = heatmap_json(curve.label, p, mask);
      heatmap["config"] = config;
      write_text(dir / ("heatmap_" + curve.label + "_" + std::to_string(p.qp) + ".json"),
                 heatmap.dump(2) + "\n");
    }
  }
  json failures = json::array();
  for (const auto &f : result.failures) {
    failures.push_back({{"strategy", f.strategy}, {"qp", f.qp}, {"error", f.message}});
  }
  json bd = json::array();
  for (const auto &row : result.bd.rows) {
    bd.push_back({{"strategy", row.strategy},
                  {"bd_psnr_db", row.result.bd_psnr},
                  {"bd_rate_percent", row.result.bd_rate}});
  }
  const json summary{{"config", config},
                     {"curves", std::move(curves)},
                     {"bd", {{"anchor", result.bd.anchor}, {"rows", std::move(bd)}, {"notes", result.bd.notes}}},
                     {"failures", std::move(failures)}};
  write_text(dir / "rd_curves.json", summary.dump(2) + "\n");
}

} // namespace lfc
