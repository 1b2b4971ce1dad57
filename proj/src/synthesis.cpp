#include <lfc/synthesis.hpp>

#include <lfc/color.hpp>
#include <lfc/error.hpp>
#include <lfc/image_io.hpp>
#include <lfc/process.hpp>

#include <cmath>
#include <cstdio>
#include <map>

namespace lfc {
namespace fs = std::filesystem;

RgbView bilinear_synthesize(const RgbView &a, const RgbView &b, double alpha) {
  if (!a.same_shape(b)) {
    throw Error("bilinear synthesis needs views of equal size");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error("interpolation position must lie strictly between the source views");
  }
  RgbView out(a.width(), a.height());
  for (int c = 0; c < RgbView::channels; ++c) {
    const auto &pa = a.plane(c);
    const auto &pb = b.plane(c);
    auto &po = out.plane(c);
    for (std::size_t i = 0; i < po.size(); ++i) {
      po[i] = clamp_round((1.0 - alpha) * pa[i] + alpha * pb[i]);
    }
  }
  return out;
}

ExternalSynthesizer::ExternalSynthesizer(std::string command_template, fs::path work_root)
    : command_{std::move(command_template)}, work_root_{std::move(work_root)} {
  if (command_.empty()) {
    throw Error("external synthesizer needs a command template");
  }
}

RgbView ExternalSynthesizer::synthesize(const RgbView &a, const RgbView &b, double alpha) const {
  if (!a.same_shape(b)) {
    throw Error("synthesis needs views of equal size");
  }
  TempDir dir("lfc-synth", work_root_);
  const auto pa = dir.path() / "a.png";
  const auto pb = dir.path() / "b.png";
  const auto out = dir.path() / "out.png";
  write_image(pa, a);
  write_image(pb, b);
  char alpha_text[32];
  std::snprintf(alpha_text, sizeof alpha_text, "%.17g", alpha);
  const auto command = expand_template(
      command_, {{"a", pa.string()}, {"b", pb.string()}, {"alpha", alpha_text}, {"output", out.string()}});
  const auto result = run_shell(command, dir.path() / "synth.log");
  if (result.exit_code != 0) {
    throw ExternalToolError("external synthesizer failed (exit " +
                            std::to_string(result.exit_code) + "): " + command + "\n" +
                            result.output);
  }
  if (!fs::exists(out)) {
    throw ExternalToolError("external synthesizer wrote no output: " + command);
  }
  auto view = read_image(out);
  if (!view.same_shape(a)) {
    throw ExternalToolError("external synthesizer changed the view size");
  }
  return view;
}

std::unique_ptr<Synthesizer> make_synthesizer(std::string_view spec) {
  if (spec == "bilinear") {
    return std::make_unique<BilinearSynthesizer>();
  }
  constexpr std::string_view prefix = "external:";
  if (spec.starts_with(prefix)) {
    return std::make_unique<ExternalSynthesizer>(std::string(spec.substr(prefix.size())));
  }
  throw Error("unknown synthesizer '" + std::string(spec) +
              "' (expected bilinear or external:<command>)");
}

CascadeOrder parse_cascade_order(std::string_view name) {
  if (name == "horizontal-first") {
    return CascadeOrder::HorizontalFirst;
  }
  if (name == "vertical-first") {
    return CascadeOrder::VerticalFirst;
  }
  throw Error("unknown cascade order '" + std::string(name) +
              "' (expected horizontal-first|vertical-first)");
}

std::string_view to_string(CascadeOrder order) {
  return order == CascadeOrder::HorizontalFirst ? "horizontal-first" : "vertical-first";
}

std::size_t ReconstructionPlan::target_count() const noexcept {
  std::size_t n = 0;
  for (const auto &s : steps) {
    n += s.targets.size();
  }
  return n;
}

namespace {

// Targets at rows/cols selected by predicates, sources offset by +-half
// along the step direction.
template <typename RowPred, typename ColPred>
SynthesisStep make_step(Direction direction, int level, int half, int rows, int cols,
                        RowPred row_pred, ColPred col_pred) {
  SynthesisStep step{direction, level, {}};
  for (int r = 0; r < rows; ++r) {
    if (!row_pred(r)) {
      continue;
    }
    for (int c = 0; c < cols; ++c) {
      if (!col_pred(c)) {
        continue;
      }
      if (direction == Direction::Vertical) {
        step.targets.push_back({{r, c}, {r - half, c}, {r + half, c}, 0.5});
      } else {
        step.targets.push_back({{r, c}, {r, c - half}, {r, c + half}, 0.5});
      }
    }
  }
  return step;
}

} // namespace

ReconstructionPlan build_plan(const SamplingPattern &pattern, int grid_rows, int grid_cols,
                              CascadeOrder order) {
  // validates the grid against the pattern
  (void)make_mask(pattern, grid_rows, grid_cols);

  ReconstructionPlan plan;
  if (pattern.kind() == AxisKind::Full) {
    return plan;
  }
  const auto any = [](int) { return true; };
  int level = 1;
  for (int spacing = pattern.factor(); spacing >= 2; spacing /= 2, ++level) {
    const int half = spacing / 2;
    const auto on_grid = [spacing](int i) { return i % spacing == 0; };
    const auto between = [spacing, half](int i) { return i % spacing == half; };
    const auto on_finer = [half](int i) { return i % half == 0; };

    switch (pattern.kind()) {
    case AxisKind::Row:
      plan.steps.push_back(
          make_step(Direction::Vertical, level, half, grid_rows, grid_cols, between, any));
      break;
    case AxisKind::Col:
      plan.steps.push_back(
          make_step(Direction::Horizontal, level, half, grid_rows, grid_cols, any, between));
      break;
    case AxisKind::Corners:
      if (order == CascadeOrder::HorizontalFirst) {
        plan.steps.push_back(make_step(Direction::Horizontal, level, half, grid_rows, grid_cols,
                                       on_grid, between));
        plan.steps.push_back(make_step(Direction::Vertical, level, half, grid_rows, grid_cols,
                                       between, on_finer));
      } else {
        plan.steps.push_back(make_step(Direction::Vertical, level, half, grid_rows, grid_cols,
                                       between, on_grid));
        plan.steps.push_back(make_step(Direction::Horizontal, level, half, grid_rows, grid_cols,
                                       on_finer, between));
      }
      break;
    case AxisKind::Full:
      break;
    }
  }
  return plan;
}

LightField reconstruct(const SampledLightField &slf, const Synthesizer &synth,
                       CascadeOrder order) {
  slf.validate();
  const auto expected_mask = make_mask(slf.pattern, slf.grid_rows(), slf.grid_cols());
  if (!(expected_mask == slf.mask)) {
    throw Error("sampled light field mask does not match pattern " + slf.pattern.name());
  }

  std::map<ViewIndex, RgbView> views = slf.views;
  const auto plan = build_plan(slf.pattern, slf.grid_rows(), slf.grid_cols(), order);
  for (const auto &step : plan.steps) {
    // all targets of a step read only views available before the step
    std::vector<std::pair<ViewIndex, RgbView>> produced;
    produced.reserve(step.targets.size());
    for (const auto &t : step.targets) {
      const auto a = views.find(t.first);
      const auto b = views.find(t.second);
      if (a == views.end() || b == views.end()) {
        throw Error("reconstruction plan reads unavailable view for target " + to_string(t.target));
      }
      auto out = synth.synthesize(a->second, b->second, t.alpha);
      if (!out.same_shape(a->second)) {
        throw Error("synthesizer " + synth.name() + " changed the view size");
      }
      produced.emplace_back(t.target, std::move(out));
    }
    for (auto &[idx, view] : produced) {
      views.insert_or_assign(idx, std::move(view));
    }
  }

  std::vector<RgbView> dense;
  dense.reserve(static_cast<std::size_t>(slf.grid_rows()) * slf.grid_cols());
  for (int r = 0; r < slf.grid_rows(); ++r) {
    for (int c = 0; c < slf.grid_cols(); ++c) {
      const auto it = views.find({r, c});
      if (it == views.end()) {
        throw Error("reconstruction left view " + to_string(ViewIndex{r, c}) + " empty");
      }
      dense.push_back(std::move(it->second));
    }
  }
  return LightField(slf.grid_rows(), slf.grid_cols(), std::move(dense));
}

} // namespace lfc
