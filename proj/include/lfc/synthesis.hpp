#pragma once

#include <lfc/lightfield.hpp>
#include <lfc/sampling.hpp>

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lfc {

/// Interpolates a view at fraction `alpha` in (0, 1) between two views on
/// the same angular line.
class Synthesizer {
public:
  virtual ~Synthesizer() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual RgbView synthesize(const RgbView &a, const RgbView &b,
                                           double alpha) const = 0;
};

/// Pixel-domain blend (1 - alpha) * a + alpha * b, no disparity compensation.
RgbView bilinear_synthesize(const RgbView &a, const RgbView &b, double alpha);

class BilinearSynthesizer final : public Synthesizer {
public:
  [[nodiscard]] std::string name() const override { return "bilinear"; }
  [[nodiscard]] RgbView synthesize(const RgbView &a, const RgbView &b,
                                   double alpha) const override {
    return bilinear_synthesize(a, b, alpha);
  }
};

/// Delegates to a command. The template may use {a}, {b} (input PNG paths),
/// {alpha} and {output} (PNG path the command must write).
class ExternalSynthesizer final : public Synthesizer {
public:
  explicit ExternalSynthesizer(std::string command_template,
                               std::filesystem::path work_root =
                                   std::filesystem::temp_directory_path());

  [[nodiscard]] std::string name() const override { return "external:" + command_; }
  [[nodiscard]] RgbView synthesize(const RgbView &a, const RgbView &b,
                                   double alpha) const override;

private:
  std::string command_;
  std::filesystem::path work_root_;
};

/// "bilinear" or "external:<command template>".
std::unique_ptr<Synthesizer> make_synthesizer(std::string_view spec);

/// Which direction runs first inside each 2x level of a corners pattern.
enum class CascadeOrder {
  HorizontalFirst, ///< fill missing columns of retained rows, then missing rows
  VerticalFirst,   ///< fill missing rows of retained columns, then missing columns
};

CascadeOrder parse_cascade_order(std::string_view name);
std::string_view to_string(CascadeOrder order);

/// Horizontal steps interpolate between left/right neighbours (filling
/// columns); vertical steps between upper/lower neighbours (filling rows).
enum class Direction { Horizontal, Vertical };

struct SynthesisTarget {
  ViewIndex target;
  ViewIndex first;  ///< upper or left source
  ViewIndex second; ///< lower or right source
  double alpha{0.5};
};

struct SynthesisStep {
  Direction direction{};
  int level{}; ///< 1-based 2x level; a 4x pattern has two levels
  std::vector<SynthesisTarget> targets;
};

struct ReconstructionPlan {
  std::vector<SynthesisStep> steps;

  [[nodiscard]] std::size_t target_count() const noexcept;
};

/// Cascade of 2x interpolations inverting `pattern`. Level 1 of a 4x pattern
/// restores the matching 2x pattern's grid; level 2 fills the rest. Corners
/// levels contain one horizontal and one vertical step in `order`.
ReconstructionPlan build_plan(const SamplingPattern &pattern, int grid_rows, int grid_cols,
                              CascadeOrder order = CascadeOrder::HorizontalFirst);

/// Full light field: retained views copied unmodified, missing views filled
/// by executing the plan step by step.
LightField reconstruct(const SampledLightField &slf, const Synthesizer &synth,
                       CascadeOrder order = CascadeOrder::HorizontalFirst);

} // namespace lfc
