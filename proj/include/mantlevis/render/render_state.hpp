#pragma once

#include <cstdint>
#include <optional>

#include "mantlevis/brush/brush.hpp"
#include "mantlevis/render/camera.hpp"
#include "mantlevis/render/transfer_function.hpp"

namespace mantlevis::render {

struct LodPolicy {
  /// When set, every pass marches this level (clamped to the pyramid).
  std::optional<std::size_t> forced_level;
  bool operator==(const LodPolicy&) const = default;
};

inline constexpr std::uint32_t kDefaultPassBudget = 16;

/// Everything a pass depends on. Constituents are replaced through the
/// setters, which stamp a fresh generation; generation() is the max.
class RenderState {
 public:
  RenderState(TransferFunction tf, Camera camera);

  std::size_t time_step() const { return time_step_; }
  const brush::BrushSet& brush() const { return brush_; }
  const TransferFunction& transfer_function() const { return tf_; }
  const Camera& camera() const { return camera_; }
  const LodPolicy& lod() const { return lod_; }
  std::uint32_t pass_budget() const { return pass_budget_; }
  /// Extra march step override in km; nullopt selects half the level's radial spacing.
  std::optional<double> step_km() const { return step_km_; }
  bool early_termination() const { return early_termination_; }

  std::uint64_t camera_generation() const { return camera_gen_; }
  std::uint64_t generation() const;

  void set_time_step(std::size_t step);
  void set_brush(brush::BrushSet brush);
  void set_transfer_function(TransferFunction tf);
  void set_camera(Camera camera);
  void set_lod(LodPolicy lod);
  void set_pass_budget(std::uint32_t passes);
  void set_step_km(std::optional<double> step);
  void set_early_termination(bool on);

 private:
  std::size_t time_step_{0};
  brush::BrushSet brush_;
  TransferFunction tf_;
  Camera camera_;
  LodPolicy lod_;
  std::uint32_t pass_budget_{kDefaultPassBudget};
  std::optional<double> step_km_;
  bool early_termination_{true};

  std::uint64_t tf_gen_;
  std::uint64_t camera_gen_;
  std::uint64_t misc_gen_;
};

}  // namespace mantlevis::render
