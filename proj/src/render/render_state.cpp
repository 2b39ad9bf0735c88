#include "mantlevis/render/render_state.hpp"

#include <algorithm>
#include <cmath>

#include "mantlevis/core/error.hpp"

namespace mantlevis::render {

RenderState::RenderState(TransferFunction tf, Camera camera)
    : tf_(std::move(tf)), camera_(std::move(camera)) {
  camera_.validate();
  tf_gen_ = brush::next_generation();
  camera_gen_ = brush::next_generation();
  misc_gen_ = brush::next_generation();
}

std::uint64_t RenderState::generation() const {
  return std::max({brush_.generation(), tf_gen_, camera_gen_, misc_gen_});
}

void RenderState::set_time_step(std::size_t step) {
  time_step_ = step;
  misc_gen_ = brush::next_generation();
}

void RenderState::set_brush(brush::BrushSet brush) {
  // Snapshots already carry their own fresh generation; re-stamp so that
  // re-applying an older snapshot still counts as a change.
  brush_ = brush::BrushSet(brush.entries());
}

void RenderState::set_transfer_function(TransferFunction tf) {
  tf_ = std::move(tf);
  tf_gen_ = brush::next_generation();
}

void RenderState::set_camera(Camera camera) {
  camera.validate();
  camera_ = std::move(camera);
  camera_gen_ = brush::next_generation();
}

void RenderState::set_lod(LodPolicy lod) {
  lod_ = lod;
  misc_gen_ = brush::next_generation();
}

void RenderState::set_pass_budget(std::uint32_t passes) {
  if (passes < 1) throw Error(ErrorCode::InvalidArgument, "pass budget must be at least 1");
  pass_budget_ = passes;
  misc_gen_ = brush::next_generation();
}

void RenderState::set_step_km(std::optional<double> step) {
  if (step && !(*step > 0.0 && std::isfinite(*step))) {
    throw Error(ErrorCode::InvalidArgument, "step must be positive");
  }
  step_km_ = step;
  misc_gen_ = brush::next_generation();
}

void RenderState::set_early_termination(bool on) {
  early_termination_ = on;
  misc_gen_ = brush::next_generation();
}

}  // namespace mantlevis::render
