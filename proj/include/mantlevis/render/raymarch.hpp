#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "mantlevis/core/sampling.hpp"
#include "mantlevis/preprocess/lod.hpp"
#include "mantlevis/render/render_state.hpp"

namespace mantlevis::render {

inline constexpr double kInfiniteDepth = std::numeric_limits<double>::infinity();
inline constexpr double kDepthOpacity = 0.5;
inline constexpr double kTerminationOpacity = 0.995;

struct ShellSpan {
  double t_near;
  double t_far;
};

/// Parametric spans (t >= 0, sorted) where the ray lies between the two
/// spheres. `direction` must be unit length.
struct ShellHits {
  std::array<ShellSpan, 2> spans{};
  int count{0};
};

ShellHits intersect_shell(const Eigen::Vector3d& origin, const Eigen::Vector3d& direction,
                          double r_inner, double r_outer);

/// Front-to-back accumulation with exponential extinction.
class Compositor {
 public:
  /// `extinction` is sigma0 * a, `step` in km. Returns the opacity used.
  double add(const Rgba& color, double extinction, double step, double t);

  double alpha() const { return 1.0 - transmittance_; }
  double depth() const { return depth_; }
  /// Premultiplied RGB and alpha.
  Eigen::Vector4d rgba() const { return {color_.x(), color_.y(), color_.z(), alpha()}; }
  bool saturated() const { return alpha() >= kTerminationOpacity; }

 private:
  Eigen::Vector3d color_{Eigen::Vector3d::Zero()};
  double transmittance_{1.0};
  double depth_{kInfiniteDepth};
};

struct MarchSample {
  Eigen::Vector3d position;
  double t;
  Rgba color;
  double opacity;
};

using SampleObserver = std::function<void(const MarchSample&)>;

struct MarchResult {
  Eigen::Vector4d rgba{Eigen::Vector4d::Zero()};  // premultiplied
  double depth{kInfiniteDepth};
};

/// Binds a render state to one pyramid level: resolves the brush and color
/// variable to fields once, then marches any number of rays.
class RayMarcher {
 public:
  /// Throws UnknownVariable when the brush or transfer function names a
  /// variable that is neither stored nor a spatial axis.
  RayMarcher(const RenderState& state, const VolumeTimeStep& volume, double step_km,
             bool early_termination = true, const SampleObserver* observer = nullptr);

  MarchResult march(const Ray& ray, double jitter) const;
  double step() const { return step_; }

 private:
  enum class Source { field, x, y, z, depth };
  struct Term {
    Source source;
    const ScalarField* field;
    brush::Interval interval;
  };

  double value(const Term& term, const Stencil& s, const Eigen::Vector3d& p) const;

  const RenderState& state_;
  const ShellGrid& grid_;
  double step_;
  bool early_termination_;
  const SampleObserver* observer_;
  std::vector<Term> terms_;
  Term color_;
};

/// Half the radial node spacing of the given level.
double default_step(const VolumeTimeStep& volume);

MarchResult march_ray(const RenderState& state, const preprocess::LodPyramid& pyramid,
                      const Ray& ray, double step_km, double jitter, std::size_t level = 0);

}  // namespace mantlevis::render
