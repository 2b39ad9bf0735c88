#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "mantlevis/core/field.hpp"

namespace mantlevis::pathlines {

/// Time-varying velocity of an ordered volume series: spatial trilinear
/// samples blended linearly between the two bracketing steps.
class SeriesFlow {
 public:
  /// Steps must share one grid and have strictly increasing times.
  explicit SeriesFlow(std::span<const VolumeTimeStep> steps);

  double t_begin() const { return steps_.front().time(); }
  double t_end() const { return steps_.back().time(); }
  const ShellGrid& grid() const { return steps_.front().grid(); }
  std::span<const VolumeTimeStep> steps() const { return steps_; }

  /// nullopt is OUTSIDE. Throws TimeOutOfRange; MissingVelocity if a needed
  /// step has no velocity.
  std::optional<Eigen::Vector3d> velocity(const Eigen::Vector3d& p, double t) const;

  /// Time-interpolated scalar sample; throws UnknownVariable.
  std::optional<double> scalar(const std::string& name, const Eigen::Vector3d& p, double t) const;

 private:
  struct Bracket {
    std::size_t lo;
    std::size_t hi;
    double w;  // weight of hi
  };
  Bracket bracket(double t) const;

  std::span<const VolumeTimeStep> steps_;
};

/// Closed-form rotation about +z with rate `omega` (rad/Myr), defined inside a
/// spherical shell; used to verify the integrator.
struct RigidRotationFlow {
  double omega{0.0625};
  double r_inner{kCoreMantleBoundaryKm};
  double r_outer{kEarthRadiusKm};
  double begin{0.0};
  double end{1e9};

  double t_begin() const { return begin; }
  double t_end() const { return end; }

  std::optional<Eigen::Vector3d> velocity(const Eigen::Vector3d& p, double /*t*/) const {
    const double r = p.norm();
    if (r < r_inner || r > r_outer) return std::nullopt;
    return Eigen::Vector3d(-omega * p.y(), omega * p.x(), 0.0);
  }

  /// Exact position at time t of a particle at p0 at time t0.
  Eigen::Vector3d solution(const Eigen::Vector3d& p0, double t0, double t) const {
    const double a = omega * (t - t0);
    return {std::cos(a) * p0.x() - std::sin(a) * p0.y(), std::sin(a) * p0.x() + std::cos(a) * p0.y(),
            p0.z()};
  }
};

/// Free-function form of SeriesFlow::velocity.
std::optional<Eigen::Vector3d> velocity_at(std::span<const VolumeTimeStep> series,
                                           const Eigen::Vector3d& p, double t);

}  // namespace mantlevis::pathlines
