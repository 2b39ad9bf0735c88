#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mantlevis/core/error.hpp"
#include "mantlevis/pathlines/flow.hpp"
#include "mantlevis/topology/extrema.hpp"

namespace mantlevis::pathlines {

inline constexpr std::size_t kDefaultWindowSteps = 10;
inline constexpr int kDefaultSubsteps = 8;

struct Pathline {
  /// Unknown for lines read back from MPATH.
  std::optional<topology::CriticalPoint> seed;
  std::size_t spawn_step{0};
  std::vector<Eigen::Vector3d> positions;
  std::vector<double> times;
  /// (t - t0) / duration per vertex, in [0, 1].
  std::vector<double> ages;
  std::vector<std::string> scalar_names;
  /// Vertex-major, vertex_count() x scalar_names.size().
  std::vector<float> scalars;

  std::size_t vertex_count() const { return positions.size(); }
  float scalar(std::size_t vertex, std::size_t k) const {
    return scalars[vertex * scalar_names.size() + k];
  }
  /// Value of a sampled scalar or of a spatial axis (x, y, z, depth) at a
  /// vertex; nullopt when the line carries no such variable.
  std::optional<double> value(const std::string& name, std::size_t vertex, double r_outer) const;
};

/// Positions and times of a fixed-step RK4 trace.
struct Trace {
  std::vector<Eigen::Vector3d> positions;
  std::vector<double> times;
  bool left_domain{false};
};

/// Classical RK4 with fixed step `dt` (the last step is shortened to land on
/// t0 + duration). A vertex is recorded after every step; the trace stops
/// before any step whose stage samples, or whose end point, fall OUTSIDE.
template <typename Flow>
Trace integrate(const Flow& flow, const Eigen::Vector3d& seed, double t0, double duration, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(duration >= 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be non-negative");
  const double t1 = t0 + duration;
  if (t0 < flow.t_begin() || t1 > flow.t_end()) {
    throw Error(ErrorCode::TimeOutOfRange, "trace interval leaves the flow's time range");
  }
  auto k = flow.velocity(seed, t0);
  if (!k) throw Error(ErrorCode::SeedOutsideShell, "seed lies outside the shell");

  Trace trace;
  trace.positions.push_back(seed);
  trace.times.push_back(t0);
  const auto steps = std::size_t(std::ceil(duration / dt - 1e-9));
  Eigen::Vector3d p = seed;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + double(i) * dt;
    const double h = i + 1 == steps ? t1 - t : dt;
    if (!(h > 0.0)) break;
    const auto k1 = flow.velocity(p, t);
    if (!k1) { trace.left_domain = true; break; }
    const auto k2 = flow.velocity(p + 0.5 * h * *k1, t + 0.5 * h);
    if (!k2) { trace.left_domain = true; break; }
    const auto k3 = flow.velocity(p + 0.5 * h * *k2, t + 0.5 * h);
    if (!k3) { trace.left_domain = true; break; }
    const double t_next = i + 1 == steps ? t1 : t + h;
    const auto k4 = flow.velocity(p + h * *k3, t_next);
    if (!k4) { trace.left_domain = true; break; }
    const Eigen::Vector3d next = p + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    if (!flow.velocity(next, t_next)) { trace.left_domain = true; break; }
    p = next;
    trace.positions.push_back(p);
    trace.times.push_back(t_next);
  }
  return trace;
}

/// Integrates one line through the series and samples `scalar_names` at every
/// vertex from the time-interpolated fields (empty = every scalar of step 0).
/// Throws TimeOutOfRange, SeedOutsideShell.
Pathline integrate_pathline(std::span<const VolumeTimeStep> series, const Eigen::Vector3d& seed,
                            double t0, double duration, double dt,
                            std::vector<std::string> scalar_names = {});

/// Seeds every step at the strict extrema of `anomaly_variable` and traces each
/// seed forward min(window, remaining) steps with dt = step spacing / substeps.
/// Ordered by (spawn step, seed node).
std::vector<Pathline> generate_pathlines(std::span<const VolumeTimeStep> series,
                                         const std::string& anomaly_variable,
                                         std::size_t window = kDefaultWindowSteps,
                                         int substeps = kDefaultSubsteps);

}  // namespace mantlevis::pathlines
