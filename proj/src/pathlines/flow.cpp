#include "mantlevis/pathlines/flow.hpp"

#include <algorithm>

#include "mantlevis/core/error.hpp"
#include "mantlevis/core/sampling.hpp"

namespace mantlevis::pathlines {

SeriesFlow::SeriesFlow(std::span<const VolumeTimeStep> steps) : steps_(steps) {
  if (steps_.empty()) throw Error(ErrorCode::InvalidArgument, "flow needs at least one step");
  for (std::size_t i = 1; i < steps_.size(); ++i) {
    if (!(steps_[i].grid() == steps_[0].grid())) {
      throw Error(ErrorCode::InvalidArgument, "series steps must share one grid");
    }
    if (!(steps_[i].time() > steps_[i - 1].time())) {
      throw Error(ErrorCode::InvalidArgument, "series times must increase strictly");
    }
  }
}

SeriesFlow::Bracket SeriesFlow::bracket(double t) const {
  if (!(t >= t_begin() && t <= t_end())) {
    throw Error(ErrorCode::TimeOutOfRange, "time " + std::to_string(t) + " Myr outside [" +
                                               std::to_string(t_begin()) + ", " +
                                               std::to_string(t_end()) + "]");
  }
  const auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                                   [](double value, const VolumeTimeStep& s) { return value < s.time(); });
  std::size_t hi = std::size_t(it - steps_.begin());
  if (hi == steps_.size()) return {hi - 1, hi - 1, 0.0};
  const std::size_t lo = hi - 1;
  const double w = (t - steps_[lo].time()) / (steps_[hi].time() - steps_[lo].time());
  return {lo, hi, w};
}

namespace {

const VectorField& velocity_of(const VolumeTimeStep& step) {
  if (!step.velocity()) {
    throw Error(ErrorCode::MissingVelocity, "step at t=" + std::to_string(step.time()) + " has no velocity");
  }
  return *step.velocity();
}

}  // namespace

std::optional<Eigen::Vector3d> SeriesFlow::velocity(const Eigen::Vector3d& p, double t) const {
  const Bracket b = bracket(t);
  const auto st = locate(grid(), p);
  if (!st) return std::nullopt;
  auto sample = [&](const VectorField& v) {
    return Eigen::Vector3d(st->apply(v.x()), st->apply(v.y()), st->apply(v.z()));
  };
  const Eigen::Vector3d a = sample(velocity_of(steps_[b.lo]));
  if (b.w == 0.0) return a;
  return (1.0 - b.w) * a + b.w * sample(velocity_of(steps_[b.hi]));
}

std::optional<double> SeriesFlow::scalar(const std::string& name, const Eigen::Vector3d& p,
                                         double t) const {
  const Bracket b = bracket(t);
  auto field = [&](std::size_t i) -> const ScalarField& {
    const ScalarField* f = steps_[i].find_field(name);
    if (!f) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
    return *f;
  };
  const auto st = locate(grid(), p);
  if (!st) return std::nullopt;
  const double a = st->apply(field(b.lo));
  if (b.w == 0.0) return a;
  return (1.0 - b.w) * a + b.w * st->apply(field(b.hi));
}

std::optional<Eigen::Vector3d> velocity_at(std::span<const VolumeTimeStep> series,
                                           const Eigen::Vector3d& p, double t) {
  return SeriesFlow(series).velocity(p, t);
}

}  // namespace mantlevis::pathlines
