#include "mantlevis/render/raymarch.hpp"

#include <algorithm>
#include <cmath>

#include "mantlevis/core/error.hpp"

namespace mantlevis::render {

ShellHits intersect_shell(const Eigen::Vector3d& origin, const Eigen::Vector3d& direction,
                          double r_inner, double r_outer) {
  ShellHits hits;
  const double b = origin.dot(direction);
  const double oo = origin.squaredNorm();
  const double disc = b * b - (oo - r_outer * r_outer);
  if (!(disc > 0.0)) return hits;
  const double root = std::sqrt(disc);
  const double t0 = std::max(-b - root, 0.0);
  const double t1 = -b + root;
  if (!(t1 > t0)) return hits;

  auto push = [&](double a, double c) {
    if (c > a) hits.spans[std::size_t(hits.count++)] = {a, c};
  };
  const double disc_in = b * b - (oo - r_inner * r_inner);
  if (!(disc_in > 0.0)) {
    push(t0, t1);
    return hits;
  }
  const double root_in = std::sqrt(disc_in);
  const double c0 = -b - root_in;
  const double c1 = -b + root_in;
  push(t0, std::min(t1, c0));
  push(std::max(t0, c1), t1);
  return hits;
}

double Compositor::add(const Rgba& color, double extinction, double step, double t) {
  const double a = 1.0 - std::exp(-extinction * step);
  color_ += (transmittance_ * a) * color.head<3>().cast<double>();
  transmittance_ *= 1.0 - a;
  if (depth_ == kInfiniteDepth && alpha() >= kDepthOpacity) depth_ = t;
  return a;
}

double default_step(const VolumeTimeStep& volume) { return 0.5 * volume.grid().radial_spacing(); }

RayMarcher::RayMarcher(const RenderState& state, const VolumeTimeStep& volume, double step_km,
                       bool early_termination, const SampleObserver* observer)
    : state_(state),
      grid_(volume.grid()),
      step_(step_km),
      early_termination_(early_termination),
      observer_(observer) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  auto resolve = [&](const std::string& name, brush::Interval iv) -> Term {
    if (name == "x") return {Source::x, nullptr, iv};
    if (name == "y") return {Source::y, nullptr, iv};
    if (name == "z") return {Source::z, nullptr, iv};
    if (name == "depth") return {Source::depth, nullptr, iv};
    if (const ScalarField* f = volume.find_field(name)) return {Source::field, f, iv};
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
  };
  for (const auto& [name, iv] : state.brush().entries()) terms_.push_back(resolve(name, iv));
  color_ = resolve(state.transfer_function().variable(), {});
}

double RayMarcher::value(const Term& term, const Stencil& s, const Eigen::Vector3d& p) const {
  switch (term.source) {
    case Source::field: return s.apply(*term.field);
    case Source::x: return p.x();
    case Source::y: return p.y();
    case Source::z: return p.z();
    case Source::depth: return grid_.r_outer - p.norm();
  }
  return 0.0;
}

MarchResult RayMarcher::march(const Ray& ray, double jitter) const {
  const TransferFunction& tf = state_.transfer_function();
  Compositor comp;
  const ShellHits hits = intersect_shell(ray.origin, ray.direction, grid_.r_inner, grid_.r_outer);
  for (int h = 0; h < hits.count; ++h) {
    const ShellSpan span = hits.spans[std::size_t(h)];
    for (std::size_t k = 0;; ++k) {
      const double t = span.t_near + (double(k) + jitter) * step_;
      if (!(t < span.t_far)) break;
      const Eigen::Vector3d p = ray.origin + t * ray.direction;
      const std::optional<Stencil> s = locate(grid_, p);
      if (!s) continue;
      bool accepted = true;
      for (const Term& term : terms_) {
        if (!term.interval.contains(value(term, *s, p))) {
          accepted = false;
          break;
        }
      }
      if (!accepted) continue;
      const Rgba c = tf.lookup(value(color_, *s, p));
      const double a = comp.add(c, tf.opacity_scale() * double(c[3]), step_, t);
      if (observer_) (*observer_)({p, t, c, a});
      if (early_termination_ && comp.saturated()) return {comp.rgba(), comp.depth()};
    }
  }
  return {comp.rgba(), comp.depth()};
}

MarchResult march_ray(const RenderState& state, const preprocess::LodPyramid& pyramid,
                      const Ray& ray, double step_km, double jitter, std::size_t level) {
  const RayMarcher marcher(state, pyramid.level(std::min(level, pyramid.level_count() - 1)), step_km,
                           state.early_termination());
  return marcher.march(ray, jitter);
}

}  // namespace mantlevis::render
