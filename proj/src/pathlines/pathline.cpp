#include "mantlevis/pathlines/pathline.hpp"

#include <algorithm>

namespace mantlevis::pathlines {

std::optional<double> Pathline::value(const std::string& name, std::size_t vertex,
                                      double r_outer) const {
  const auto it = std::find(scalar_names.begin(), scalar_names.end(), name);
  if (it != scalar_names.end()) return scalar(vertex, std::size_t(it - scalar_names.begin()));
  const Eigen::Vector3d& p = positions[vertex];
  if (name == "x") return p.x();
  if (name == "y") return p.y();
  if (name == "z") return p.z();
  if (name == "depth") return r_outer - p.norm();
  return std::nullopt;
}

Pathline integrate_pathline(std::span<const VolumeTimeStep> series, const Eigen::Vector3d& seed,
                            double t0, double duration, double dt,
                            std::vector<std::string> scalar_names) {
  const SeriesFlow flow(series);
  if (scalar_names.empty()) {
    for (const auto& [name, field] : series.front().scalars()) scalar_names.push_back(name);
  }
  Trace trace = integrate(flow, seed, t0, duration, dt);

  Pathline line;
  line.positions = std::move(trace.positions);
  line.times = std::move(trace.times);
  line.scalar_names = std::move(scalar_names);
  line.ages.reserve(line.times.size());
  for (double t : line.times) line.ages.push_back(duration > 0.0 ? (t - t0) / duration : 0.0);
  line.scalars.reserve(line.vertex_count() * line.scalar_names.size());
  for (std::size_t v = 0; v < line.vertex_count(); ++v) {
    for (const auto& name : line.scalar_names) {
      // Vertices are inside the shell by construction.
      line.scalars.push_back(float(flow.scalar(name, line.positions[v], line.times[v]).value_or(0.0)));
    }
  }
  return line;
}

std::vector<Pathline> generate_pathlines(std::span<const VolumeTimeStep> series,
                                         const std::string& anomaly_variable, std::size_t window,
                                         int substeps) {
  std::vector<Pathline> lines;
  if (series.size() < 2 || window == 0) return lines;
  if (substeps < 1) throw Error(ErrorCode::InvalidArgument, "substeps must be >= 1");

  std::vector<std::string> names;
  for (const auto& [name, field] : series.front().scalars()) names.push_back(name);

  for (std::size_t s = 0; s + 1 < series.size(); ++s) {
    const std::size_t end = std::min(s + window, series.size() - 1);
    const double t0 = series[s].time();
    const double duration = series[end].time() - t0;
    const double dt = duration / double(std::size_t(substeps) * (end - s));
    for (const auto& seed : topology::find_local_extrema(series[s].scalar(anomaly_variable), s)) {
      Pathline line = integrate_pathline(series, seed.position, t0, duration, dt, names);
      line.seed = seed;
      line.spawn_step = s;
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

}  // namespace mantlevis::pathlines
