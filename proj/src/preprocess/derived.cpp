#include "mantlevis/preprocess/derived.hpp"

#include "mantlevis/core/error.hpp"
#include "mantlevis/ingest/synthetic.hpp"

namespace mantlevis::preprocess {

ScalarField compute_radial_velocity(const VolumeTimeStep& volume) {
  const auto& v = volume.velocity();
  if (!v) throw Error(ErrorCode::MissingVelocity, "volume has no velocity field");
  const ShellGrid& g = volume.grid();
  std::vector<float> out(g.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Node positions at f32 precision, the precision of every stored field:
    // tangential fields built from them cancel exactly.
    const Eigen::Vector3d p = round_to_float(g.node_position(i));
    out[i] = float(v->at(i).dot(p) / p.norm());
  }
  return ScalarField(kRadialVelocity, g, std::move(out));
}

ScalarField compute_depth(const VolumeTimeStep& volume) {
  const ShellGrid& g = volume.grid();
  std::vector<float> out(g.node_count());
  for (std::uint32_t ir = 0; ir < g.n_r; ++ir) {
    const auto depth = float(g.r_outer - g.radius(ir));
    std::fill_n(out.begin() + std::ptrdiff_t(ir * g.shell_size()), g.shell_size(), depth);
  }
  return ScalarField(kDepth, g, std::move(out));
}

ScalarField compute_anomaly(const VolumeTimeStep& volume, const std::string& source) {
  const ScalarField& field = volume.scalar(source);
  const ShellGrid& g = volume.grid();
  const auto values = field.values();
  const std::size_t shell = g.shell_size();
  std::vector<float> out(values.size());
  for (std::uint32_t ir = 0; ir < g.n_r; ++ir) {
    const std::size_t begin = ir * shell;
    double sum = 0.0;
    for (std::size_t i = begin; i < begin + shell; ++i) sum += values[i];
    const double mean = sum / double(shell);
    for (std::size_t i = begin; i < begin + shell; ++i) out[i] = float(double(values[i]) - mean);
  }
  return ScalarField(source + "_anomaly", g, std::move(out));
}

VolumeTimeStep add_derived_variables(const VolumeTimeStep& volume) {
  VolumeTimeStep out = volume.with_scalar(compute_depth(volume));
  if (volume.velocity()) out = out.with_scalar(compute_radial_velocity(volume));
  if (!volume.has_scalar(ingest::kTempAnomaly) && volume.has_scalar(ingest::kTemperature)) {
    out = out.with_scalar(compute_anomaly(volume, ingest::kTemperature).renamed(ingest::kTempAnomaly));
  }
  return out;
}

}  // namespace mantlevis::preprocess
