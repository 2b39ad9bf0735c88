#include "mantlevis/ingest/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mantlevis/core/error.hpp"

namespace mantlevis::ingest {

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::plume: return "plume";
    case ScenarioKind::slab: return "slab";
    case ScenarioKind::rigid_rotation: return "rigid_rotation";
    case ScenarioKind::convection_cells: return "convection_cells";
  }
  return "unknown";
}

ScenarioKind scenario_from_string(std::string_view name) {
  for (auto k : {ScenarioKind::plume, ScenarioKind::slab, ScenarioKind::rigid_rotation,
                 ScenarioKind::convection_cells}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scenario '" + std::string(name) + "'");
}

double angular_distance_deg(double lat1, double lon1, double lat2, double lon2) {
  const Eigen::Vector3d a = spherical_to_cartesian(1.0, lat1, lon1);
  const Eigen::Vector3d b = spherical_to_cartesian(1.0, lat2, lon2);
  return rad_to_deg(std::atan2(a.cross(b).norm(), a.dot(b)));
}

double column_profile(double angular_distance_deg, double sigma_deg) {
  const double cutoff = std::exp(-0.5 * kColumnCutoffSigmas * kColumnCutoffSigmas);
  const double x = angular_distance_deg / sigma_deg;
  const double g = std::exp(-0.5 * x * x);
  return std::max(0.0, (g - cutoff) / (1.0 - cutoff));
}

std::vector<ColumnFeature> place_columns(const SyntheticScenario& scenario, const ShellGrid& grid) {
  std::vector<std::uint32_t> lat_nodes;
  for (std::uint32_t i = 0; i < grid.n_lat; ++i) {
    if (std::abs(grid.latitude(i)) <= 60.0) lat_nodes.push_back(i);
  }
  if (lat_nodes.empty() || grid.n_r < 2) {
    throw Error(ErrorCode::InvalidArgument, "grid too coarse to place columns");
  }
  const std::uint32_t ir_lo = grid.n_r / 4;
  const std::uint32_t ir_hi = std::max(ir_lo, (3 * grid.n_r) / 4);
  const double min_separation = 2.0 * kColumnCutoffSigmas * scenario.column_sigma_deg;

  std::mt19937_64 rng(scenario.seed);
  std::uniform_int_distribution<std::size_t> pick_lat(0, lat_nodes.size() - 1);
  std::uniform_int_distribution<std::uint32_t> pick_lon(0, grid.n_lon - 1);
  std::uniform_int_distribution<std::uint32_t> pick_r(ir_lo, ir_hi);

  std::vector<ColumnFeature> columns;
  for (int attempt = 0; attempt < 100000 && columns.size() < scenario.feature_count; ++attempt) {
    ColumnFeature c{pick_r(rng), lat_nodes[pick_lat(rng)], pick_lon(rng)};
    const bool clear = std::all_of(columns.begin(), columns.end(), [&](const ColumnFeature& o) {
      return angular_distance_deg(grid.latitude(c.ilat), grid.longitude(c.ilon),
                                  grid.latitude(o.ilat), grid.longitude(o.ilon)) > min_separation;
    });
    if (clear) columns.push_back(c);
  }
  if (columns.size() < scenario.feature_count) {
    throw Error(ErrorCode::InvalidArgument,
                "cannot place " + std::to_string(scenario.feature_count) +
                    " non-overlapping columns; reduce feature count or width");
  }
  return columns;
}

double column_shape(const SyntheticScenario& scenario, const ShellGrid& grid,
                    const std::vector<ColumnFeature>& columns, std::size_t node) {
  const NodeCoord n = grid.coord(node);
  const double lat = grid.latitude(n.ilat);
  const double lon = grid.longitude(n.ilon);
  const double r = grid.radius(n.ir);
  const double width = scenario.radial_width_fraction * grid.thickness();
  double shape = 0.0;
  for (const auto& c : columns) {
    const double g = column_profile(
        angular_distance_deg(lat, lon, grid.latitude(c.ilat), grid.longitude(c.ilon)),
        scenario.column_sigma_deg);
    if (g <= 0.0) continue;
    const double dr = (r - grid.radius(c.ir)) / width;
    shape += g * std::exp(-0.5 * dr * dr);
  }
  return shape;
}

namespace {

double sign(double v) { return double(v > 0.0) - double(v < 0.0); }

struct NodeSample {
  double anomaly{0};
  double expansivity{0};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
};

}  // namespace

std::vector<VolumeTimeStep> generate_synthetic(const SyntheticScenario& scenario,
                                               const ShellGrid& grid,
                                               const std::vector<double>& times) {
  if (times.empty()) throw Error(ErrorCode::EmptyTimeList, "time list is empty");
  grid.validate_full_resolution();

  std::vector<ColumnFeature> columns;
  if (scenario.kind == ScenarioKind::plume || scenario.kind == ScenarioKind::slab) {
    columns = place_columns(scenario, grid);
  }

  // Convection-cell phases come from the seed so the pattern has no grid symmetry.
  std::mt19937_64 rng(scenario.seed ^ 0x9E3779B97F4A7C15ull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double cell_lat0 = -20.0 + 40.0 * unit(rng);
  const double cell_lon0 = 360.0 * unit(rng);

  const std::size_t n = grid.node_count();
  const double A = scenario.anomaly_amplitude;
  const double U = scenario.velocity_amplitude;

  std::vector<double> shape;
  if (!columns.empty()) {
    shape.resize(n);
    for (std::size_t i = 0; i < n; ++i) shape[i] = column_shape(scenario, grid, columns, i);
  }

  std::vector<VolumeTimeStep> steps;
  steps.reserve(times.size());
  for (double t : times) {
    std::vector<float> temperature(n), anomaly(n), expansivity(n), conductivity(n), spin(n);
    std::vector<float> vx(n), vy(n), vz(n);
    for (std::size_t i = 0; i < n; ++i) {
      const NodeCoord c = grid.coord(i);
      const double r = grid.radius(c.ir);
      const double lat = grid.latitude(c.ilat);
      const double lon = grid.longitude(c.ilon);
      const double depth = grid.r_outer - r;
      const double depth_frac = depth / grid.thickness();
      const Eigen::Vector3d p = grid.node_position(i);
      const Eigen::Vector3d radial = p / p.norm();

      NodeSample s;
      switch (scenario.kind) {
        case ScenarioKind::plume:
        case ScenarioKind::slab: {
          const double sgn = scenario.kind == ScenarioKind::plume ? 1.0 : -1.0;
          const double k = shape[i];
          s.anomaly = sgn * A * (k - scenario.background_fraction);
          s.velocity = sgn * U * k * radial;
          s.expansivity = sgn * (k > 0.0 ? 0.5 + 0.5 * k : -(0.2 + 0.6 * depth_frac));
          break;
        }
        case ScenarioKind::rigid_rotation: {
          // omega x p on f32 positions; exact in f32 when omega is a power of two.
          const Eigen::Vector3d omega(0.0, 0.0, scenario.omega);
          s.velocity = omega.cross(round_to_float(p));
          s.expansivity = 1.0;
          break;
        }
        case ScenarioKind::convection_cells: {
          const double lat_part = std::cos(deg_to_rad(lat - cell_lat0));
          const double lon_part = std::sin(double(scenario.feature_count) *
                                           deg_to_rad(lon - cell_lon0 - scenario.cell_drift_deg_per_myr * t));
          // Flips sign once, at mid-depth.
          const double radial_part = std::cos(std::numbers::pi * (r - grid.r_inner) / grid.thickness());
          const double pattern = lat_part * lon_part * radial_part;
          s.anomaly = A * pattern;
          s.velocity = U * pattern * radial;
          s.expansivity = 0.5 * pattern;
          break;
        }
      }
      temperature[i] = float(300.0 + 3500.0 * depth_frac + s.anomaly);
      anomaly[i] = float(s.anomaly);
      expansivity[i] = float(s.expansivity);
      conductivity[i] = float(3.0 + 2.0 * depth_frac + 0.002 * s.anomaly);
      spin[i] = float(sign(s.anomaly) * std::tanh((depth - kSpinTransitionDepthKm) / 150.0));
      vx[i] = float(s.velocity.x());
      vy[i] = float(s.velocity.y());
      vz[i] = float(s.velocity.z());
    }
    std::vector<ScalarField> scalars;
    scalars.emplace_back(kTemperature, grid, std::move(temperature));
    scalars.emplace_back(kTempAnomaly, grid, std::move(anomaly));
    scalars.emplace_back(kExpansivity, grid, std::move(expansivity));
    scalars.emplace_back(kConductivity, grid, std::move(conductivity));
    scalars.emplace_back(kSpinDensityAnomaly, grid, std::move(spin));
    VectorField velocity("velocity", ScalarField(kVelocityX, grid, std::move(vx)),
                         ScalarField(kVelocityY, grid, std::move(vy)),
                         ScalarField(kVelocityZ, grid, std::move(vz)));
    steps.emplace_back(grid, t, std::move(scalars), std::move(velocity));
  }
  return steps;
}

std::vector<double> uniform_times(std::size_t count, double spacing) {
  std::vector<double> times(count);
  for (std::size_t i = 0; i < count; ++i) times[i] = double(i) * spacing;
  return times;
}

}  // namespace mantlevis::ingest
