#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mantlevis/core/field.hpp"

namespace mantlevis::ingest {

// Canonical variable names emitted by the generator.
inline constexpr const char* kTemperature = "temperature";
inline constexpr const char* kTempAnomaly = "temp_anomaly";
inline constexpr const char* kExpansivity = "expansivity";
inline constexpr const char* kConductivity = "conductivity";
inline constexpr const char* kSpinDensityAnomaly = "spin_density_anomaly";

/// Depth (km) at which the spin-transition density anomaly changes sign.
inline constexpr double kSpinTransitionDepthKm = 1600.0;
/// Truncation radius of a column's Gaussian, in standard deviations.
inline constexpr double kColumnCutoffSigmas = 3.0;

enum class ScenarioKind { plume, slab, rigid_rotation, convection_cells };

std::string_view to_string(ScenarioKind kind);
/// Throws InvalidArgument for unknown names.
ScenarioKind scenario_from_string(std::string_view name);

struct SyntheticScenario {
  ScenarioKind kind{ScenarioKind::plume};
  std::uint64_t seed{1};
  /// Column count (plume, slab) or azimuthal wave number (convection_cells).
  std::uint32_t feature_count{4};
  double anomaly_amplitude{300.0};   // K
  double velocity_amplitude{50.0};   // km/Myr
  double column_sigma_deg{8.0};      // angular std-dev of a column
  double radial_width_fraction{0.35};
  /// Background offset of plume/slab anomalies, as a fraction of the amplitude.
  double background_fraction{0.02};
  /// Rigid rotation rate about +z, rad/Myr (about one revolution per 100 Myr).
  double omega{0.0625};
  double cell_drift_deg_per_myr{1.0};
};

/// A plume/slab column, centered on a grid node so the column peak is a node.
struct ColumnFeature {
  std::uint32_t ir{0};
  std::uint32_t ilat{0};
  std::uint32_t ilon{0};
};

/// Seeded, non-overlapping column placement (supports never intersect).
/// Throws InvalidArgument when the columns cannot be placed.
std::vector<ColumnFeature> place_columns(const SyntheticScenario& scenario, const ShellGrid& grid);

/// Truncated, renormalized Gaussian of angular distance: 1 at the center,
/// exactly 0 beyond kColumnCutoffSigmas.
double column_profile(double angular_distance_deg, double sigma_deg);

/// Plume/slab shape in [0, 1] at one node (before sign and amplitude).
double column_shape(const SyntheticScenario& scenario, const ShellGrid& grid,
                    const std::vector<ColumnFeature>& columns, std::size_t node);

/// Great-circle distance in degrees.
double angular_distance_deg(double lat1, double lon1, double lat2, double lon2);

/// Throws EmptyTimeList when `times` is empty; grids must be full resolution.
std::vector<VolumeTimeStep> generate_synthetic(const SyntheticScenario& scenario,
                                               const ShellGrid& grid,
                                               const std::vector<double>& times);

/// `count` times starting at 0 with uniform `spacing` Myr.
std::vector<double> uniform_times(std::size_t count, double spacing = 2.0);

}  // namespace mantlevis::ingest
