#pragma once

#include <string>

#include "mantlevis/core/field.hpp"

namespace mantlevis::preprocess {

inline constexpr const char* kRadialVelocity = "v_radial";
inline constexpr const char* kDepth = "depth";

/// Velocity projected on the outward unit position vector, km/Myr.
/// Throws MissingVelocity.
ScalarField compute_radial_velocity(const VolumeTimeStep& volume);

/// r_outer - r per node, km.
ScalarField compute_depth(const VolumeTimeStep& volume);

/// Value minus the mean of its radial shell, named "<source>_anomaly".
/// Throws UnknownVariable.
ScalarField compute_anomaly(const VolumeTimeStep& volume, const std::string& source);

/// Adds v_radial (when velocity is present), depth, and temp_anomaly when the
/// volume has a temperature but no anomaly variable.
VolumeTimeStep add_derived_variables(const VolumeTimeStep& volume);

}  // namespace mantlevis::preprocess
