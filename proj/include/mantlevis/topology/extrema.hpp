#pragma once

#include <cstdint>
#include <vector>

#include "mantlevis/core/field.hpp"

namespace mantlevis::topology {

enum class ExtremumKind : std::uint8_t { minimum, maximum };

struct CriticalPoint {
  std::size_t node{0};
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  ExtremumKind kind{ExtremumKind::maximum};
  float value{0};
  std::size_t time_step{0};

  bool operator==(const CriticalPoint&) const = default;
};

/// Strict extrema over the 3x3x3 index neighborhood: longitude wraps, radial
/// and latitude edges use the truncated neighborhood. Ties never qualify, so
/// plateaus yield nothing. Sorted by node index.
std::vector<CriticalPoint> find_local_extrema(const ScalarField& field, std::size_t time_step = 0);

}  // namespace mantlevis::topology
