#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>

#include "mantlevis/core/field.hpp"

namespace mantlevis {

/// Trilinear interpolation weights for one point, reusable across every field
/// on the same grid. Evaluation is clamped to the range of the eight corner
/// values so interpolated samples never leave the convex hull of the data.
struct Stencil {
  std::array<std::uint32_t, 8> index{};
  std::array<double, 8> weight{};

  template <typename Value>
  double apply(std::span<const Value> values) const {
    double sum = 0.0;
    double lo = values[index[0]];
    double hi = lo;
    for (int c = 0; c < 8; ++c) {
      const double v = values[index[c]];
      sum += weight[c] * v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::clamp(sum, lo, hi);
  }

  double apply(const ScalarField& field) const { return apply(field.values()); }
};

/// Fractional index-space coordinates of a point with radius inside the shell.
struct IndexCoord {
  double r{0};
  double lat{0};
  double lon{0};
};

std::optional<IndexCoord> index_coordinates(const ShellGrid& grid, const Eigen::Vector3d& p);

/// nullopt means OUTSIDE: the point's radius is not within [r_inner, r_outer].
std::optional<Stencil> locate(const ShellGrid& grid, const Eigen::Vector3d& p);

std::optional<double> sample_scalar(const ScalarField& field, const Eigen::Vector3d& p);
std::optional<Eigen::Vector3d> sample_velocity(const VectorField& v, const Eigen::Vector3d& p);

}  // namespace mantlevis
