#include "mantlevis/core/grid.hpp"

#include <string>

#include "mantlevis/core/error.hpp"

namespace mantlevis {

NodeCoord ShellGrid::coord(std::size_t index) const {
  const std::size_t shell = shell_size();
  NodeCoord c;
  c.ir = std::uint32_t(index / shell);
  const std::size_t rem = index % shell;
  c.ilat = std::uint32_t(rem / n_lon);
  c.ilon = std::uint32_t(rem % n_lon);
  return c;
}

double ShellGrid::radius(std::uint32_t ir) const {
  if (n_r == 1) return 0.5 * (r_inner + r_outer);
  if (ir + 1 == n_r) return r_outer;
  return r_inner + double(ir) * radial_spacing();
}

double ShellGrid::latitude(std::uint32_t ilat) const {
  if (n_lat == 1) return 0.0;
  if (ilat + 1 == n_lat) return 90.0;
  return -90.0 + double(ilat) * latitude_spacing();
}

Eigen::Vector3d round_to_float(const Eigen::Vector3d& p) {
  // volatile: GCC 11 -O3 drops a vectorized double->float->double pair.
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    volatile float f = float(p[i]);
    out[i] = f;
  }
  return out;
}

Eigen::Vector3d ShellGrid::node_position(std::size_t index) const {
  const NodeCoord c = coord(index);
  return spherical_to_cartesian(radius(c.ir), latitude(c.ilat), longitude(c.ilon));
}

void ShellGrid::validate() const {
  if (n_r < 1 || n_lat < 1 || n_lon < 1) {
    throw Error(ErrorCode::InvalidArgument, "shell grid needs at least one node per axis");
  }
  if (!(r_inner > 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    throw Error(ErrorCode::InvalidArgument,
                "shell grid radii must satisfy 0 < r_inner < r_outer (got " +
                    std::to_string(r_inner) + ", " + std::to_string(r_outer) + ")");
  }
}

void ShellGrid::validate_full_resolution() const {
  validate();
  if (n_r < 2 || n_lat < 2 || n_lon < 3) {
    throw Error(ErrorCode::InvalidArgument,
                "full-resolution grid needs n_r >= 2, n_lat >= 2, n_lon >= 3");
  }
}

}  // namespace mantlevis
