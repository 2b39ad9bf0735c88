#include "mantlevis/core/sampling.hpp"

#include <cmath>

namespace mantlevis {

namespace {

struct AxisCell {
  std::uint32_t i0;
  std::uint32_t i1;
  double frac;
};

AxisCell clamped_axis(double coord, std::uint32_t n) {
  if (n == 1) return {0, 0, 0.0};
  coord = std::clamp(coord, 0.0, double(n - 1));
  auto i0 = std::uint32_t(std::floor(coord));
  if (i0 >= n - 1) i0 = n - 2;
  return {i0, i0 + 1, coord - double(i0)};
}

AxisCell periodic_axis(double coord, std::uint32_t n) {
  const double fl = std::floor(coord);
  double frac = coord - fl;
  auto i0 = std::int64_t(fl) % std::int64_t(n);
  if (i0 < 0) i0 += n;
  if (frac >= 1.0) frac = 0.0;
  return {std::uint32_t(i0), std::uint32_t((i0 + 1) % n), frac};
}

}  // namespace

std::optional<IndexCoord> index_coordinates(const ShellGrid& grid, const Eigen::Vector3d& p) {
  const Spherical<double> s = cartesian_to_spherical(p);
  if (!grid.contains_radius(s.r)) return std::nullopt;
  IndexCoord c;
  c.r = grid.n_r > 1 ? (s.r - grid.r_inner) / grid.thickness() * double(grid.n_r - 1) : 0.0;
  c.lat = grid.n_lat > 1 ? (s.lat + 90.0) / 180.0 * double(grid.n_lat - 1) : 0.0;
  c.lon = s.lon / 360.0 * double(grid.n_lon);
  return c;
}

std::optional<Stencil> locate(const ShellGrid& grid, const Eigen::Vector3d& p) {
  const auto c = index_coordinates(grid, p);
  if (!c) return std::nullopt;
  const AxisCell r = clamped_axis(c->r, grid.n_r);
  const AxisCell lat = clamped_axis(c->lat, grid.n_lat);
  const AxisCell lon = periodic_axis(c->lon, grid.n_lon);

  Stencil st;
  int k = 0;
  for (int dr = 0; dr < 2; ++dr) {
    const std::uint32_t ir = dr ? r.i1 : r.i0;
    const double wr = dr ? r.frac : 1.0 - r.frac;
    for (int dlat = 0; dlat < 2; ++dlat) {
      const std::uint32_t ilat = dlat ? lat.i1 : lat.i0;
      const double wlat = dlat ? lat.frac : 1.0 - lat.frac;
      for (int dlon = 0; dlon < 2; ++dlon) {
        const std::uint32_t ilon = dlon ? lon.i1 : lon.i0;
        const double wlon = dlon ? lon.frac : 1.0 - lon.frac;
        st.index[k] = std::uint32_t(grid.index(ir, ilat, ilon));
        st.weight[k] = wr * wlat * wlon;
        ++k;
      }
    }
  }
  return st;
}

std::optional<double> sample_scalar(const ScalarField& field, const Eigen::Vector3d& p) {
  const auto st = locate(field.grid(), p);
  if (!st) return std::nullopt;
  return st->apply(field);
}

std::optional<Eigen::Vector3d> sample_velocity(const VectorField& v, const Eigen::Vector3d& p) {
  const auto st = locate(v.grid(), p);
  if (!st) return std::nullopt;
  return Eigen::Vector3d(st->apply(v.x()), st->apply(v.y()), st->apply(v.z()));
}

}  // namespace mantlevis
