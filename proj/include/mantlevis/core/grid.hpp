#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mantlevis {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kCoreMantleBoundaryKm = 3480.0;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
struct Spherical {
  Scalar r{0};
  Scalar lat{0};  // degrees, [-90, 90]
  Scalar lon{0};  // degrees, [0, 360)
};

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

template <typename Scalar>
Vector3<Scalar> spherical_to_cartesian(Scalar r, Scalar lat_deg, Scalar lon_deg) {
  using std::cos;
  using std::sin;
  const Scalar lat = deg_to_rad(lat_deg);
  const Scalar lon = deg_to_rad(lon_deg);
  return {r * cos(lat) * cos(lon), r * cos(lat) * sin(lon), r * sin(lat)};
}

/// Each component rounded to the nearest float, kept as double.
Eigen::Vector3d round_to_float(const Eigen::Vector3d& p);

template <typename Scalar>
Scalar normalize_longitude(Scalar lon_deg) {
  using std::fmod;
  Scalar lon = fmod(lon_deg, Scalar(360));
  if (lon < Scalar(0)) lon += Scalar(360);
  // fmod of a tiny negative value plus 360 rounds to 360.
  if (lon >= Scalar(360)) lon -= Scalar(360);
  return lon;
}

template <typename Scalar>
Spherical<Scalar> cartesian_to_spherical(const Vector3<Scalar>& p) {
  using std::atan2;
  using std::hypot;
  const Scalar rho = hypot(p.x(), p.y());
  const Scalar r = hypot(rho, p.z());
  if (r == Scalar(0)) return {Scalar(0), Scalar(0), Scalar(0)};
  const Scalar lat = rad_to_deg(atan2(p.z(), rho));
  const Scalar lon = rho == Scalar(0) ? Scalar(0) : normalize_longitude(rad_to_deg(atan2(p.y(), p.x())));
  return {r, lat, lon};
}

struct NodeCoord {
  std::uint32_t ir{0};
  std::uint32_t ilat{0};
  std::uint32_t ilon{0};
};

/// Structured spherical shell. Nodes are uniformly spaced in radius over
/// [r_inner, r_outer], latitude over [-90, 90] and longitude over [0, 360)
/// with periodic wrap. Storage order is r-major, then latitude, then longitude.
///
/// A single node along an axis is allowed so that coarse pyramid levels stay
/// representable; such an axis sits at the interval midpoint (lat 0, lon 0).
struct ShellGrid {
  std::uint32_t n_r{2};
  std::uint32_t n_lat{2};
  std::uint32_t n_lon{3};
  double r_inner{kCoreMantleBoundaryKm};
  double r_outer{kEarthRadiusKm};

  std::size_t node_count() const {
    return std::size_t(n_r) * std::size_t(n_lat) * std::size_t(n_lon);
  }
  std::size_t shell_size() const { return std::size_t(n_lat) * std::size_t(n_lon); }

  std::size_t index(std::uint32_t ir, std::uint32_t ilat, std::uint32_t ilon) const {
    return (std::size_t(ir) * n_lat + ilat) * n_lon + ilon;
  }
  NodeCoord coord(std::size_t index) const;

  double thickness() const { return r_outer - r_inner; }
  double radial_spacing() const { return n_r > 1 ? thickness() / double(n_r - 1) : thickness(); }
  double latitude_spacing() const { return n_lat > 1 ? 180.0 / double(n_lat - 1) : 180.0; }
  double longitude_spacing() const { return 360.0 / double(n_lon); }

  double radius(std::uint32_t ir) const;
  double latitude(std::uint32_t ilat) const;
  double longitude(std::uint32_t ilon) const { return double(ilon) * longitude_spacing(); }

  Eigen::Vector3d node_position(std::size_t index) const;

  /// Closed radial interval, widened by a relative 1e-12 so nodes placed
  /// exactly on a bounding sphere survive the Cartesian round trip.
  bool contains_radius(double r) const {
    return r >= r_inner * (1.0 - 1e-12) && r <= r_outer * (1.0 + 1e-12);
  }

  /// Throws InvalidArgument unless the shell is geometrically valid.
  void validate() const;
  /// Stricter check for full-resolution data: n_r, n_lat >= 2 and n_lon >= 3.
  void validate_full_resolution() const;

  bool operator==(const ShellGrid&) const = default;
};

}  // namespace mantlevis
