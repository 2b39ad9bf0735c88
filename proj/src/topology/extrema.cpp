#include "mantlevis/topology/extrema.hpp"

#include <algorithm>
#include <array>

namespace mantlevis::topology {

std::vector<CriticalPoint> find_local_extrema(const ScalarField& field, std::size_t time_step) {
  const ShellGrid& g = field.grid();
  const auto values = field.values();

  // Distinct longitude neighbors; fewer than 3 when the axis is that short.
  auto lon_neighbors = [&](std::uint32_t ilon) {
    std::array<std::uint32_t, 3> out{};
    int n = 0;
    for (int d = -1; d <= 1; ++d) {
      const auto l = std::uint32_t((std::int64_t(ilon) + d + g.n_lon) % g.n_lon);
      if (std::find(out.begin(), out.begin() + n, l) == out.begin() + n) out[n++] = l;
    }
    return std::pair{out, n};
  };

  std::vector<CriticalPoint> points;
  for (std::uint32_t ir = 0; ir < g.n_r; ++ir) {
    const std::uint32_t r0 = ir == 0 ? 0 : ir - 1;
    const std::uint32_t r1 = std::min(ir + 1, g.n_r - 1);
    for (std::uint32_t ilat = 0; ilat < g.n_lat; ++ilat) {
      const std::uint32_t lat0 = ilat == 0 ? 0 : ilat - 1;
      const std::uint32_t lat1 = std::min(ilat + 1, g.n_lat - 1);
      for (std::uint32_t ilon = 0; ilon < g.n_lon; ++ilon) {
        const std::size_t center = g.index(ir, ilat, ilon);
        const float v = values[center];
        const auto [lons, nlon] = lon_neighbors(ilon);
        bool is_max = true;
        bool is_min = true;
        bool any_neighbor = false;
        for (std::uint32_t r = r0; r <= r1 && (is_max || is_min); ++r) {
          for (std::uint32_t lat = lat0; lat <= lat1 && (is_max || is_min); ++lat) {
            for (int k = 0; k < nlon; ++k) {
              const std::size_t j = g.index(r, lat, lons[k]);
              if (j == center) continue;
              any_neighbor = true;
              const float w = values[j];
              if (!(v > w)) is_max = false;
              if (!(v < w)) is_min = false;
            }
          }
        }
        if (!any_neighbor || (!is_max && !is_min)) continue;
        points.push_back({center, g.node_position(center),
                          is_max ? ExtremumKind::maximum : ExtremumKind::minimum, v, time_step});
      }
    }
  }
  return points;
}

}  // namespace mantlevis::topology
