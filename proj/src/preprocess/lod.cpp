#include "mantlevis/preprocess/lod.hpp"

#include <algorithm>

#include "mantlevis/core/error.hpp"

namespace mantlevis::preprocess {

LodPyramid::LodPyramid(std::vector<VolumeTimeStep> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(ErrorCode::InvalidArgument, "pyramid needs at least one level");
  const auto names = levels_.front().variable_names();
  for (const auto& l : levels_) {
    if (l.variable_names() != names) {
      throw Error(ErrorCode::InvalidArgument, "pyramid levels carry different variables");
    }
  }
  constructions_.fetch_add(1);
}

namespace {

ShellGrid coarse_grid(const ShellGrid& g) {
  ShellGrid c = g;
  c.n_r = (g.n_r + 1) / 2;
  c.n_lat = (g.n_lat + 1) / 2;
  c.n_lon = (g.n_lon + 1) / 2;
  return c;
}

ScalarField block_mean(const ScalarField& fine, const ShellGrid& coarse) {
  const ShellGrid& g = fine.grid();
  const auto values = fine.values();
  std::vector<float> out(coarse.node_count());
  for (std::uint32_t cr = 0; cr < coarse.n_r; ++cr) {
    const std::uint32_t r_end = std::min(g.n_r, 2 * cr + 2);
    for (std::uint32_t clat = 0; clat < coarse.n_lat; ++clat) {
      const std::uint32_t lat_end = std::min(g.n_lat, 2 * clat + 2);
      for (std::uint32_t clon = 0; clon < coarse.n_lon; ++clon) {
        const std::uint32_t lon_end = std::min(g.n_lon, 2 * clon + 2);
        double sum = 0.0;
        int count = 0;
        for (std::uint32_t r = 2 * cr; r < r_end; ++r) {
          for (std::uint32_t lat = 2 * clat; lat < lat_end; ++lat) {
            for (std::uint32_t lon = 2 * clon; lon < lon_end; ++lon) {
              sum += values[g.index(r, lat, lon)];
              ++count;
            }
          }
        }
        out[coarse.index(cr, clat, clon)] = float(sum / count);
      }
    }
  }
  return ScalarField(fine.name(), coarse, std::move(out));
}

}  // namespace

VolumeTimeStep downsample(const VolumeTimeStep& volume) {
  const ShellGrid coarse = coarse_grid(volume.grid());
  std::vector<ScalarField> scalars;
  for (const auto& [name, field] : volume.scalars()) scalars.push_back(block_mean(field, coarse));
  std::optional<VectorField> velocity;
  if (const auto& v = volume.velocity()) {
    velocity.emplace(v->name(), block_mean(v->x(), coarse), block_mean(v->y(), coarse),
                     block_mean(v->z(), coarse));
  }
  return VolumeTimeStep(coarse, volume.time(), std::move(scalars), std::move(velocity));
}

LodPyramid build_lod(const VolumeTimeStep& volume, std::size_t extra_levels) {
  const ShellGrid& g = volume.grid();
  if (g.n_r < 2 || g.n_lat < 2 || g.n_lon < 2) {
    throw Error(ErrorCode::DimensionTooSmall,
                "LOD input needs at least 2 nodes per axis (got " + std::to_string(g.n_r) + "x" +
                    std::to_string(g.n_lat) + "x" + std::to_string(g.n_lon) + ")");
  }
  std::vector<VolumeTimeStep> levels;
  levels.reserve(extra_levels + 1);
  levels.push_back(volume);
  for (std::size_t k = 0; k < extra_levels; ++k) levels.push_back(downsample(levels.back()));
  return LodPyramid(std::move(levels));
}

}  // namespace mantlevis::preprocess
