#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "mantlevis/core/field.hpp"

namespace mantlevis::preprocess {

inline constexpr std::size_t kDefaultExtraLevels = 2;

/// Level 0 is the source volume; level k+1 has ceil(n/2) nodes per axis of
/// level k. Every level carries every variable of level 0.
class LodPyramid {
 public:
  explicit LodPyramid(std::vector<VolumeTimeStep> levels);

  std::size_t level_count() const { return levels_.size(); }
  const VolumeTimeStep& level(std::size_t k) const { return levels_.at(k); }
  const VolumeTimeStep& finest() const { return levels_.front(); }
  const VolumeTimeStep& coarsest() const { return levels_.back(); }
  double time() const { return levels_.front().time(); }

  /// Process-wide count of pyramids constructed so far. Renderers only read
  /// pyramids; this counter lets callers verify nothing was rebuilt.
  static std::uint64_t construction_count() { return constructions_.load(); }

 private:
  std::vector<VolumeTimeStep> levels_;
  static inline std::atomic<std::uint64_t> constructions_{0};
};

/// One octree level down: each coarse node is the f64 arithmetic mean of its
/// (up to) 2x2x2 child block, accumulated in storage order.
VolumeTimeStep downsample(const VolumeTimeStep& volume);

/// Throws DimensionTooSmall when any axis of the input has fewer than 2 nodes.
LodPyramid build_lod(const VolumeTimeStep& volume, std::size_t extra_levels = kDefaultExtraLevels);

}  // namespace mantlevis::preprocess
