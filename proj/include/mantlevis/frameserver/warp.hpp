#pragma once

#include <cstdint>
#include <vector>

#include "mantlevis/render/frame.hpp"

namespace mantlevis::frameserver {

/// A source frame reprojected to another camera. `image` is premultiplied;
/// holes are transparent black with mask 0. `depth` holds eye distances in
/// the destination camera (+inf in holes).
struct WarpResult {
  render::Image image;
  std::vector<std::uint8_t> mask;
  std::vector<float> depth;
  std::uint64_t generation{0};
  std::uint32_t passes{0};

  std::size_t valid_count() const;
};

/// All-hole result sized for `camera`.
WarpResult empty_warp(const render::Camera& camera);

/// Forward point splat: each finite-depth source pixel is lifted to its world
/// point, projected into `dst` and written to the containing pixel, nearest
/// writer wins. Identical cameras copy the display image directly.
WarpResult warp_frame(const render::FrameSlot& src, const render::Camera& dst);

}  // namespace mantlevis::frameserver
