#include "mantlevis/frameserver/warp.hpp"

#include <algorithm>
#include <cmath>

namespace mantlevis::frameserver {

std::size_t WarpResult::valid_count() const {
  return std::size_t(std::count(mask.begin(), mask.end(), std::uint8_t(1)));
}

WarpResult empty_warp(const render::Camera& camera) {
  const std::size_t n = std::size_t(camera.width) * camera.height;
  return {render::Image::blank(camera.width, camera.height), std::vector<std::uint8_t>(n, 0),
          std::vector<float>(n, float(render::kInfiniteDepth)), 0, 0};
}

WarpResult warp_frame(const render::FrameSlot& src, const render::Camera& dst) {
  WarpResult out = empty_warp(dst);
  out.generation = src.generation;
  out.passes = src.passes;
  if (src.passes == 0) return out;

  const std::uint32_t sw = src.width();
  const std::uint32_t sh = src.height();
  if (src.camera == dst) {
    for (std::size_t i = 0; i < std::size_t(sw) * sh; ++i) {
      if (!std::isfinite(src.depth[i])) continue;
      std::copy_n(&src.display.rgba[4 * i], 4, &out.image.rgba[4 * i]);
      out.mask[i] = 1;
      out.depth[i] = src.depth[i];
    }
    return out;
  }

  for (std::uint32_t y = 0; y < sh; ++y) {
    for (std::uint32_t x = 0; x < sw; ++x) {
      const std::size_t i = std::size_t(y) * sw + x;
      if (!std::isfinite(src.depth[i])) continue;
      const render::Ray ray = src.camera.ray(x, y);
      const Eigen::Vector3d world = ray.origin + double(src.depth[i]) * ray.direction;
      const auto proj = dst.project(world);
      if (!proj) continue;
      const double px = std::floor(proj->pixel.x());
      const double py = std::floor(proj->pixel.y());
      if (px < 0 || py < 0 || px >= double(dst.width) || py >= double(dst.height)) continue;
      const std::size_t j = std::size_t(py) * dst.width + std::size_t(px);
      const auto d = float(proj->distance);
      if (out.mask[j] && !(d < out.depth[j])) continue;
      std::copy_n(&src.display.rgba[4 * i], 4, &out.image.rgba[4 * j]);
      out.mask[j] = 1;
      out.depth[j] = d;
    }
  }
  return out;
}

}  // namespace mantlevis::frameserver
