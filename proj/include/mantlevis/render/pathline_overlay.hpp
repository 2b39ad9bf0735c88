#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mantlevis/pathlines/pathline.hpp"
#include "mantlevis/render/frame.hpp"

namespace mantlevis::render {

/// Integer pixel path from (x0, y0) to (x1, y1), both ends included.
std::vector<std::pair<int, int>> rasterize_line(int x0, int y0, int x1, int y1);

/// Blue at age 0, red at age 1, linear in between.
Rgba age_color(double age);

/// Straight-alpha fragments (alpha 1 where drawn) and their eye distances.
struct Overlay {
  Image image;
  std::vector<float> depth;
  std::size_t fragments{0};
};

/// Projects every segment through `camera` and keeps the fragments nearer
/// than `volume_depth` (one entry per pixel, +inf where empty). Segments are
/// clipped against a near plane 1 km in front of the eye.
Overlay render_pathlines(std::span<const pathlines::Pathline> lines, std::span<const std::size_t> visible,
                         const Camera& camera, std::span<const float> volume_depth);

/// Opaque overlay pixels replace the premultiplied image pixels.
void composite_overlay(Image& premultiplied, const Overlay& overlay);

}  // namespace mantlevis::render
