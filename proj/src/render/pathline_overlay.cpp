#include "mantlevis/render/pathline_overlay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mantlevis/core/error.hpp"

namespace mantlevis::render {

namespace {

constexpr double kNearPlane = 1.0;

}  // namespace

std::vector<std::pair<int, int>> rasterize_line(int x0, int y0, int x1, int y1) {
  std::vector<std::pair<int, int>> out;
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    out.emplace_back(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return out;
}

Rgba age_color(double age) {
  const auto a = float(std::clamp(age, 0.0, 1.0));
  return {a, 0.0f, 1.0f - a, 1.0f};
}

Overlay render_pathlines(std::span<const pathlines::Pathline> lines, std::span<const std::size_t> visible,
                         const Camera& camera, std::span<const float> volume_depth) {
  const std::size_t n = std::size_t(camera.width) * camera.height;
  if (volume_depth.size() != n) throw Error(ErrorCode::InvalidArgument, "depth buffer does not match camera");
  Overlay ov{Image::blank(camera.width, camera.height), std::vector<float>(n, float(kInfiniteDepth)), 0};
  const Eigen::Vector3d fwd = camera.forward();
  const double limit = 4.0 * (double(camera.width) + double(camera.height));

  auto segment = [&](Eigen::Vector3d a, Eigen::Vector3d b, double age_a, double age_b) {
    double za = (a - camera.eye).dot(fwd);
    double zb = (b - camera.eye).dot(fwd);
    if (za < kNearPlane && zb < kNearPlane) return;
    if (za < kNearPlane || zb < kNearPlane) {
      const double u = (kNearPlane - za) / (zb - za);
      const Eigen::Vector3d c = a + u * (b - a);
      const double age_c = age_a + u * (age_b - age_a);
      if (za < kNearPlane) {
        a = c;
        age_a = age_c;
      } else {
        b = c;
        age_b = age_c;
      }
      za = (a - camera.eye).dot(fwd);
      zb = (b - camera.eye).dot(fwd);
    }
    const auto pa = camera.project(a);
    const auto pb = camera.project(b);
    if (!pa || !pb) return;
    if ((pb->pixel - pa->pixel).cwiseAbs().maxCoeff() > limit) return;
    const Eigen::Vector2d d = pb->pixel - pa->pixel;
    const double len2 = d.squaredNorm();
    for (const auto& [x, y] : rasterize_line(int(std::floor(pa->pixel.x())), int(std::floor(pa->pixel.y())),
                                             int(std::floor(pb->pixel.x())), int(std::floor(pb->pixel.y())))) {
      if (x < 0 || y < 0 || x >= int(camera.width) || y >= int(camera.height)) continue;
      double s = 0.0;
      if (len2 > 0.0) {
        s = std::clamp((Eigen::Vector2d(x + 0.5, y + 0.5) - pa->pixel).dot(d) / len2, 0.0, 1.0);
      }
      // Screen-space parameter to the segment parameter under perspective.
      const double u = s * za / (s * za + (1.0 - s) * zb);
      const Eigen::Vector3d p = a + u * (b - a);
      const auto dist = float((p - camera.eye).norm());
      const std::size_t pixel = std::size_t(y) * camera.width + std::size_t(x);
      if (!(dist < volume_depth[pixel]) || !(dist < ov.depth[pixel])) continue;
      ov.depth[pixel] = dist;
      const Rgba c = age_color(age_a + u * (age_b - age_a));
      for (int k = 0; k < 4; ++k) ov.image.rgba[4 * pixel + std::size_t(k)] = std::uint8_t(std::lround(c[k] * 255.0f));
      ++ov.fragments;
    }
  };

  for (const std::size_t li : visible) {
    const pathlines::Pathline& line = lines[li];
    for (std::size_t v = 0; v + 1 < line.vertex_count(); ++v) {
      segment(line.positions[v], line.positions[v + 1], line.ages[v], line.ages[v + 1]);
    }
    if (line.vertex_count() == 1) segment(line.positions[0], line.positions[0], line.ages[0], line.ages[0]);
  }
  return ov;
}

void composite_overlay(Image& image, const Overlay& overlay) {
  if (image.width != overlay.image.width || image.height != overlay.image.height) {
    throw Error(ErrorCode::InvalidArgument, "overlay size does not match image");
  }
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    if (overlay.image.rgba[4 * i + 3] == 0) continue;
    std::copy_n(&overlay.image.rgba[4 * i], 4, &image.rgba[4 * i]);
  }
}

}  // namespace mantlevis::render
