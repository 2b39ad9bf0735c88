#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <json.hpp>

namespace mantlevis::render {

struct Ray {
  Eigen::Vector3d origin;
  Eigen::Vector3d direction;  // unit length
};

/// Where a world point lands on the image plane, in continuous pixel units
/// (pixel (i, j) covers [i, i+1) x [j, j+1), row 0 at the top).
struct Projection {
  Eigen::Vector2d pixel;
  double view_z;    // distance along the viewing axis
  double distance;  // Euclidean distance from the eye
};

/// Pinhole camera with a vertical field of view.
struct Camera {
  Eigen::Vector3d eye{0.0, -20000.0, 0.0};
  Eigen::Vector3d look_at{0.0, 0.0, 0.0};
  Eigen::Vector3d up{0.0, 0.0, 1.0};
  double fov_deg{40.0};
  std::uint32_t width{256};
  std::uint32_t height{256};

  /// Throws InvalidArgument unless eye != look_at, up is not parallel to the
  /// view direction, fov is in (0, 180) and the image is non-empty.
  void validate() const;

  Eigen::Vector3d forward() const;
  Eigen::Vector3d right() const;
  Eigen::Vector3d true_up() const;
  double tan_half_fov() const;
  double aspect() const { return double(width) / double(height); }

  /// Ray through the center of pixel (x, y).
  Ray ray(std::uint32_t x, std::uint32_t y) const;
  /// nullopt for points at or behind the eye plane.
  std::optional<Projection> project(const Eigen::Vector3d& world) const;

  bool operator==(const Camera& o) const;
};

/// Looks at the origin from `distance_factor * r_outer` along -y, z up.
Camera default_camera(double r_outer, std::uint32_t width, std::uint32_t height,
                      double distance_factor = 3.2);

/// {"eye": [x,y,z], "look_at": [...], "up": [...], "fov": deg, "width": w, "height": h}
nlohmann::json to_json(const Camera& camera);
/// Missing width/height fall back to `fallback`. Throws BadPayload or InvalidArgument.
Camera camera_from_json(const nlohmann::json& j, const Camera& fallback = {});

}  // namespace mantlevis::render
