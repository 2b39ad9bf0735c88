#include "mantlevis/render/camera.hpp"

#include <cmath>

#include "mantlevis/core/error.hpp"
#include "mantlevis/core/grid.hpp"

namespace mantlevis::render {

void Camera::validate() const {
  if (!eye.allFinite() || !look_at.allFinite() || !up.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "camera vectors must be finite");
  }
  if ((look_at - eye).norm() == 0.0) throw Error(ErrorCode::InvalidArgument, "camera eye equals look-at");
  if ((look_at - eye).normalized().cross(up).norm() < 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "camera up is parallel to the view direction");
  }
  if (!(fov_deg > 0.0 && fov_deg < 180.0)) throw Error(ErrorCode::InvalidArgument, "fov must lie in (0, 180)");
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "image size must be at least 1x1");
}

Eigen::Vector3d Camera::forward() const { return (look_at - eye).normalized(); }
Eigen::Vector3d Camera::right() const { return forward().cross(up).normalized(); }
Eigen::Vector3d Camera::true_up() const { return right().cross(forward()); }
double Camera::tan_half_fov() const { return std::tan(deg_to_rad(fov_deg) * 0.5); }

Ray Camera::ray(std::uint32_t x, std::uint32_t y) const {
  const double th = tan_half_fov();
  const double u = ((double(x) + 0.5) / double(width) * 2.0 - 1.0) * th * aspect();
  const double v = (1.0 - (double(y) + 0.5) / double(height) * 2.0) * th;
  return {eye, (forward() + u * right() + v * true_up()).normalized()};
}

std::optional<Projection> Camera::project(const Eigen::Vector3d& world) const {
  const Eigen::Vector3d d = world - eye;
  const double z = d.dot(forward());
  if (!(z > 0.0)) return std::nullopt;
  const double th = tan_half_fov();
  const double u = d.dot(right()) / (z * th * aspect());
  const double v = d.dot(true_up()) / (z * th);
  return Projection{{(u + 1.0) * 0.5 * double(width), (1.0 - v) * 0.5 * double(height)}, z, d.norm()};
}

bool Camera::operator==(const Camera& o) const {
  return eye == o.eye && look_at == o.look_at && up == o.up && fov_deg == o.fov_deg &&
         width == o.width && height == o.height;
}

Camera default_camera(double r_outer, std::uint32_t width, std::uint32_t height,
                      double distance_factor) {
  Camera c;
  c.eye = {0.0, -distance_factor * r_outer, 0.25 * r_outer};
  c.look_at = Eigen::Vector3d::Zero();
  c.up = {0.0, 0.0, 1.0};
  c.fov_deg = 40.0;
  c.width = width;
  c.height = height;
  return c;
}

namespace {

nlohmann::json vec(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Eigen::Vector3d vec_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3) {
    throw Error(ErrorCode::BadPayload, std::string("camera '") + key + "' must be [x, y, z]");
  }
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[key][std::size_t(i)].is_number()) {
      throw Error(ErrorCode::BadPayload, std::string("camera '") + key + "' must be numeric");
    }
    v[i] = j[key][std::size_t(i)].get<double>();
  }
  return v;
}

}  // namespace

nlohmann::json to_json(const Camera& c) {
  return {{"eye", vec(c.eye)}, {"look_at", vec(c.look_at)}, {"up", vec(c.up)},
          {"fov", c.fov_deg},  {"width", c.width},          {"height", c.height}};
}

Camera camera_from_json(const nlohmann::json& j, const Camera& fallback) {
  if (!j.is_object()) throw Error(ErrorCode::BadPayload, "camera must be an object");
  Camera c = fallback;
  c.eye = vec_from(j, "eye");
  c.look_at = vec_from(j, "look_at");
  if (j.contains("up")) c.up = vec_from(j, "up");
  auto number = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw Error(ErrorCode::BadPayload, std::string("camera '") + key + "' must be numeric");
    out = j[key].get<std::remove_reference_t<decltype(out)>>();
  };
  number("fov", c.fov_deg);
  number("width", c.width);
  number("height", c.height);
  c.validate();
  return c;
}

}  // namespace mantlevis::render
