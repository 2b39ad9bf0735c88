#include "mantlevis/render/transfer_function.hpp"

#include <algorithm>
#include <cmath>

#include "mantlevis/core/error.hpp"

namespace mantlevis::render {

TransferFunction::TransferFunction(std::string variable, std::vector<ControlPoint> points,
                                   double opacity_scale)
    : variable_(std::move(variable)), points_(std::move(points)), opacity_scale_(opacity_scale) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "transfer function needs at least 2 control points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].value) || (i > 0 && !(points_[i].value > points_[i - 1].value))) {
      throw Error(ErrorCode::InvalidArgument, "control point values must increase strictly");
    }
    for (int c = 0; c < 4; ++c) {
      const float v = points_[i].rgba[c];
      if (!(v >= 0.0f && v <= 1.0f)) {
        throw Error(ErrorCode::InvalidArgument, "control point components must lie in [0, 1]");
      }
    }
  }
  if (!(opacity_scale_ >= 0.0) || !std::isfinite(opacity_scale_)) {
    throw Error(ErrorCode::InvalidArgument, "opacity scale must be finite and non-negative");
  }
}

Rgba TransferFunction::lookup(double value) const {
  if (!(value > points_.front().value)) return points_.front().rgba;
  if (!(value < points_.back().value)) return points_.back().rgba;
  const auto it = std::upper_bound(points_.begin(), points_.end(), value,
                                   [](double v, const ControlPoint& p) { return v < p.value; });
  const ControlPoint& b = *it;
  const ControlPoint& a = *(it - 1);
  const auto w = float((value - a.value) / (b.value - a.value));
  return (1.0f - w) * a.rgba + w * b.rgba;
}

TransferFunction diverging_transfer_function(const std::string& variable, double lo, double hi,
                                             double opacity_scale) {
  double m = std::max(std::abs(lo), std::abs(hi));
  if (!(m > 0.0) || !std::isfinite(m)) m = 1.0;
  return TransferFunction(variable,
                          {{-m, Rgba(0.23f, 0.30f, 0.75f, 1.0f)},
                           {0.0, Rgba(0.87f, 0.87f, 0.87f, 0.05f)},
                           {m, Rgba(0.71f, 0.02f, 0.15f, 1.0f)}},
                          opacity_scale);
}

nlohmann::json to_json(const TransferFunction& tf) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : tf.points()) {
    points.push_back({p.value, p.rgba[0], p.rgba[1], p.rgba[2], p.rgba[3]});
  }
  return {{"variable", tf.variable()}, {"points", points}, {"opacity_scale", tf.opacity_scale()}};
}

TransferFunction transfer_function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("variable") || !j["variable"].is_string() ||
      !j.contains("points") || !j["points"].is_array()) {
    throw Error(ErrorCode::BadPayload, "transfer function needs 'variable' and 'points'");
  }
  std::vector<ControlPoint> points;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 5) {
      throw Error(ErrorCode::BadPayload, "control point must be [value, r, g, b, a]");
    }
    for (const auto& c : p) {
      if (!c.is_number()) throw Error(ErrorCode::BadPayload, "control point entries must be numbers");
    }
    points.push_back({p[0].get<double>(), Rgba(p[1].get<float>(), p[2].get<float>(),
                                               p[3].get<float>(), p[4].get<float>())});
  }
  double scale = kDefaultOpacityScale;
  if (j.contains("opacity_scale")) {
    if (!j["opacity_scale"].is_number()) throw Error(ErrorCode::BadPayload, "opacity_scale must be a number");
    scale = j["opacity_scale"].get<double>();
  }
  return TransferFunction(j["variable"].get<std::string>(), std::move(points), scale);
}

}  // namespace mantlevis::render
