#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace mantlevis::render {

using Rgba = Eigen::Vector4f;

struct ControlPoint {
  double value{0};
  Rgba rgba{Rgba::Zero()};

  bool operator==(const ControlPoint& o) const { return value == o.value && rgba == o.rgba; }
};

/// Piecewise-linear map from one variable to straight RGBA, clamped outside
/// the control-point range. Alpha is an extinction weight scaled by
/// `opacity_scale` (per km) during marching.
class TransferFunction {
 public:
  /// Throws InvalidArgument unless there are >= 2 points with strictly
  /// increasing values and components in [0, 1], and opacity_scale >= 0.
  TransferFunction(std::string variable, std::vector<ControlPoint> points, double opacity_scale);

  const std::string& variable() const { return variable_; }
  const std::vector<ControlPoint>& points() const { return points_; }
  double opacity_scale() const { return opacity_scale_; }

  Rgba lookup(double value) const;

  bool operator==(const TransferFunction&) const = default;

 private:
  std::string variable_;
  std::vector<ControlPoint> points_;
  double opacity_scale_;
};

inline constexpr double kDefaultOpacityScale = 0.002;  // per km

/// Blue-white-red ramp over [-m, m] with m = max(|lo|, |hi|). Alpha is 1 at
/// the ends and 0.05 at the center.
TransferFunction diverging_transfer_function(const std::string& variable, double lo, double hi,
                                             double opacity_scale = kDefaultOpacityScale);

/// {"variable": v, "points": [[value, r, g, b, a], ...], "opacity_scale": s}
nlohmann::json to_json(const TransferFunction& tf);
/// Throws BadPayload or InvalidArgument.
TransferFunction transfer_function_from_json(const nlohmann::json& j);

}  // namespace mantlevis::render
