#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mantlevis/core/grid.hpp"

namespace mantlevis {

inline constexpr const char* kVelocityX = "vx";
inline constexpr const char* kVelocityY = "vy";
inline constexpr const char* kVelocityZ = "vz";

/// One f32 value per grid node in storage order, with its cached range.
/// Immutable after construction.
class ScalarField {
 public:
  /// Throws InvalidArgument on a size mismatch and NonFiniteValue on NaN/Inf.
  ScalarField(std::string name, ShellGrid grid, std::vector<float> values);

  const std::string& name() const { return name_; }
  const ShellGrid& grid() const { return grid_; }
  std::span<const float> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  float operator[](std::size_t i) const { return values_[i]; }
  float min() const { return min_; }
  float max() const { return max_; }

  ScalarField renamed(std::string name) const;

  bool operator==(const ScalarField& other) const;

 private:
  std::string name_;
  ShellGrid grid_;
  std::vector<float> values_;
  float min_{0};
  float max_{0};
};

/// Cartesian velocity in km/Myr.
class VectorField {
 public:
  VectorField(std::string name, ScalarField x, ScalarField y, ScalarField z);

  const std::string& name() const { return name_; }
  const ShellGrid& grid() const { return x_.grid(); }
  const ScalarField& x() const { return x_; }
  const ScalarField& y() const { return y_; }
  const ScalarField& z() const { return z_; }
  Eigen::Vector3d at(std::size_t i) const { return {x_[i], y_[i], z_[i]}; }

  bool operator==(const VectorField&) const = default;

 private:
  std::string name_;
  ScalarField x_;
  ScalarField y_;
  ScalarField z_;
};

class VolumeTimeStep {
 public:
  VolumeTimeStep(ShellGrid grid, double time_myr, std::vector<ScalarField> scalars,
                 std::optional<VectorField> velocity);

  const ShellGrid& grid() const { return grid_; }
  double time() const { return time_; }
  const std::map<std::string, ScalarField>& scalars() const { return scalars_; }
  const std::optional<VectorField>& velocity() const { return velocity_; }

  bool has_scalar(const std::string& name) const { return scalars_.count(name) != 0; }
  /// Throws UnknownVariable.
  const ScalarField& scalar(const std::string& name) const;
  /// Scalars plus velocity components, or nullptr.
  const ScalarField* find_field(const std::string& name) const;
  /// Sorted names of every stored field including vx, vy, vz.
  std::vector<std::string> variable_names() const;

  /// Copy with `field` added or replaced.
  VolumeTimeStep with_scalar(ScalarField field) const;

  bool operator==(const VolumeTimeStep&) const = default;

 private:
  ShellGrid grid_;
  double time_;
  std::map<std::string, ScalarField> scalars_;
  std::optional<VectorField> velocity_;
};

}  // namespace mantlevis
