#include "mantlevis/core/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mantlevis/core/error.hpp"

namespace mantlevis {

ScalarField::ScalarField(std::string name, ShellGrid grid, std::vector<float> values)
    : name_(std::move(name)), grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.node_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "field '" + name_ + "' has " + std::to_string(values_.size()) +
                    " values, grid has " + std::to_string(grid_.node_count()) + " nodes");
  }
  min_ = values_.front();
  max_ = values_.front();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const float v = values_[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFiniteValue,
                  "field '" + name_ + "' has a non-finite value at node " + std::to_string(i));
    }
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
}

ScalarField ScalarField::renamed(std::string name) const {
  ScalarField copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool ScalarField::operator==(const ScalarField& other) const {
  // Bitwise comparison so that -0.0 and 0.0 are distinguished after round trips.
  return name_ == other.name_ && grid_ == other.grid_ && values_.size() == other.values_.size() &&
         std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(float)) == 0;
}

VectorField::VectorField(std::string name, ScalarField x, ScalarField y, ScalarField z)
    : name_(std::move(name)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (!(x_.grid() == y_.grid()) || !(x_.grid() == z_.grid())) {
    throw Error(ErrorCode::InvalidArgument, "velocity components must share one grid");
  }
}

VolumeTimeStep::VolumeTimeStep(ShellGrid grid, double time_myr, std::vector<ScalarField> scalars,
                               std::optional<VectorField> velocity)
    : grid_(grid), time_(time_myr), velocity_(std::move(velocity)) {
  grid_.validate();
  if (!std::isfinite(time_)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  for (auto& f : scalars) {
    if (!(f.grid() == grid_)) {
      throw Error(ErrorCode::InvalidArgument, "field '" + f.name() + "' is on a different grid");
    }
    if (f.name() == kVelocityX || f.name() == kVelocityY || f.name() == kVelocityZ) {
      if (velocity_) {
        throw Error(ErrorCode::DuplicateVariable,
                    "scalar '" + f.name() + "' collides with a velocity component");
      }
    }
    std::string name = f.name();
    if (!scalars_.emplace(name, std::move(f)).second) {
      throw Error(ErrorCode::DuplicateVariable, "duplicate variable '" + name + "'");
    }
  }
  if (velocity_ && !(velocity_->grid() == grid_)) {
    throw Error(ErrorCode::InvalidArgument, "velocity is on a different grid");
  }
}

const ScalarField& VolumeTimeStep::scalar(const std::string& name) const {
  auto it = scalars_.find(name);
  if (it == scalars_.end()) {
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
  }
  return it->second;
}

const ScalarField* VolumeTimeStep::find_field(const std::string& name) const {
  if (auto it = scalars_.find(name); it != scalars_.end()) return &it->second;
  if (velocity_) {
    if (name == kVelocityX) return &velocity_->x();
    if (name == kVelocityY) return &velocity_->y();
    if (name == kVelocityZ) return &velocity_->z();
  }
  return nullptr;
}

std::vector<std::string> VolumeTimeStep::variable_names() const {
  std::vector<std::string> names;
  names.reserve(scalars_.size() + 3);
  for (const auto& [name, field] : scalars_) names.push_back(name);
  if (velocity_) {
    names.emplace_back(kVelocityX);
    names.emplace_back(kVelocityY);
    names.emplace_back(kVelocityZ);
  }
  std::sort(names.begin(), names.end());
  return names;
}

VolumeTimeStep VolumeTimeStep::with_scalar(ScalarField field) const {
  if (!(field.grid() == grid_)) {
    throw Error(ErrorCode::InvalidArgument, "field '" + field.name() + "' is on a different grid");
  }
  VolumeTimeStep copy = *this;
  std::string name = field.name();
  copy.scalars_.insert_or_assign(std::move(name), std::move(field));
  return copy;
}

}  // namespace mantlevis
