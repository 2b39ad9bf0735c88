#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mantlevis/brush/brush.hpp"

namespace mantlevis::brush {

/// A named investigation: a brush over canonical variables plus the variable
/// the transfer function colors by.
struct TaskPreset {
  std::string id;
  std::string description;
  BrushSet brush;
  std::string color_variable;
};

/// Ids: task1 .. task4, task5_positive, task5_negative ("task5" is an alias of
/// task5_positive). Throws UnknownPreset.
TaskPreset preset(std::string_view id);
std::vector<std::string> preset_ids();

/// {"id": ..., "description": ..., "brush": {...}, "color": ...}
nlohmann::json to_json(const TaskPreset& preset);
/// Throws BadPayload.
TaskPreset preset_from_json(const nlohmann::json& j);

}  // namespace mantlevis::brush
