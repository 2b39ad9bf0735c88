#include "mantlevis/brush/presets.hpp"

#include "mantlevis/ingest/synthetic.hpp"
#include "mantlevis/preprocess/derived.hpp"

namespace mantlevis::brush {

namespace {

using ingest::kExpansivity;
using ingest::kSpinDensityAnomaly;
using ingest::kTempAnomaly;
using preprocess::kDepth;
using preprocess::kRadialVelocity;

// Closed intervals: "negative" is encoded as hi = 0 and "positive" as lo = 0.
constexpr Interval kNonPositive{-kUnbounded, 0.0};
constexpr Interval kNonNegative{0.0, kUnbounded};
// 660 km discontinuity +/- 100 km.
constexpr Interval kAround660{560.0, 760.0};

}  // namespace

TaskPreset preset(std::string_view id) {
  if (id == "task1") {
    return {"task1", "cold slabs stagnating or sinking near the 660 km boundary",
            BrushSet({{kDepth, kAround660}, {kRadialVelocity, kNonPositive}, {kTempAnomaly, kNonPositive}}),
            kRadialVelocity};
  }
  if (id == "task2") {
    return {"task2", "cold downwellings over the whole mantle, colored by spin-transition density",
            BrushSet({{kTempAnomaly, kNonPositive}}), kSpinDensityAnomaly};
  }
  if (id == "task3") {
    return {"task3", "hot plumes over the whole mantle, colored by spin-transition density",
            BrushSet({{kTempAnomaly, kNonNegative}}), kSpinDensityAnomaly};
  }
  if (id == "task4") {
    return {"task4", "hot plumes near the 660 km boundary, colored by radial velocity",
            BrushSet({{kDepth, kAround660}, {kTempAnomaly, kNonNegative}}), kRadialVelocity};
  }
  if (id == "task5_positive" || id == "task5") {
    return {"task5_positive", "positive thermal expansivity, colored by temperature anomaly",
            BrushSet({{kExpansivity, kNonNegative}}), kTempAnomaly};
  }
  if (id == "task5_negative") {
    return {"task5_negative", "negative thermal expansivity, colored by temperature anomaly",
            BrushSet({{kExpansivity, kNonPositive}}), kTempAnomaly};
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(id) + "'");
}

std::vector<std::string> preset_ids() {
  return {"task1", "task2", "task3", "task4", "task5_positive", "task5_negative"};
}

nlohmann::json to_json(const TaskPreset& p) {
  return {{"id", p.id}, {"description", p.description}, {"brush", to_json(p.brush)},
          {"color", p.color_variable}};
}

TaskPreset preset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("brush") || !j.contains("color") || !j["color"].is_string()) {
    throw Error(ErrorCode::BadPayload, "preset needs 'brush' and 'color'");
  }
  TaskPreset p;
  p.id = j.value("id", "");
  p.description = j.value("description", "");
  p.brush = brush_from_json(j["brush"]);
  p.color_variable = j["color"].get<std::string>();
  return p;
}

}  // namespace mantlevis::brush
