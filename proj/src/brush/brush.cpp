#include "mantlevis/brush/brush.hpp"

#include <atomic>
#include <cmath>

namespace mantlevis::brush {

bool is_spatial_axis(const std::string& name) {
  for (const char* a : kSpatialAxes) {
    if (name == a) return true;
  }
  return false;
}

std::uint64_t next_generation() {
  static std::atomic<std::uint64_t> counter{0};
  return counter.fetch_add(1) + 1;
}

namespace {

void validate(const std::string& name, const Interval& iv) {
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi || iv.lo == kUnbounded ||
      iv.hi == -kUnbounded) {
    throw Error(ErrorCode::InvalidArgument, "invalid interval for '" + name + "'");
  }
}

}  // namespace

BrushSet::BrushSet() : generation_(next_generation()) {}

BrushSet::BrushSet(std::map<std::string, Interval> entries)
    : entries_(std::move(entries)), generation_(next_generation()) {
  for (const auto& [name, iv] : entries_) validate(name, iv);
}

std::optional<Interval> BrushSet::interval(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

BrushSet BrushSet::with(const std::string& name, Interval interval) const {
  auto entries = entries_;
  entries.insert_or_assign(name, interval);
  return BrushSet(std::move(entries));
}

BrushSet BrushSet::without(const std::string& name) const {
  auto entries = entries_;
  entries.erase(name);
  return BrushSet(std::move(entries));
}

bool BrushSet::evaluate(const std::map<std::string, double>& values) const {
  return evaluate_with([&](const std::string& name) -> std::optional<double> {
    const auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  });
}

nlohmann::json to_json(const BrushSet& brush) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, iv] : brush.entries()) {
    nlohmann::json lo = std::isinf(iv.lo) ? nlohmann::json(nullptr) : nlohmann::json(iv.lo);
    nlohmann::json hi = std::isinf(iv.hi) ? nlohmann::json(nullptr) : nlohmann::json(iv.hi);
    j[name] = nlohmann::json::array({lo, hi});
  }
  return j;
}

BrushSet brush_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::BadPayload, "brush must be an object");
  std::map<std::string, Interval> entries;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_array() || value.size() != 2) {
      throw Error(ErrorCode::BadPayload, "brush entry '" + name + "' must be [lo, hi]");
    }
    Interval iv;
    for (int e = 0; e < 2; ++e) {
      const auto& end = value[std::size_t(e)];
      if (end.is_null()) continue;
      if (!end.is_number()) {
        throw Error(ErrorCode::BadPayload, "brush entry '" + name + "' has a non-numeric bound");
      }
      (e == 0 ? iv.lo : iv.hi) = end.get<double>();
    }
    entries.emplace(name, iv);
  }
  return BrushSet(std::move(entries));
}

std::vector<std::size_t> filter_pathlines(std::span<const pathlines::Pathline> lines,
                                          const BrushSet& volume_brush, const BrushSet& line_brush,
                                          std::size_t current_step, double r_outer,
                                          std::size_t window) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.spawn_step > current_step || line.spawn_step + window <= current_step) continue;
    if (line.vertex_count() == 0) continue;
    auto lookup = [&](const std::string& name) { return line.value(name, 0, r_outer); };
    if (volume_brush.evaluate_with(lookup) && line_brush.evaluate_with(lookup)) kept.push_back(i);
  }
  return kept;
}

}  // namespace mantlevis::brush
