#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mantlevis/core/error.hpp"
#include "mantlevis/pathlines/pathline.hpp"

namespace mantlevis::brush {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Names of the spatial axes that can be brushed besides stored variables.
inline constexpr std::array<const char*, 4> kSpatialAxes = {"x", "y", "z", "depth"};
bool is_spatial_axis(const std::string& name);

/// Process-wide, strictly increasing stamp shared by every versioned piece of
/// render state, so the max over constituents changes whenever any one does.
std::uint64_t next_generation();

/// Closed interval; infinite ends mean unbounded.
struct Interval {
  double lo{-kUnbounded};
  double hi{kUnbounded};

  bool contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Interval&) const = default;
};

/// Immutable snapshot of per-variable restrictions. Every derived snapshot
/// carries a fresh generation.
class BrushSet {
 public:
  BrushSet();
  /// Throws InvalidArgument when an interval has lo > hi, a NaN end, or an end
  /// at the wrong infinity.
  explicit BrushSet(std::map<std::string, Interval> entries);

  const std::map<std::string, Interval>& entries() const { return entries_; }
  std::uint64_t generation() const { return generation_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::optional<Interval> interval(const std::string& name) const;

  BrushSet with(const std::string& name, Interval interval) const;
  BrushSet without(const std::string& name) const;

  /// `lookup(name)` returns std::optional<double>; a restricted variable with
  /// no value throws MissingVariable.
  template <typename Lookup>
  bool evaluate_with(Lookup&& lookup) const {
    for (const auto& [name, iv] : entries_) {
      const std::optional<double> v = lookup(name);
      if (!v) throw Error(ErrorCode::MissingVariable, "brush variable '" + name + "' has no value");
      if (!iv.contains(*v)) return false;
    }
    return true;
  }

  bool evaluate(const std::map<std::string, double>& values) const;

  /// Equal restrictions, regardless of generation.
  bool same_entries(const BrushSet& other) const { return entries_ == other.entries_; }

 private:
  std::map<std::string, Interval> entries_;
  std::uint64_t generation_;
};

inline bool evaluate(const BrushSet& brush, const std::map<std::string, double>& values) {
  return brush.evaluate(values);
}

/// {"var": [lo, hi]} with null for unbounded ends.
nlohmann::json to_json(const BrushSet& brush);
/// Throws BadPayload on malformed input, InvalidArgument on bad intervals.
BrushSet brush_from_json(const nlohmann::json& j);

/// Indices of lines spawned in (current - window, current] whose first vertex
/// satisfies both the volume brush and the pathline brush. Throws MissingVariable.
std::vector<std::size_t> filter_pathlines(std::span<const pathlines::Pathline> lines,
                                          const BrushSet& volume_brush, const BrushSet& line_brush,
                                          std::size_t current_step, double r_outer,
                                          std::size_t window = pathlines::kDefaultWindowSteps);

}  // namespace mantlevis::brush
