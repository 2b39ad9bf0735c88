#pragma once

#include <string>
#include <vector>

#include "mantlevis/core/field.hpp"

namespace mantlevis::ingest {

/// Name of the per-directory index: one "<time_Myr> <filename>" line per step,
/// ascending in time.
inline constexpr const char* kSeriesIndexName = "index.txt";

struct SeriesEntry {
  double time{0};
  std::string filename;

  bool operator==(const SeriesEntry&) const = default;
};

std::string format_series_index(const std::vector<SeriesEntry>& entries);
/// Throws InvalidArgument on malformed lines or non-ascending times.
std::vector<SeriesEntry> parse_series_index(const std::string& text);

std::vector<SeriesEntry> read_series_index(const std::string& dir);
void write_series_index(const std::string& dir, const std::vector<SeriesEntry>& entries);

/// Default file name of step `index` within a series directory.
std::string step_filename(std::size_t index);

/// Writes one MVOL file per step plus the index; creates `dir` if needed.
void save_series(const std::string& dir, const std::vector<VolumeTimeStep>& steps);
std::vector<VolumeTimeStep> load_series(const std::string& dir);

}  // namespace mantlevis::ingest
