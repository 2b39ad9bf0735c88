#include "mantlevis/ingest/series.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/ingest/mvol.hpp"

namespace mantlevis::ingest {

namespace fs = std::filesystem;

std::string format_series_index(const std::vector<SeriesEntry>& entries) {
  std::string out;
  char buf[64];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.time);
    out += buf;
    out += ' ';
    out += e.filename;
    out += '\n';
  }
  return out;
}

std::vector<SeriesEntry> parse_series_index(const std::string& text) {
  std::vector<SeriesEntry> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    SeriesEntry e;
    if (!(ls >> e.time >> e.filename)) {
      throw Error(ErrorCode::InvalidArgument,
                  "series index line " + std::to_string(line_no) + " is malformed");
    }
    if (!entries.empty() && !(e.time > entries.back().time)) {
      throw Error(ErrorCode::InvalidArgument,
                  "series index times must ascend (line " + std::to_string(line_no) + ")");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<SeriesEntry> read_series_index(const std::string& dir) {
  const fs::path path = fs::path(dir) / kSeriesIndexName;
  if (!fs::exists(path)) {
    throw Error(ErrorCode::Io, "'" + dir + "' has no " + kSeriesIndexName);
  }
  return parse_series_index(read_text_file(path.string()));
}

void write_series_index(const std::string& dir, const std::vector<SeriesEntry>& entries) {
  write_text_file((fs::path(dir) / kSeriesIndexName).string(), format_series_index(entries));
}

std::string step_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "step_%04zu.mvol", index);
  return buf;
}

void save_series(const std::string& dir, const std::vector<VolumeTimeStep>& steps) {
  fs::create_directories(dir);
  std::vector<SeriesEntry> entries;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    entries.push_back({steps[i].time(), step_filename(i)});
    write_volume_file((fs::path(dir) / entries.back().filename).string(), steps[i]);
  }
  write_series_index(dir, entries);
}

std::vector<VolumeTimeStep> load_series(const std::string& dir) {
  std::vector<VolumeTimeStep> steps;
  for (const auto& e : read_series_index(dir)) {
    steps.push_back(read_volume_file((fs::path(dir) / e.filename).string()));
  }
  return steps;
}

}  // namespace mantlevis::ingest
