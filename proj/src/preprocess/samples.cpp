#include "mantlevis/preprocess/samples.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>

#include "mantlevis/core/error.hpp"
#include "mantlevis/preprocess/derived.hpp"

namespace mantlevis::preprocess {

std::size_t SampleTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? std::string::npos : std::size_t(it - columns.begin());
}

std::vector<std::size_t> reservoir_select(std::size_t total, std::size_t cap, std::uint64_t seed) {
  std::vector<std::size_t> picked;
  if (cap >= total) {
    picked.resize(total);
    for (std::size_t i = 0; i < total; ++i) picked[i] = i;
    return picked;
  }
  picked.resize(cap);
  for (std::size_t i = 0; i < cap; ++i) picked[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = cap; i < total; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i)(rng);
    if (j < cap) picked[j] = i;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

SampleTable extract_samples(const VolumeTimeStep& volume, std::size_t cap, std::uint64_t seed) {
  const ShellGrid& g = volume.grid();
  SampleTable table;
  table.seed = seed;
  table.nodes = reservoir_select(g.node_count(), cap, seed);

  std::vector<const ScalarField*> fields;
  std::optional<ScalarField> analytic_depth;
  table.columns = {"x", "y", "z", kDepth};
  if (const ScalarField* d = volume.find_field(kDepth)) {
    fields.push_back(d);
  } else {
    analytic_depth = compute_depth(volume);
    fields.push_back(&*analytic_depth);
  }
  for (const auto& name : volume.variable_names()) {
    if (name == kDepth) continue;
    table.columns.push_back(name);
    fields.push_back(volume.find_field(name));
  }

  table.values.reserve(table.nodes.size() * table.columns.size());
  for (std::size_t node : table.nodes) {
    const Eigen::Vector3f p = g.node_position(node).cast<float>();
    table.values.insert(table.values.end(), {p.x(), p.y(), p.z()});
    for (const ScalarField* f : fields) table.values.push_back((*f)[node]);
  }
  return table;
}

std::string format_msamp(const SampleTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  char buf[32];
  const std::size_t cols = table.columns.size();
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof(buf), "%.9g", double(table.at(r, c)));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

SampleTable parse_msamp(const std::string& text) {
  SampleTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, "MSAMP has no header");
  {
    std::istringstream hs(line);
    std::string name;
    while (std::getline(hs, name, ',')) table.columns.push_back(name);
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    std::size_t count = 0;
    const char* p = line.c_str();
    while (*p) {
      char* end = nullptr;
      const float v = std::strtof(p, &end);
      if (end == p) {
        throw Error(ErrorCode::InvalidArgument, "MSAMP row " + std::to_string(row) + " is not numeric");
      }
      table.values.push_back(v);
      ++count;
      p = end;
      if (*p == ',') ++p;
    }
    if (count != table.columns.size()) {
      throw Error(ErrorCode::InvalidArgument, "MSAMP row " + std::to_string(row) + " has " +
                                                  std::to_string(count) + " values");
    }
  }
  return table;
}

}  // namespace mantlevis::preprocess
