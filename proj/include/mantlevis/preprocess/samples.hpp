#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mantlevis/core/field.hpp"

namespace mantlevis::preprocess {

inline constexpr std::size_t kDefaultSampleCap = 100000;
inline constexpr std::uint64_t kDefaultSampleSeed = 42;

/// Rows of node values for the parallel-coordinates plot. Columns are
/// x, y, z, depth, then every other variable in name order.
struct SampleTable {
  std::vector<std::string> columns;
  std::vector<std::size_t> nodes;  // source node per row, ascending
  std::vector<float> values;       // row-major, rows() x columns.size()
  std::uint64_t seed{0};

  std::size_t rows() const { return columns.empty() ? 0 : values.size() / columns.size(); }
  float at(std::size_t row, std::size_t col) const { return values[row * columns.size() + col]; }
  /// Column position, or npos.
  std::size_t column(const std::string& name) const;
};

/// Uniform selection of min(total, cap) node indices without replacement by a
/// seeded reservoir pass in storage order. Returned ascending.
std::vector<std::size_t> reservoir_select(std::size_t total, std::size_t cap, std::uint64_t seed);

SampleTable extract_samples(const VolumeTimeStep& volume, std::size_t cap = kDefaultSampleCap,
                            std::uint64_t seed = kDefaultSampleSeed);

/// MSAMP: UTF-8 CSV, a header row of column names, then one row per sample
/// with every value printed as %.9g (round-trips f32 exactly).
std::string format_msamp(const SampleTable& table);
/// Throws InvalidArgument on ragged or non-numeric rows. Node indices and the
/// seed are not stored in MSAMP and come back empty/zero.
SampleTable parse_msamp(const std::string& text);

}  // namespace mantlevis::preprocess
