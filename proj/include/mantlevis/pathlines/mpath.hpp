#pragma once

#include <span>
#include <string>
#include <vector>

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/pathlines/pathline.hpp"

namespace mantlevis::pathlines {

// MPATH layout, little-endian:
//   "MPTH1" 0x00 | u16 scalar count | (u16 length + UTF-8 name) per scalar |
//   u32 line count | per line: u32 vertex count, u32 spawn step, then per
//   vertex f32 x, y, z, time, age, followed by the k scalars.
inline constexpr char kMpathMagic[6] = {'M', 'P', 'T', 'H', '1', '\0'};

/// All lines must share one scalar-name table. Throws InvalidArgument.
Bytes write_pathlines(std::span<const Pathline> lines);
/// Throws FormatError (BadMagic, TruncatedFile, TrailingData).
std::vector<Pathline> read_pathlines(std::span<const std::uint8_t> bytes);

void write_pathlines_file(const std::string& path, std::span<const Pathline> lines);
std::vector<Pathline> read_pathlines_file(const std::string& path);

}  // namespace mantlevis::pathlines
