#pragma once

#include <span>
#include <string>

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/core/field.hpp"

namespace mantlevis::ingest {

// MVOL layout, all integers and floats little-endian:
//   "MVOL1" 0x00 | u16 version | u32 n_r, n_lat, n_lon | f64 r_inner, r_outer |
//   f64 time | u16 variable count | (u16 length + UTF-8 name) per variable |
//   one f32 array of node_count values per variable, in table order.
// The variable table is sorted by name; velocity is stored as vx, vy, vz.
inline constexpr char kMvolMagic[6] = {'M', 'V', 'O', 'L', '1', '\0'};
inline constexpr std::uint16_t kMvolVersion = 1;

Bytes write_volume(const VolumeTimeStep& volume);

/// Throws FormatError with BadMagic, UnsupportedVersion, TruncatedFile,
/// TrailingData, DuplicateVariable or NonFiniteValue.
VolumeTimeStep read_volume(std::span<const std::uint8_t> bytes);

VolumeTimeStep read_volume_file(const std::string& path);
void write_volume_file(const std::string& path, const VolumeTimeStep& volume);

}  // namespace mantlevis::ingest
