#include "mantlevis/ingest/mvol.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace mantlevis::ingest {

Bytes write_volume(const VolumeTimeStep& volume) {
  const ShellGrid& g = volume.grid();
  const std::vector<std::string> names = volume.variable_names();

  ByteWriter w;
  w.put_raw(std::string_view(kMvolMagic, sizeof(kMvolMagic)));
  w.put(kMvolVersion);
  w.put(g.n_r);
  w.put(g.n_lat);
  w.put(g.n_lon);
  w.put(g.r_inner);
  w.put(g.r_outer);
  w.put(volume.time());
  if (names.size() > 0xFFFF) throw Error(ErrorCode::InvalidArgument, "too many variables");
  w.put(std::uint16_t(names.size()));
  for (const auto& name : names) w.put_name(name);
  for (const auto& name : names) w.put_array(volume.find_field(name)->values());
  return w.take();
}

VolumeTimeStep read_volume(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < sizeof(kMvolMagic) ||
      std::memcmp(bytes.data(), kMvolMagic, sizeof(kMvolMagic)) != 0) {
    throw FormatError(ErrorCode::BadMagic, 0, "not an MVOL file");
  }
  r.get_raw(sizeof(kMvolMagic));
  const std::size_t version_offset = r.offset();
  const auto version = r.get<std::uint16_t>();
  if (version != kMvolVersion) {
    throw FormatError(ErrorCode::UnsupportedVersion, version_offset,
                      "unsupported MVOL version " + std::to_string(version));
  }

  ShellGrid grid;
  grid.n_r = r.get<std::uint32_t>();
  grid.n_lat = r.get<std::uint32_t>();
  grid.n_lon = r.get<std::uint32_t>();
  grid.r_inner = r.get<double>();
  grid.r_outer = r.get<double>();
  const double time = r.get<double>();
  try {
    grid.validate();
  } catch (const Error& e) {
    throw FormatError(ErrorCode::InvalidArgument, sizeof(kMvolMagic) + 2, e.what());
  }

  const auto count = r.get<std::uint16_t>();
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::uint16_t i = 0; i < count; ++i) {
    const std::size_t at = r.offset();
    std::string name = r.get_name();
    if (!seen.insert(name).second) {
      throw FormatError(ErrorCode::DuplicateVariable, at, "duplicate variable '" + name + "'");
    }
    names.push_back(std::move(name));
  }

  const std::size_t n = grid.node_count();
  const std::size_t payload = n * sizeof(float) * names.size();
  if (r.remaining() < payload) {
    throw FormatError(ErrorCode::TruncatedFile, bytes.size(),
                      "payload needs " + std::to_string(payload) + " bytes, file has " +
                          std::to_string(r.remaining()));
  }
  if (r.remaining() > payload) {
    throw FormatError(ErrorCode::TrailingData, r.offset() + payload,
                      std::to_string(r.remaining() - payload) + " unexpected bytes after payload");
  }

  std::vector<ScalarField> scalars;
  std::optional<ScalarField> vx, vy, vz;
  for (const auto& name : names) {
    std::vector<float> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t at = r.offset();
      values[i] = r.get<float>();
      if (!std::isfinite(values[i])) {
        throw FormatError(ErrorCode::NonFiniteValue, at,
                          "non-finite value in '" + name + "' at node " + std::to_string(i));
      }
    }
    ScalarField field(name, grid, std::move(values));
    if (name == kVelocityX) vx = std::move(field);
    else if (name == kVelocityY) vy = std::move(field);
    else if (name == kVelocityZ) vz = std::move(field);
    else scalars.push_back(std::move(field));
  }

  std::optional<VectorField> velocity;
  if (vx && vy && vz) {
    velocity.emplace("velocity", std::move(*vx), std::move(*vy), std::move(*vz));
  } else {
    // Incomplete velocity stays available as plain scalars.
    for (auto* c : {&vx, &vy, &vz}) {
      if (*c) scalars.push_back(std::move(**c));
    }
  }
  return VolumeTimeStep(grid, time, std::move(scalars), std::move(velocity));
}

VolumeTimeStep read_volume_file(const std::string& path) {
  const Bytes bytes = read_file(path);
  try {
    return read_volume(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.code(), e.offset(), path + ": " + e.detail());
  }
}

void write_volume_file(const std::string& path, const VolumeTimeStep& volume) {
  write_file(path, write_volume(volume));
}

}  // namespace mantlevis::ingest
