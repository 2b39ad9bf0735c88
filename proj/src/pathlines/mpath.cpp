#include "mantlevis/pathlines/mpath.hpp"

#include <cstring>

namespace mantlevis::pathlines {

Bytes write_pathlines(std::span<const Pathline> lines) {
  const std::vector<std::string> empty;
  const auto& names = lines.empty() ? empty : lines.front().scalar_names;
  ByteWriter w;
  w.put_raw(std::string_view(kMpathMagic, sizeof(kMpathMagic)));
  w.put(std::uint16_t(names.size()));
  for (const auto& n : names) w.put_name(n);
  w.put(std::uint32_t(lines.size()));
  for (const auto& line : lines) {
    if (line.scalar_names != names) {
      throw Error(ErrorCode::InvalidArgument, "pathlines carry different scalar tables");
    }
    w.put(std::uint32_t(line.vertex_count()));
    w.put(std::uint32_t(line.spawn_step));
    for (std::size_t v = 0; v < line.vertex_count(); ++v) {
      const Eigen::Vector3d& p = line.positions[v];
      w.put(float(p.x()));
      w.put(float(p.y()));
      w.put(float(p.z()));
      w.put(float(line.times[v]));
      w.put(float(line.ages[v]));
      for (std::size_t k = 0; k < names.size(); ++k) w.put(line.scalar(v, k));
    }
  }
  return w.take();
}

std::vector<Pathline> read_pathlines(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMpathMagic) ||
      std::memcmp(bytes.data(), kMpathMagic, sizeof(kMpathMagic)) != 0) {
    throw FormatError(ErrorCode::BadMagic, 0, "not an MPATH file");
  }
  ByteReader r(bytes);
  r.get_raw(sizeof(kMpathMagic));
  std::vector<std::string> names(r.get<std::uint16_t>());
  for (auto& n : names) n = r.get_name();
  const auto count = r.get<std::uint32_t>();
  std::vector<Pathline> lines;
  lines.reserve(count);
  for (std::uint32_t l = 0; l < count; ++l) {
    Pathline line;
    line.scalar_names = names;
    const auto vertices = r.get<std::uint32_t>();
    line.spawn_step = r.get<std::uint32_t>();
    r.require(std::size_t(vertices) * (5 + names.size()) * sizeof(float));
    for (std::uint32_t v = 0; v < vertices; ++v) {
      const double x = r.get<float>();
      const double y = r.get<float>();
      const double z = r.get<float>();
      line.positions.emplace_back(x, y, z);
      line.times.push_back(r.get<float>());
      line.ages.push_back(r.get<float>());
      for (std::size_t k = 0; k < names.size(); ++k) line.scalars.push_back(r.get<float>());
    }
    lines.push_back(std::move(line));
  }
  if (r.remaining() != 0) {
    throw FormatError(ErrorCode::TrailingData, r.offset(), "unexpected bytes after the last line");
  }
  return lines;
}

void write_pathlines_file(const std::string& path, std::span<const Pathline> lines) {
  write_file(path, write_pathlines(lines));
}

std::vector<Pathline> read_pathlines_file(const std::string& path) {
  const Bytes bytes = read_file(path);
  try {
    return read_pathlines(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.code(), e.offset(), path + ": " + e.detail());
  }
}

}  // namespace mantlevis::pathlines
