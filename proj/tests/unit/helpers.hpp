#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mantlevis/core/field.hpp"

namespace testing {

inline mantlevis::ShellGrid shell(std::uint32_t n_r, std::uint32_t n_lat, std::uint32_t n_lon) {
  return {n_r, n_lat, n_lon, mantlevis::kCoreMantleBoundaryKm, mantlevis::kEarthRadiusKm};
}

inline std::vector<float> random_values(std::size_t n, std::uint64_t seed, float lo = -1.0f, float hi = 1.0f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> d(lo, hi);
  std::vector<float> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline mantlevis::ScalarField random_field(const std::string& name, const mantlevis::ShellGrid& g,
                                           std::uint64_t seed) {
  return {name, g, random_values(g.node_count(), seed)};
}

template <typename F>
mantlevis::ScalarField field_from(const std::string& name, const mantlevis::ShellGrid& g, F&& f) {
  std::vector<float> v(g.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = float(f(i));
  return {name, g, std::move(v)};
}

/// Fresh empty directory under the system temp dir.
inline std::string temp_dir(const std::string& tag) {
  const auto p = std::filesystem::temp_directory_path() /
                 ("mantlevis_test_" + tag + "_" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

/// Point with radius in [r_inner, r_outer] and uniform direction.
inline Eigen::Vector3d random_interior_point(std::mt19937_64& rng, const mantlevis::ShellGrid& g) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(g.r_inner, g.r_outer);
  Eigen::Vector3d d(n(rng), n(rng), n(rng));
  return u(rng) * d.normalized();
}

}  // namespace testing
