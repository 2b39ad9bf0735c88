#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "mantlevis/topology/extrema.hpp"

using namespace mantlevis;
using namespace mantlevis::topology;

namespace {

// Brute force: visit every index offset in [-1, 1]^3, wrap longitude,
// skip out-of-range radius/latitude, skip the node itself and repeats.
std::vector<std::pair<std::size_t, ExtremumKind>> oracle(const ScalarField& f) {
  const ShellGrid& g = f.grid();
  std::vector<std::pair<std::size_t, ExtremumKind>> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const NodeCoord c = g.coord(i);
    bool greater = true, less = true;
    for (int dr = -1; dr <= 1; ++dr)
      for (int da = -1; da <= 1; ++da)
        for (int dlo = -1; dlo <= 1; ++dlo) {
          const int r = int(c.ir) + dr;
          const int a = int(c.ilat) + da;
          if (r < 0 || r >= int(g.n_r) || a < 0 || a >= int(g.n_lat)) continue;
          const int o = (int(c.ilon) + dlo + int(g.n_lon)) % int(g.n_lon);
          const std::size_t j = g.index(std::uint32_t(r), std::uint32_t(a), std::uint32_t(o));
          if (j == i) continue;
          if (!(f[i] > f[j])) greater = false;
          if (!(f[i] < f[j])) less = false;
        }
    if (greater) out.emplace_back(i, ExtremumKind::maximum);
    if (less) out.emplace_back(i, ExtremumKind::minimum);
  }
  return out;
}

std::vector<std::pair<std::size_t, ExtremumKind>> summary(const std::vector<CriticalPoint>& pts) {
  std::vector<std::pair<std::size_t, ExtremumKind>> out;
  for (const auto& p : pts) out.emplace_back(p.node, p.kind);
  return out;
}

ScalarField bumps(const ShellGrid& g, std::vector<std::pair<std::size_t, double>> centers) {
  return testing::field_from("b", g, [&](std::size_t i) {
    const NodeCoord c = g.coord(i);
    double v = 0;
    for (const auto& [node, amp] : centers) {
      const NodeCoord k = g.coord(node);
      const double dr = double(c.ir) - k.ir, da = double(c.ilat) - k.ilat;
      double dlo = std::abs(double(c.ilon) - k.ilon);
      dlo = std::min(dlo, g.n_lon - dlo);
      v += amp * std::exp(-(dr * dr + da * da + dlo * dlo) / 4.0);
    }
    return v;
  });
}

}  // namespace

TEST_CASE("constant field has no extrema") {
  const ShellGrid g = testing::shell(4, 5, 6);
  CHECK(find_local_extrema(ScalarField("c", g, std::vector<float>(g.node_count(), 2.0f))).empty());
}

TEST_CASE("random fields match the brute-force oracle in 100 trials") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::mt19937_64 rng(trial);
    const ShellGrid g = testing::shell(2 + std::uint32_t(rng() % 5), 2 + std::uint32_t(rng() % 6),
                                       3 + std::uint32_t(rng() % 7));
    ScalarField f = testing::random_field("f", g, trial * 31 + 7);
    if (trial % 4 == 0) {
      // Quantize to force ties.
      std::vector<float> q(f.values().begin(), f.values().end());
      for (auto& x : q) x = std::round(x * 3.0f);
      f = ScalarField("f", g, q);
    }
    const auto pts = find_local_extrema(f, trial);
    CHECK(summary(pts) == oracle(f));
    for (const auto& p : pts) {
      CHECK(p.time_step == trial);
      CHECK(p.value == f[p.node]);
      CHECK((p.position - g.node_position(p.node)).norm() == 0.0);
    }
  }
}

TEST_CASE("constructed bumps give exact counts") {
  // A bump decays toward the radius/latitude box corners, which are true minima; count by kind.
  const ShellGrid g = testing::shell(12, 16, 24);
  auto of_kind = [](const std::vector<CriticalPoint>& pts, ExtremumKind k) {
    std::vector<std::size_t> out;
    for (const auto& p : pts) if (p.kind == k) out.push_back(p.node);
    return out;
  };
  const std::size_t peak = g.index(6, 8, 5);
  const auto one = find_local_extrema(bumps(g, {{peak, 1.0}}));
  CHECK(of_kind(one, ExtremumKind::maximum) == std::vector<std::size_t>{peak});

  const std::size_t trough = g.index(5, 7, 17);
  const auto two = find_local_extrema(bumps(g, {{peak, 1.0}, {trough, -1.0}}));
  CHECK(of_kind(two, ExtremumKind::maximum) == std::vector<std::size_t>{peak});
  const auto minima = of_kind(two, ExtremumKind::minimum);
  CHECK(std::count(minima.begin(), minima.end(), trough) == 1);
  // Interior minima other than the trough would be a bug.
  for (std::size_t m : minima) {
    const NodeCoord c = g.coord(m);
    const bool boundary = c.ir == 0 || c.ir + 1 == g.n_r || c.ilat == 0 || c.ilat + 1 == g.n_lat;
    CHECK((m == trough || boundary));
  }
}

TEST_CASE("negation swaps kinds and offsets change nothing") {
  const ShellGrid g = testing::shell(5, 6, 9);
  const ScalarField f = testing::random_field("f", g, 12);
  const ScalarField neg = testing::field_from("f", g, [&](std::size_t i) { return -f[i]; });
  const ScalarField shifted = testing::field_from("f", g, [&](std::size_t i) { return f[i] + 0.5f; });
  const auto a = find_local_extrema(f);
  const auto b = find_local_extrema(neg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].node == b[i].node);
    CHECK(a[i].kind != b[i].kind);
  }
  CHECK(summary(find_local_extrema(shifted)) == summary(a));
}
