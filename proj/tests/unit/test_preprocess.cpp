#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>

#include "helpers.hpp"
#include "mantlevis/core/bytes.hpp"
#include "mantlevis/core/error.hpp"
#include "mantlevis/ingest/mvol.hpp"
#include "mantlevis/ingest/series.hpp"
#include "mantlevis/ingest/synthetic.hpp"
#include "mantlevis/pathlines/mpath.hpp"
#include "mantlevis/preprocess/derived.hpp"
#include "mantlevis/preprocess/lod.hpp"
#include "mantlevis/preprocess/pipeline.hpp"
#include "mantlevis/preprocess/samples.hpp"

using namespace mantlevis;
using namespace mantlevis::preprocess;

namespace {

VolumeTimeStep with_fields(const ShellGrid& g, std::vector<ScalarField> scalars,
                           std::optional<VectorField> v = std::nullopt) {
  return VolumeTimeStep(g, 0.0, std::move(scalars), std::move(v));
}

// Mean of the (up to 2x2x2) child block of coarse node (cr, ca, co).
double block_mean(const ScalarField& f, std::uint32_t cr, std::uint32_t ca, std::uint32_t co) {
  const ShellGrid& g = f.grid();
  double sum = 0;
  int count = 0;
  for (std::uint32_t r = 2 * cr; r < std::min(2 * cr + 2, g.n_r); ++r)
    for (std::uint32_t a = 2 * ca; a < std::min(2 * ca + 2, g.n_lat); ++a)
      for (std::uint32_t o = 2 * co; o < std::min(2 * co + 2, g.n_lon); ++o) {
        sum += f[g.index(r, a, o)];
        ++count;
      }
  return sum / count;
}

double mean(std::span<const float> v) { return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()); }

}  // namespace

TEST_CASE("build_lod on constants") {
  const ShellGrid g = testing::shell(8, 8, 8);
  const LodPyramid p = build_lod(with_fields(g, {ScalarField("one", g, std::vector<float>(512, 1.0f))}));
  REQUIRE(p.level_count() == 3);
  CHECK(p.level(1).grid().node_count() == 64);
  CHECK(p.level(2).grid().node_count() == 8);
  for (std::size_t l = 0; l < 3; ++l) {
    const auto& f = p.level(l).scalar("one");
    CHECK(f.min() == 1.0f);
    CHECK(f.max() == 1.0f);
    CHECK(p.level(l).grid().r_inner == g.r_inner);
    CHECK(p.level(l).grid().r_outer == g.r_outer);
  }
}

TEST_CASE("build_lod block means against a direct oracle") {
  for (const ShellGrid g : {testing::shell(8, 8, 8), testing::shell(7, 9, 12)}) {
    const ScalarField f = testing::random_field("f", g, 21);
    const VectorField v("velocity", testing::random_field("vx", g, 1), testing::random_field("vy", g, 2),
                        testing::random_field("vz", g, 3));
    const LodPyramid p = build_lod(with_fields(g, {f}, v));
    const VolumeTimeStep& l1 = p.level(1);
    const ShellGrid& c = l1.grid();
    CHECK(c.n_r == (g.n_r + 1) / 2);
    CHECK(c.n_lat == (g.n_lat + 1) / 2);
    CHECK(c.n_lon == (g.n_lon + 1) / 2);
    double worst = 0;
    for (std::uint32_t r = 0; r < c.n_r; ++r)
      for (std::uint32_t a = 0; a < c.n_lat; ++a)
        for (std::uint32_t o = 0; o < c.n_lon; ++o) {
          const std::size_t i = c.index(r, a, o);
          worst = std::max(worst, std::abs(l1.scalar("f")[i] - block_mean(f, r, a, o)));
          worst = std::max(worst, std::abs(l1.velocity()->y()[i] - block_mean(v.y(), r, a, o)));
        }
    CHECK(worst < 1e-6);
    CHECK(l1.variable_names() == p.finest().variable_names());
    CHECK(p.level(2).variable_names() == p.finest().variable_names());
  }
}

TEST_CASE("build_lod ratio and mean preservation on even dims") {
  const ShellGrid g = testing::shell(16, 16, 32);
  const ScalarField f = testing::random_field("f", g, 4);
  const LodPyramid p = build_lod(with_fields(g, {f}));
  for (std::size_t l = 0; l + 1 < p.level_count(); ++l) {
    CHECK(p.level(l).grid().node_count() == 8 * p.level(l + 1).grid().node_count());
  }
  CHECK(std::abs(mean(p.level(2).scalar("f").values()) - mean(f.values())) < 1e-5);
}

TEST_CASE("build_lod rejects tiny inputs and counts constructions") {
  const ShellGrid g{1, 4, 4, 3480, 6371};
  CHECK_THROWS_AS(build_lod(with_fields(g, {ScalarField("a", g, std::vector<float>(16, 0.0f))})), Error);
  const ShellGrid ok = testing::shell(4, 4, 4);
  const auto before = LodPyramid::construction_count();
  build_lod(with_fields(ok, {ScalarField("a", ok, std::vector<float>(64, 0.0f))}));
  CHECK(LodPyramid::construction_count() == before + 1);
}

TEST_CASE("radial velocity") {
  const ShellGrid g = testing::shell(5, 7, 12);
  const double k = 3.5;
  auto comp = [&](int axis, const char* name) {
    return testing::field_from(name, g, [&](std::size_t i) { return k * g.node_position(i).normalized()[axis]; });
  };
  const VolumeTimeStep radial = with_fields(g, {}, VectorField("v", comp(0, "vx"), comp(1, "vy"), comp(2, "vz")));
  const ScalarField vr = compute_radial_velocity(radial);
  CHECK(vr.name() == kRadialVelocity);
  CHECK(vr.min() == doctest::Approx(k).epsilon(1e-6));
  CHECK(vr.max() == doctest::Approx(k).epsilon(1e-6));

  ingest::SyntheticScenario sc;
  sc.kind = ingest::ScenarioKind::rigid_rotation;
  const auto rot = ingest::generate_synthetic(sc, testing::shell(16, 16, 32), {0.0});
  const ScalarField vr0 = compute_radial_velocity(rot[0]);
  CHECK(std::max(std::abs(vr0.min()), std::abs(vr0.max())) <= 1e-9);

  const VectorField rv("v", testing::random_field("vx", g, 1), testing::random_field("vy", g, 2),
                       testing::random_field("vz", g, 3));
  const ScalarField vr2 = compute_radial_velocity(with_fields(g, {}, rv));
  double worst = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const Eigen::Vector3d p = g.node_position(i);
    const double oracle = (rv.x()[i] * p.x() + rv.y()[i] * p.y() + rv.z()[i] * p.z()) / p.norm();
    worst = std::max(worst, std::abs(vr2[i] - oracle));
  }
  CHECK(worst < 1e-6);
  CHECK_THROWS_AS(compute_radial_velocity(with_fields(g, {testing::random_field("a", g, 1)})), Error);
}

TEST_CASE("depth values") {
  const ShellGrid g{30, 3, 4, 3480, 6371};
  const ScalarField d = compute_depth(with_fields(g, {}));
  CHECK(d.min() == 0.0f);
  CHECK(d.max() == float(g.r_outer - g.r_inner));
  CHECK(d[g.index(29, 1, 1)] == 0.0f);
  // 2891 km over 29 intervals; pick a grid whose node sits at 660 km depth.
  const ShellGrid h{3, 2, 3, 6371.0 - 1320.0, 6371.0};
  CHECK(compute_depth(with_fields(h, {}))[h.index(1, 0, 0)] == 660.0f);
}

TEST_CASE("shell-mean anomaly") {
  const ShellGrid g = testing::shell(3, 4, 5);
  const ScalarField shelly = testing::field_from("t", g, [&](std::size_t i) { return 10.0 * g.coord(i).ir; });
  const ScalarField a = compute_anomaly(with_fields(g, {shelly}), "t");
  CHECK(a.name() == "t_anomaly");
  CHECK(a.min() == 0.0f);
  CHECK(a.max() == 0.0f);

  const ScalarField r = testing::random_field("t", g, 8);
  const ScalarField ra = compute_anomaly(with_fields(g, {r}), "t");
  for (std::uint32_t ir = 0; ir < g.n_r; ++ir) {
    double s = 0;
    for (std::size_t j = 0; j < g.shell_size(); ++j) s += ra[ir * g.shell_size() + j];
    CHECK(std::abs(s / double(g.shell_size())) < 1e-5);
  }

  std::vector<float> hot(g.node_count(), 0.0f);
  hot[g.index(1, 2, 3)] = 7.0f;
  const ScalarField ha = compute_anomaly(with_fields(g, {ScalarField("t", g, hot)}), "t");
  const double n = double(g.shell_size());
  CHECK(ha[g.index(1, 2, 3)] == doctest::Approx(7.0 * (1.0 - 1.0 / n)).epsilon(1e-6));
  CHECK_THROWS_AS(compute_anomaly(with_fields(g, {r}), "nope"), Error);
}

TEST_CASE("add_derived_variables") {
  const auto steps = ingest::generate_synthetic({}, testing::shell(4, 5, 8), {0.0});
  const VolumeTimeStep d = add_derived_variables(steps[0]);
  CHECK(d.has_scalar(kDepth));
  CHECK(d.has_scalar(kRadialVelocity));
  CHECK(d.has_scalar(ingest::kTempAnomaly));
}

TEST_CASE("derived values on coarse levels approximate derivation then downsampling") {
  // Only approximate: coarse nodes do not sit at their block centroids.
  ingest::SyntheticScenario sc;
  sc.kind = ingest::ScenarioKind::convection_cells;
  const auto steps = ingest::generate_synthetic(sc, testing::shell(32, 32, 64), {0.0});
  const VolumeTimeStep fine = add_derived_variables(steps[0]);
  const VolumeTimeStep coarse = downsample(fine);
  const ScalarField direct = compute_radial_velocity(coarse);
  const ScalarField& averaged = coarse.scalar(kRadialVelocity);
  double worst = 0;
  for (std::size_t i = 0; i < direct.size(); ++i) worst = std::max(worst, double(std::abs(direct[i] - averaged[i])));
  CHECK(worst < 0.05 * (averaged.max() - averaged.min()));
}

TEST_CASE("reservoir sampling cap, determinism and exact copies") {
  const ShellGrid g = testing::shell(5, 10, 10);
  const VolumeTimeStep v = add_derived_variables(ingest::generate_synthetic({}, g, {0.0})[0]);
  const SampleTable all = extract_samples(v, 100000, 3);
  CHECK(all.rows() == 500);
  const SampleTable a = extract_samples(v, 100, 3);
  const SampleTable b = extract_samples(v, 100, 3);
  CHECK(a.rows() == 100);
  CHECK(a.values == b.values);
  CHECK(a.nodes == b.nodes);
  CHECK(extract_samples(v, 100, 4).nodes != a.nodes);
  CHECK(std::is_sorted(a.nodes.begin(), a.nodes.end()));
  REQUIRE(a.columns[0] == "x");
  REQUIRE(a.columns[3] == "depth");
  const std::size_t t = a.column(ingest::kTempAnomaly);
  REQUIRE(t != std::string::npos);
  for (std::size_t row = 0; row < a.rows(); ++row) {
    const std::size_t node = a.nodes[row];
    CHECK(a.at(row, t) == v.scalar(ingest::kTempAnomaly)[node]);
    CHECK(a.at(row, a.column("vx")) == v.velocity()->x()[node]);
    CHECK(a.at(row, 0) == float(g.node_position(node).x()));
  }
}

TEST_CASE("reservoir inclusion frequencies are uniform") {
  const std::size_t total = 2000, cap = 100, reps = 400;
  std::vector<int> hits(total, 0);
  for (std::size_t s = 0; s < reps; ++s) {
    for (std::size_t i : reservoir_select(total, cap, 1000 + s)) ++hits[i];
  }
  const double p = double(cap) / double(total);
  const double sigma = std::sqrt(double(reps) * p * (1 - p));
  // Ten storage-order groups of 200 nodes: tight bound on each group total.
  for (std::size_t g = 0; g < 10; ++g) {
    const double sum = std::accumulate(hits.begin() + long(g * 200), hits.begin() + long(g * 200 + 200), 0.0);
    CHECK(std::abs(sum - 200 * reps * p) < 3 * std::sqrt(200.0) * sigma);
  }
  std::size_t outliers = 0;
  for (int h : hits) outliers += std::abs(h - reps * p) > 3 * sigma;
  CHECK(outliers < total / 50);
}

TEST_CASE("MSAMP round trip") {
  const ShellGrid g = testing::shell(4, 5, 8);
  const VolumeTimeStep v = add_derived_variables(ingest::generate_synthetic({}, g, {0.0})[0]);
  const SampleTable t = extract_samples(v, 50, 1);
  const std::string text = format_msamp(t);
  CHECK(text.substr(0, 14) == "x,y,z,depth,co");
  const SampleTable back = parse_msamp(text);
  CHECK(back.columns == t.columns);
  CHECK(back.values == t.values);
  CHECK_THROWS_AS(parse_msamp("a,b\n1\n"), Error);
  CHECK_THROWS_AS(parse_msamp("a,b\n1,zz\n"), Error);
}

TEST_CASE("pipeline writes levels, samples and pathlines") {
  const std::string in = testing::temp_dir("pipe_in");
  const std::string out = testing::temp_dir("pipe_out");
  ingest::save_series(in, ingest::generate_synthetic({}, testing::shell(8, 9, 16), ingest::uniform_times(3)));
  PipelineOptions opts;
  opts.sample_cap = 100;
  const PipelineReport report = run_pipeline(in, out, opts);
  CHECK(report.steps == 3);
  CHECK(report.samples_per_step == 100);
  namespace fs = std::filesystem;
  for (const char* f : {"index.txt", "pathlines.mpath", "step_0000.mvol", "step_0000.mvol.L1",
                        "step_0000.mvol.L2", "step_0002.mvol.msamp"}) {
    CHECK(fs::exists(fs::path(out) / f));
  }
  const VolumeTimeStep l2 = ingest::read_volume_file(out + "/step_0001.mvol.L2");
  CHECK(l2.grid().n_r == 2);
  CHECK(l2.has_scalar(kRadialVelocity));
  CHECK(pathlines::read_pathlines_file(out + "/pathlines.mpath").size() == report.pathlines);
  CHECK(report.pathlines > 0);

  const std::string empty = testing::temp_dir("pipe_empty");
  try {
    run_pipeline(empty, out);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(empty) != std::string::npos);
  }
  fs::remove_all(in);
  fs::remove_all(out);
  fs::remove_all(empty);
}
