#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "mantlevis/core/error.hpp"
#include "mantlevis/ingest/synthetic.hpp"
#include "mantlevis/preprocess/derived.hpp"
#include "mantlevis/preprocess/lod.hpp"
#include "mantlevis/render/frame.hpp"
#include "mantlevis/render/pathline_overlay.hpp"
#include "mantlevis/render/png.hpp"
#include "mantlevis/render/raymarch.hpp"

using namespace mantlevis;
using namespace mantlevis::render;

namespace {

preprocess::LodPyramid cells_pyramid(std::uint32_t n_r = 16, std::uint32_t n_lat = 16, std::uint32_t n_lon = 32) {
  ingest::SyntheticScenario sc;
  sc.kind = ingest::ScenarioKind::convection_cells;
  const auto steps = ingest::generate_synthetic(sc, testing::shell(n_r, n_lat, n_lon), {0.0});
  return preprocess::build_lod(preprocess::add_derived_variables(steps[0]));
}

const preprocess::LodPyramid& shared_pyramid() {
  static const preprocess::LodPyramid p = cells_pyramid();
  return p;
}

RenderState cells_state(std::uint32_t size, double opacity_scale = kDefaultOpacityScale) {
  const auto& p = shared_pyramid();
  const auto& f = p.finest().scalar(ingest::kTempAnomaly);
  RenderState s(diverging_transfer_function(ingest::kTempAnomaly, f.min(), f.max(), opacity_scale),
                default_camera(kEarthRadiusKm, size, size));
  s.set_lod({0});
  return s;
}

TransferFunction constant_tf(const std::string& var, float alpha, double scale) {
  return TransferFunction(var, {{-1e9, {1, 1, 1, alpha}}, {1e9, {1, 1, 1, alpha}}}, scale);
}

FrameSlot one_pass(const RenderState& s, std::uint32_t pass = 0, unsigned threads = 0) {
  FrameSlot f = FrameSlot::fresh(s.camera());
  PassOptions o;
  o.threads = threads;
  render_pass(s, shared_pyramid(), f, pass, o);
  return f;
}

}  // namespace

TEST_CASE("intersect_shell spans") {
  const double ri = 3480, ro = 6371;
  const Eigen::Vector3d y(0, 1, 0);
  ShellHits h = intersect_shell({0, -20000, 0}, y, ri, ro);
  REQUIRE(h.count == 2);
  CHECK(h.spans[0].t_near == doctest::Approx(20000 - ro));
  CHECK(h.spans[0].t_far == doctest::Approx(20000 - ri));
  CHECK(h.spans[1].t_near == doctest::Approx(20000 + ri));
  CHECK(h.spans[1].t_far == doctest::Approx(20000 + ro));

  h = intersect_shell({5000, -20000, 0}, y, ri, ro);
  REQUIRE(h.count == 1);
  const double half = std::sqrt(ro * ro - 5000.0 * 5000.0);
  CHECK(h.spans[0].t_near == doctest::Approx(20000 - half));
  CHECK(h.spans[0].t_far == doctest::Approx(20000 + half));

  CHECK(intersect_shell({7000, -20000, 0}, y, ri, ro).count == 0);
  CHECK(intersect_shell({0, 20000, 0}, y, ri, ro).count == 0);

  h = intersect_shell({0, -5000, 0}, y, ri, ro);
  REQUIRE(h.count == 2);
  CHECK(h.spans[0].t_near == 0.0);
  CHECK(h.spans[0].t_far == doctest::Approx(5000 - ri));
  CHECK(h.spans[1].t_far == doctest::Approx(5000 + ro));

  h = intersect_shell({0, 0, 0}, y, ri, ro);
  REQUIRE(h.count == 1);
  CHECK(h.spans[0].t_near == doctest::Approx(ri));
  CHECK(h.spans[0].t_far == doctest::Approx(ro));
}

TEST_CASE("compositor order and depth") {
  const Rgba red(1, 0, 0, 1), blue(0, 0, 1, 1);
  Compositor a;
  const double a1 = a.add(red, 0.01, 50.0, 10.0);
  const double a2 = a.add(blue, 0.02, 50.0, 20.0);
  CHECK(a1 == doctest::Approx(1 - std::exp(-0.5)));
  CHECK(a2 == doctest::Approx(1 - std::exp(-1.0)));
  CHECK(a.rgba()[0] == doctest::Approx(a1));
  CHECK(a.rgba()[2] == doctest::Approx((1 - a1) * a2));
  CHECK(a.alpha() == doctest::Approx(1 - (1 - a1) * (1 - a2)));
  CHECK(a.depth() == 20.0);  // 0.39 after the first sample, 0.78 after the second

  Compositor b;
  b.add(blue, 0.02, 50.0, 10.0);
  b.add(red, 0.01, 50.0, 20.0);
  CHECK(b.alpha() == doctest::Approx(a.alpha()));
  CHECK(b.rgba()[2] > a.rgba()[2]);
  CHECK(b.rgba()[0] < a.rgba()[0]);
  CHECK(b.depth() == 10.0);

  Compositor empty;
  CHECK(empty.alpha() == 0.0);
  CHECK(empty.depth() == kInfiniteDepth);
  CHECK_FALSE(empty.saturated());
}

TEST_CASE("constant medium follows Beer-Lambert within 2%") {
  const auto& pyr = shared_pyramid();
  RenderState s = cells_state(8);
  s.set_transfer_function(constant_tf(ingest::kTempAnomaly, 0.1f, 0.002));
  s.set_early_termination(false);
  // Misses the core: one chord of length 2 sqrt(R^2 - d^2).
  const double d = 4000.0;
  const Ray ray{{d, -20000, 0}, {0, 1, 0}};
  const double length = 2 * std::sqrt(kEarthRadiusKm * kEarthRadiusKm - d * d);
  const double expected = 1 - std::exp(-0.002 * 0.1 * length);
  for (double jitter : {0.0, 0.3, 0.9}) {
    const MarchResult r = march_ray(s, pyr, ray, default_step(pyr.finest()), jitter);
    CHECK(std::abs(r.rgba[3] - expected) <= 0.02 * expected);
    CHECK(r.rgba[0] == doctest::Approx(r.rgba[3]).epsilon(1e-9));
  }
  const Ray miss{{7000, -20000, 0}, {0, 1, 0}};
  const MarchResult m = march_ray(s, pyr, miss, 10.0, 0.5);
  CHECK(m.rgba.isZero());
  CHECK(m.depth == kInfiniteDepth);
}

TEST_CASE("full-range brush leaves the image unchanged") {
  RenderState s = cells_state(32);
  const Image plain = one_pass(s).display;
  const auto& f = shared_pyramid().finest().scalar(ingest::kTempAnomaly);
  s.set_brush(brush::BrushSet({{ingest::kTempAnomaly, {f.min() - 1.0, f.max() + 1.0}},
                               {"depth", {-brush::kUnbounded, brush::kUnbounded}}}));
  CHECK(one_pass(s).display == plain);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < plain.pixel_count(); ++i) covered += plain.rgba[4 * i + 3] > 0;
  CHECK(covered > plain.pixel_count() / 4);
}

TEST_CASE("rejecting brush gives a transparent frame") {
  RenderState s = cells_state(24);
  s.set_brush(brush::BrushSet({{ingest::kTempAnomaly, {1e6, 2e6}}}));
  const FrameSlot f = one_pass(s);
  for (std::uint8_t b : f.display.rgba) CHECK(b == 0);
  for (float d : f.depth) CHECK(std::isinf(d));
  s.set_brush(brush::BrushSet({{"not_a_variable", {0, 1}}}));
  CHECK_THROWS_AS(one_pass(s), Error);
}

TEST_CASE("early termination changes pixels by at most 0.005") {
  RenderState s = cells_state(32, 0.05);
  const FrameSlot with = one_pass(s);
  s.set_early_termination(false);
  const FrameSlot without = one_pass(s);
  double worst = 0, max_alpha = 0;
  for (std::size_t i = 0; i < with.accum.size(); ++i) {
    worst = std::max(worst, double(std::abs(with.accum[i] - without.accum[i])));
    if (i % 4 == 3) max_alpha = std::max(max_alpha, double(without.accum[i]));
  }
  CHECK(max_alpha > 0.995);
  CHECK(worst <= 0.005);
}

TEST_CASE("narrowing the brush never raises opacity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto& f = shared_pyramid().finest().scalar(ingest::kTempAnomaly);
  const double lo = f.min(), hi = f.max();
  RenderState s = cells_state(24, 0.01);
  s.set_early_termination(false);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = lo + (hi - lo) * 0.5 * u(rng);
    const double b = hi - (hi - lo) * 0.5 * u(rng);
    const double d0 = 2891.0 * 0.5 * u(rng);
    const brush::BrushSet wide({{ingest::kTempAnomaly, {a, b}}, {"depth", {d0, 2891.0}}});
    const double shrink = 0.25 * (b - a) * u(rng);
    const brush::BrushSet narrow({{ingest::kTempAnomaly, {a + shrink, b - shrink}},
                                  {"depth", {d0 + 300.0 * u(rng), 2891.0}},
                                  {preprocess::kRadialVelocity, {-brush::kUnbounded, 10.0 * (u(rng) - 0.5)}}});
    s.set_brush(wide);
    const FrameSlot fw = one_pass(s, std::uint32_t(trial));
    s.set_brush(narrow);
    const FrameSlot fn = one_pass(s, std::uint32_t(trial));
    for (std::size_t i = 3; i < fw.accum.size(); i += 4) CHECK(fn.accum[i] <= fw.accum[i] + 1e-6f);
  }
}

TEST_CASE("rendering is deterministic across thread counts") {
  const RenderState s = cells_state(40);
  const FrameSlot a = one_pass(s, 3, 1);
  const FrameSlot b = one_pass(s, 3, 7);
  CHECK(a.accum == b.accum);
  CHECK(a.depth == b.depth);
  CHECK(one_pass(s, 3, 0).display == a.display);
  CHECK_FALSE(one_pass(s, 4, 0).accum == a.accum);
}

TEST_CASE("16-pass mean cuts per-pixel variance at least eightfold") {
  RenderState s = cells_state(16, 0.01);
  s.set_step_km(120.0);  // coarse step so jitter noise is visible
  constexpr std::uint32_t kGroups = 16, kPasses = 16;
  const std::size_t n = 16 * 16;
  std::vector<std::vector<double>> single(n), grouped(n);
  for (std::uint32_t g = 0; g < kGroups; ++g) {
    FrameSlot f = FrameSlot::fresh(s.camera());
    for (std::uint32_t p = 0; p < kPasses; ++p) {
      const std::uint32_t index = g * kPasses + p;
      const FrameSlot one = one_pass(s, index);
      for (std::size_t i = 0; i < n; ++i) single[i].push_back(one.accum[4 * i + 3]);
      render_pass(s, shared_pyramid(), f, index);
    }
    CHECK(f.passes == kPasses);
    for (std::size_t i = 0; i < n; ++i) grouped[i].push_back(f.mean(i)[3]);
  }
  auto variance = [](const std::vector<double>& v) {
    double m = 0, q = 0;
    for (double x : v) m += x;
    m /= double(v.size());
    for (double x : v) q += (x - m) * (x - m);
    return q / double(v.size() - 1);
  };
  double v1 = 0, v16 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v1 += variance(single[i]);
    v16 += variance(grouped[i]);
  }
  REQUIRE(v1 > 0.0);
  CHECK(v16 <= v1 / 8.0);
}

TEST_CASE("level schedule and generation checks") {
  const auto& pyr = shared_pyramid();
  RenderState s = cells_state(16);
  s.set_lod({});
  CHECK(pick_lod(s, pyr, true) == 2);
  CHECK(pick_lod(s, pyr, false, 0) == 1);
  CHECK(pick_lod(s, pyr, false, 1) == 0);
  CHECK(pick_lod(s, pyr, false, 9) == 0);
  s.set_lod({7});
  CHECK(pick_lod(s, pyr, true) == 2);
  s.set_lod({1});
  CHECK(pick_lod(s, pyr, false, 5) == 1);
  s.set_lod({});

  s.set_pass_budget(4);
  const auto built = preprocess::LodPyramid::construction_count();
  const FrameSlot f = render_progressive(s, pyr);
  CHECK(f.passes == 3);  // pass 0 ran at level 1 and was discarded on the switch to level 0
  CHECK(f.level == 0);
  s.set_pass_budget(1);
  const FrameSlot g = render_progressive(s, pyr);
  CHECK(g.passes == 1);
  CHECK(g.level == 1);
  s.set_brush(brush::BrushSet({{"depth", {0, 1000}}}));
  render_progressive(s, pyr);
  CHECK(preprocess::LodPyramid::construction_count() == built);

  FrameSlot h = FrameSlot::fresh(s.camera());
  render_pass(s, pyr, h, 1);
  s.set_transfer_function(constant_tf(ingest::kTempAnomaly, 0.5f, 0.01));
  try {
    render_pass(s, pyr, h, 2);
    FAIL("expected GenerationMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenerationMismatch);
  }
}

TEST_CASE("render state generations") {
  RenderState s = cells_state(8);
  std::uint64_t last = s.generation();
  auto bumped = [&] {
    const bool up = s.generation() > last;
    last = s.generation();
    return up;
  };
  s.set_time_step(0);
  CHECK(bumped());
  s.set_brush(s.brush());
  CHECK(bumped());
  s.set_transfer_function(s.transfer_function());
  CHECK(bumped());
  const auto cam_gen = s.camera_generation();
  s.set_camera(s.camera());
  CHECK(bumped());
  CHECK(s.camera_generation() > cam_gen);
  s.set_lod({1});
  CHECK(bumped());
  s.set_pass_budget(3);
  CHECK(bumped());
  CHECK_THROWS_AS(s.set_pass_budget(0), Error);
  CHECK_THROWS_AS(s.set_step_km(-1.0), Error);
}

TEST_CASE("transfer function lookup and JSON") {
  const TransferFunction tf("v", {{0, {0, 0, 0, 0}}, {10, {1, 0.5f, 0, 1}}}, 0.01);
  CHECK(tf.lookup(-5).isApprox(Rgba(0, 0, 0, 0)));
  CHECK(tf.lookup(5).isApprox(Rgba(0.5f, 0.25f, 0, 0.5f)));
  CHECK(tf.lookup(50).isApprox(Rgba(1, 0.5f, 0, 1)));
  CHECK(transfer_function_from_json(to_json(tf)) == tf);
  CHECK_THROWS_AS(TransferFunction("v", {{0, {0, 0, 0, 0}}}, 0.01), Error);
  CHECK_THROWS_AS(TransferFunction("v", {{1, {0, 0, 0, 0}}, {0, {0, 0, 0, 0}}}, 0.01), Error);
  CHECK_THROWS_AS(TransferFunction("v", {{0, {2, 0, 0, 0}}, {1, {0, 0, 0, 0}}}, 0.01), Error);
  CHECK_THROWS_AS(transfer_function_from_json(nlohmann::json::parse(R"({"variable": "v"})")), Error);

  const TransferFunction d = diverging_transfer_function("t", -3, 5);
  CHECK(d.points().front().value == -5);
  CHECK(d.points().back().value == 5);
  CHECK(d.lookup(0)[3] == doctest::Approx(0.05));
  CHECK(d.lookup(-5)[2] > d.lookup(-5)[0]);
  CHECK(d.lookup(5)[0] > d.lookup(5)[2]);
}

TEST_CASE("camera rays and projection agree") {
  Camera c = default_camera(kEarthRadiusKm, 65, 33);
  const Ray center = c.ray(32, 16);
  CHECK((center.direction - c.forward()).norm() < 1e-12);
  for (auto [x, y] : {std::pair{0u, 0u}, {64u, 32u}, {10u, 20u}}) {
    const Ray r = c.ray(x, y);
    const auto p = c.project(r.origin + 1234.0 * r.direction);
    REQUIRE(p);
    CHECK(p->pixel.x() == doctest::Approx(x + 0.5));
    CHECK(p->pixel.y() == doctest::Approx(y + 0.5));
    CHECK(p->distance == doctest::Approx(1234.0));
  }
  CHECK(c.ray(0, 0).direction.z() > c.ray(0, 32).direction.z());
  CHECK_FALSE(c.project(c.eye - c.forward()));
  CHECK(camera_from_json(to_json(c)) == c);
  Camera bad = c;
  bad.up = c.forward();
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(camera_from_json(nlohmann::json::parse(R"({"eye": [0, 0, 1]})")), Error);
}

TEST_CASE("line rasterization") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-40, 40);
  for (int k = 0; k < 300; ++k) {
    const int x0 = u(rng), y0 = u(rng), x1 = u(rng), y1 = u(rng);
    const auto px = rasterize_line(x0, y0, x1, y1);
    REQUIRE_FALSE(px.empty());
    CHECK(px.front() == std::pair{x0, y0});
    CHECK(px.back() == std::pair{x1, y1});
    CHECK(px.size() == std::size_t(std::max(std::abs(x1 - x0), std::abs(y1 - y0)) + 1));
    const double len = std::hypot(double(x1 - x0), double(y1 - y0));
    for (std::size_t i = 0; i < px.size(); ++i) {
      if (i > 0) {
        CHECK(std::abs(px[i].first - px[i - 1].first) <= 1);
        CHECK(std::abs(px[i].second - px[i - 1].second) <= 1);
      }
      if (len > 0) {
        // Distance along the minor axis from the ideal line stays within half a pixel.
        const double cross = std::abs(double(x1 - x0) * (px[i].second - y0) - double(y1 - y0) * (px[i].first - x0));
        const double major = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
        CHECK(cross / major <= 0.5 + 1e-9);
      }
    }
  }
  CHECK(rasterize_line(2, 3, 2, 3).size() == 1);
}

TEST_CASE("pathline overlay colors and depth test") {
  CHECK(age_color(0).isApprox(Rgba(0, 0, 1, 1)));
  CHECK(age_color(1).isApprox(Rgba(1, 0, 0, 1)));
  CHECK(age_color(0.5).isApprox(Rgba(0.5f, 0, 0.5f, 1)));

  Camera c;
  c.eye = {0, -20000, 0};
  c.width = c.height = 64;
  pathlines::Pathline line;
  line.positions = {{-3000, -10000, 0}, {3000, -10000, 0}};
  line.times = {0, 1};
  line.ages = {0, 1};
  const std::vector<pathlines::Pathline> lines{line};
  const std::vector<std::size_t> all{0};
  const std::vector<float> far(64 * 64, 15000.0f), near(64 * 64, 5000.0f);

  const Overlay o = render_pathlines(lines, all, c, far);
  CHECK(o.fragments > 10);
  const std::size_t mid = 32 * 64 + 32;
  CHECK(o.image.rgba[4 * mid + 3] == 255);
  CHECK(o.depth[mid] == doctest::Approx(10000.0).epsilon(1e-3));
  // Age runs left to right: blue at the first drawn pixel of the row, red at the last.
  std::size_t first = 64, last = 0;
  for (std::size_t x = 0; x < 64; ++x) {
    if (o.image.rgba[4 * (32 * 64 + x) + 3]) {
      first = std::min(first, x);
      last = x;
    }
  }
  REQUIRE(first < last);
  CHECK(o.image.rgba[4 * (32 * 64 + first) + 2] > o.image.rgba[4 * (32 * 64 + first) + 0]);
  CHECK(o.image.rgba[4 * (32 * 64 + last) + 0] > o.image.rgba[4 * (32 * 64 + last) + 2]);

  CHECK(render_pathlines(lines, all, c, near).fragments == 0);
  CHECK(render_pathlines(lines, std::vector<std::size_t>{}, c, far).fragments == 0);

  Image img = Image::blank(64, 64);
  composite_overlay(img, o);
  CHECK(img.rgba[4 * mid + 3] == 255);
  CHECK(img.rgba[0] == 0);

  pathlines::Pathline behind = line;
  behind.positions = {{0, -25000, 0}, {0, -30000, 0}};
  CHECK(render_pathlines(std::vector{behind}, all, c, far).fragments == 0);
}

TEST_CASE("PNG round trip and straight alpha") {
  Image img = Image::blank(17, 9);
  std::mt19937 rng(1);
  for (auto& b : img.rgba) b = std::uint8_t(rng());
  const Bytes png = encode_png(img);
  CHECK(png.size() > 8);
  CHECK(png[1] == 'P');
  CHECK(decode_png(png) == img);
  CHECK_THROWS_AS(decode_png(std::vector<std::uint8_t>{1, 2, 3}), Error);

  Image pm = Image::blank(2, 1);
  pm.rgba = {64, 32, 0, 128, 9, 9, 9, 0};
  const Image st = to_straight_alpha(pm);
  CHECK(st.rgba == std::vector<std::uint8_t>{128, 64, 0, 128, 0, 0, 0, 0});

  const std::string dir = testing::temp_dir("png");
  write_png_file(dir + "/a.png", img);
  CHECK(read_png_file(dir + "/a.png") == img);
  CHECK_THROWS_AS(read_png_file(dir + "/missing.png"), Error);
  std::filesystem::remove_all(dir);
}
