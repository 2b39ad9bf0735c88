#include "mantlevis/render/frame.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mantlevis/core/error.hpp"

namespace mantlevis::render {

Image to_straight_alpha(const Image& src) {
  Image out = src;
  for (std::size_t i = 0; i < src.pixel_count(); ++i) {
    const std::uint8_t* p = &src.rgba[4 * i];
    std::uint8_t* q = &out.rgba[4 * i];
    if (p[3] == 0) {
      q[0] = q[1] = q[2] = 0;
      continue;
    }
    for (int c = 0; c < 3; ++c) {
      q[c] = std::uint8_t(std::min(255L, std::lround(double(p[c]) * 255.0 / double(p[3]))));
    }
  }
  return out;
}

FrameSlot FrameSlot::fresh(const Camera& camera) {
  FrameSlot f;
  f.camera = camera;
  f.reset();
  return f;
}

void FrameSlot::reset() {
  const std::size_t n = std::size_t(camera.width) * camera.height;
  passes = 0;
  accum.assign(4 * n, 0.0f);
  depth.assign(n, float(kInfiniteDepth));
  display = Image::blank(camera.width, camera.height);
}

Eigen::Vector4f FrameSlot::mean(std::size_t pixel) const {
  if (passes == 0) return Eigen::Vector4f::Zero();
  return Eigen::Map<const Eigen::Vector4f>(&accum[4 * pixel]) / float(passes);
}

void FrameSlot::update_display() {
  const std::size_t n = display.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector4f m = mean(i);
    for (int c = 0; c < 4; ++c) {
      display.rgba[4 * i + std::size_t(c)] = std::uint8_t(std::lround(std::clamp(m[c], 0.0f, 1.0f) * 255.0f));
    }
  }
}

std::size_t pick_lod(const RenderState& state, const preprocess::LodPyramid& pyramid,
                     bool interactive, std::uint32_t pass_index) {
  const std::size_t last = pyramid.level_count() - 1;
  if (state.lod().forced_level) return std::min(*state.lod().forced_level, last);
  if (interactive) return std::min<std::size_t>(2, last);
  return std::min<std::size_t>(pass_index == 0 ? 1 : 0, last);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

double pass_jitter(std::size_t pixel, std::uint32_t pass_index) {
  const std::uint64_t h = splitmix64(splitmix64(std::uint64_t(pixel)) ^ std::uint64_t(pass_index));
  return double(h >> 11) * 0x1.0p-53;
}

void render_pass(const RenderState& state, const preprocess::LodPyramid& pyramid, FrameSlot& frame,
                 std::uint32_t pass_index, const PassOptions& options) {
  if (frame.passes > 0 && frame.generation != state.generation()) {
    throw Error(ErrorCode::GenerationMismatch, "frame belongs to generation " +
                                                   std::to_string(frame.generation) + ", state is " +
                                                   std::to_string(state.generation()));
  }
  const Camera& camera = state.camera();
  const std::size_t level = pick_lod(state, pyramid, options.interactive, pass_index);
  if (frame.passes == 0 || !(frame.camera == camera) || frame.level != level) {
    frame.camera = camera;
    frame.reset();
  }
  frame.generation = state.generation();
  frame.level = level;

  const VolumeTimeStep& volume = pyramid.level(level);
  const RayMarcher marcher(state, volume, state.step_km().value_or(default_step(volume)),
                           state.early_termination(), options.observer);
  const std::uint32_t w = camera.width;
  const std::uint32_t h = camera.height;
  auto rows = [&](std::uint32_t first, std::uint32_t stride) {
    for (std::uint32_t y = first; y < h; y += stride) {
      for (std::uint32_t x = 0; x < w; ++x) {
        const std::size_t pixel = std::size_t(y) * w + x;
        const MarchResult r = marcher.march(camera.ray(x, y), pass_jitter(pixel, pass_index));
        for (int c = 0; c < 4; ++c) frame.accum[4 * pixel + std::size_t(c)] += float(r.rgba[c]);
        frame.depth[pixel] = std::min(frame.depth[pixel], float(r.depth));
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  if (options.observer) threads = 1;
  threads = std::min(threads, h);
  if (threads <= 1) {
    rows(0, 1);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) workers.emplace_back(rows, t, threads);
  }
  ++frame.passes;
  frame.update_display();
}

FrameSlot render_progressive(const RenderState& state, const preprocess::LodPyramid& pyramid,
                             const PassOptions& options) {
  FrameSlot frame = FrameSlot::fresh(state.camera());
  PassOptions batch = options;
  batch.interactive = false;
  for (std::uint32_t p = 0; p < state.pass_budget(); ++p) render_pass(state, pyramid, frame, p, batch);
  return frame;
}

}  // namespace mantlevis::render
