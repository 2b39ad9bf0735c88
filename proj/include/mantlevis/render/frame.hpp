#pragma once

#include <cstdint>
#include <vector>

#include "mantlevis/render/raymarch.hpp"

namespace mantlevis::render {

/// 8-bit RGBA raster, row 0 at the top.
struct Image {
  std::uint32_t width{0};
  std::uint32_t height{0};
  std::vector<std::uint8_t> rgba;

  static Image blank(std::uint32_t width, std::uint32_t height) {
    return {width, height, std::vector<std::uint8_t>(std::size_t(width) * height * 4, 0)};
  }
  std::size_t pixel_count() const { return std::size_t(width) * height; }
  bool operator==(const Image&) const = default;
};

/// Premultiplied to straight alpha; fully transparent pixels become zero.
Image to_straight_alpha(const Image& premultiplied);

/// Progressive accumulation target. `display` is the premultiplied mean
/// accum / passes clamped to [0, 1] and quantized; `depth` is the nearest
/// 0.5-opacity crossing over all accumulated passes.
struct FrameSlot {
  Camera camera;
  std::uint64_t generation{0};
  std::uint32_t passes{0};
  std::size_t level{0};
  std::vector<float> accum;
  std::vector<float> depth;
  Image display;

  static FrameSlot fresh(const Camera& camera);
  std::uint32_t width() const { return camera.width; }
  std::uint32_t height() const { return camera.height; }
  Eigen::Vector4f mean(std::size_t pixel) const;
  void update_display();
  void reset();
};

/// Scheduled level for a pass: interactive passes use the coarsest level,
/// pass 0 level 1 and later passes level 0, clamped to the pyramid;
/// state.lod().forced_level overrides.
std::size_t pick_lod(const RenderState& state, const preprocess::LodPyramid& pyramid,
                     bool interactive, std::uint32_t pass_index = 0);

/// Counter-based jitter in [0, 1).
double pass_jitter(std::size_t pixel, std::uint32_t pass_index);

struct PassOptions {
  bool interactive{false};
  /// Worker threads partitioned by scanline; 0 picks hardware concurrency.
  unsigned threads{0};
  /// Called for every composited sample; forces a single worker.
  const SampleObserver* observer{nullptr};
};

/// Marches every pixel once and accumulates. A frame whose level differs
/// from the scheduled one is reset first, so accumulation never mixes
/// levels. Throws GenerationMismatch when a non-fresh frame belongs to
/// another generation.
void render_pass(const RenderState& state, const preprocess::LodPyramid& pyramid, FrameSlot& frame,
                 std::uint32_t pass_index, const PassOptions& options = {});

/// Full non-interactive budget on a fresh frame.
FrameSlot render_progressive(const RenderState& state, const preprocess::LodPyramid& pyramid,
                             const PassOptions& options = {});

}  // namespace mantlevis::render
