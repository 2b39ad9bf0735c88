#pragma once

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mantlevis/frameserver/warp.hpp"
#include "mantlevis/preprocess/lod.hpp"

namespace mantlevis::frameserver {

using Series = std::vector<preprocess::LodPyramid>;

struct DisplayRequest {
  render::Camera camera;
  std::chrono::steady_clock::time_point deadline{std::chrono::steady_clock::time_point::max()};
};

struct FrameServerOptions {
  /// Extra wall time spent in every pass before it is published.
  std::chrono::milliseconds pass_delay{0};
  /// The render loop waits for start().
  bool start_paused{false};
  unsigned threads{0};
};

/// Owns one render loop. States go through a latest-wins mailbox; completed
/// passes are published as immutable snapshots that display readers warp to
/// their own camera without waiting on the loop.
class FrameServer {
 public:
  FrameServer(std::shared_ptr<const Series> series, FrameServerOptions options = {});
  ~FrameServer();
  FrameServer(const FrameServer&) = delete;
  FrameServer& operator=(const FrameServer&) = delete;

  void start();

  /// Throws TimeOutOfRange for a step outside the series. Returns the
  /// state's generation.
  std::uint64_t submit_state(render::RenderState state);

  /// Never blocks on rendering.
  WarpResult get_display_frame(const DisplayRequest& request) const;

  /// Latest published snapshot, or null.
  std::shared_ptr<const render::FrameSlot> latest_frame() const;

  /// Blocks until a frame of `generation` with at least `passes` passes is
  /// published, or the timeout expires. Returns the frame if reached.
  std::shared_ptr<const render::FrameSlot> wait_for(std::uint64_t generation, std::uint32_t passes,
                                                    std::chrono::milliseconds timeout) const;

  /// Generation of every pass the loop started, in order.
  std::vector<std::uint64_t> rendered_generations() const;

  /// Message of the last pass that failed; that state renders no further.
  std::string last_error() const;

  const Series& series() const { return *series_; }

 private:
  void loop();

  std::shared_ptr<const Series> series_;
  FrameServerOptions options_;

  mutable std::mutex mutex_;
  mutable std::condition_variable wake_;
  mutable std::condition_variable published_cv_;
  std::optional<render::RenderState> pending_;
  bool stop_{false};
  bool paused_;
  std::vector<std::uint64_t> rendered_;
  std::string last_error_;

  mutable std::mutex frame_mutex_;
  std::shared_ptr<const render::FrameSlot> published_;

  std::thread thread_;
};

}  // namespace mantlevis::frameserver
