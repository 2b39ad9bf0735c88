#include "mantlevis/frameserver/frame_server.hpp"

#include "mantlevis/core/error.hpp"

namespace mantlevis::frameserver {

FrameServer::FrameServer(std::shared_ptr<const Series> series, FrameServerOptions options)
    : series_(std::move(series)), options_(options), paused_(options.start_paused) {
  if (!series_ || series_->empty()) throw Error(ErrorCode::InvalidArgument, "frame server needs a non-empty series");
  thread_ = std::thread([this] { loop(); });
}

FrameServer::~FrameServer() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  thread_.join();
}

void FrameServer::start() {
  {
    std::lock_guard lock(mutex_);
    paused_ = false;
  }
  wake_.notify_all();
}

std::uint64_t FrameServer::submit_state(render::RenderState state) {
  if (state.time_step() >= series_->size()) {
    throw Error(ErrorCode::TimeOutOfRange, "time step " + std::to_string(state.time_step()) + " is outside [0, " +
                                               std::to_string(series_->size()) + ")");
  }
  const std::uint64_t g = state.generation();
  {
    std::lock_guard lock(mutex_);
    pending_ = std::move(state);
  }
  wake_.notify_all();
  return g;
}

std::shared_ptr<const render::FrameSlot> FrameServer::latest_frame() const {
  std::lock_guard lock(frame_mutex_);
  return published_;
}

WarpResult FrameServer::get_display_frame(const DisplayRequest& request) const {
  const auto frame = latest_frame();
  if (!frame) return empty_warp(request.camera);
  return warp_frame(*frame, request.camera);
}

std::shared_ptr<const render::FrameSlot> FrameServer::wait_for(std::uint64_t generation, std::uint32_t passes,
                                                               std::chrono::milliseconds timeout) const {
  std::shared_ptr<const render::FrameSlot> hit;
  std::unique_lock lock(mutex_);
  published_cv_.wait_for(lock, timeout, [&] {
    auto f = latest_frame();
    if (f && f->generation == generation && f->passes >= passes) hit = f;
    return hit != nullptr || stop_;
  });
  return hit;
}

std::string FrameServer::last_error() const {
  std::lock_guard lock(mutex_);
  return last_error_;
}

std::vector<std::uint64_t> FrameServer::rendered_generations() const {
  std::lock_guard lock(mutex_);
  return rendered_;
}

void FrameServer::loop() {
  std::optional<render::RenderState> current;
  render::FrameSlot work;
  std::uint32_t step = 0;
  bool interactive = false;

  auto steps_total = [&] { return current->pass_budget() + (interactive ? 1u : 0u); };

  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] {
        return stop_ || (!paused_ && (pending_ || (current && step < steps_total())));
      });
      if (stop_) return;
      if (pending_) {
        render::RenderState next = std::move(*pending_);
        pending_.reset();
        if (!current || next.generation() != current->generation()) {
          interactive = current && (next.camera_generation() != current->camera_generation() ||
                                    next.brush().generation() != current->brush().generation());
          current = std::move(next);
          work = render::FrameSlot::fresh(current->camera());
          step = 0;
        }
      }
      if (step >= steps_total()) continue;
      rendered_.push_back(current->generation());
    }

    const preprocess::LodPyramid& pyramid = (*series_)[current->time_step()];
    render::PassOptions pass;
    pass.threads = options_.threads;
    std::uint32_t pass_index = step;
    if (interactive) {
      pass.interactive = step == 0;
      pass_index = step == 0 ? 0 : step - 1;
    }
    try {
      render::render_pass(*current, pyramid, work, pass_index, pass);
    } catch (const std::exception& e) {
      std::lock_guard lock(mutex_);
      last_error_ = e.what();
      step = steps_total();
      continue;
    }
    ++step;

    bool stale = false;
    {
      std::unique_lock lock(mutex_);
      if (options_.pass_delay.count() > 0) wake_.wait_for(lock, options_.pass_delay, [&] { return stop_; });
      if (stop_) return;
      stale = pending_ && pending_->generation() != current->generation();
    }
    if (stale) continue;
    {
      std::lock_guard lock(frame_mutex_);
      if (!published_ || work.generation >= published_->generation) {
        published_ = std::make_shared<const render::FrameSlot>(work);
      }
    }
    {
      // Pairs with wait_for, which checks the snapshot under mutex_.
      std::lock_guard lock(mutex_);
    }
    published_cv_.notify_all();
  }
}

}  // namespace mantlevis::frameserver
