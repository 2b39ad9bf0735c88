#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mantlevis/service/dataset.hpp"
#include "mantlevis/service/json_io.hpp"

namespace mantlevis::service {

/// One outgoing protocol message: a text envelope, or a binary frame body.
struct Reply {
  nlohmann::json text;
  std::optional<Bytes> binary;
};

struct SessionOptions {
  frameserver::FrameServerOptions frameserver;
  std::uint32_t width{512};
  std::uint32_t height{512};
  /// Longest a request_frame with "min_passes" may wait.
  std::chrono::milliseconds max_frame_wait{30000};
};

/// Protocol state of one connection. Every request yields exactly one ack,
/// error or typed reply (a frame adds one binary message); failures never
/// escape as exceptions.
class Session {
 public:
  explicit Session(SessionOptions options = {});
  ~Session();

  std::vector<Reply> handle(const std::string& text);
  std::vector<Reply> handle_message(const nlohmann::json& message);

  /// Binds an already loaded dataset, as load_dataset does.
  void bind(std::shared_ptr<const Dataset> dataset);

  bool loaded() const { return dataset_ != nullptr; }
  const render::RenderState& state() const;
  const brush::BrushSet& pathline_brush() const { return pathline_brush_; }
  frameserver::FrameServer* frame_server() { return server_.get(); }
  const Dataset* dataset() const { return dataset_.get(); }

 private:
  nlohmann::json dispatch(const std::string& type, const nlohmann::json& payload, std::vector<Reply>& extra,
                          std::string& reply_type);
  std::uint64_t submit();
  const Dataset& require_dataset() const;

  SessionOptions options_;
  std::shared_ptr<const Dataset> dataset_;
  std::unique_ptr<frameserver::FrameServer> server_;
  std::optional<render::RenderState> state_;
  brush::BrushSet pathline_brush_;
  bool show_pathlines_{true};
};

}  // namespace mantlevis::service
