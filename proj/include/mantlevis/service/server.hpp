#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "mantlevis/service/session.hpp"

namespace mantlevis::service {

struct ServerOptions {
  std::string address{"127.0.0.1"};
  std::uint16_t port{8080};
  /// Preprocessed directory bound to every new session; empty for none.
  std::string data_dir;
  /// Static files served under /ui; empty disables /ui.
  std::string ui_dir;
  SessionOptions session;
};

/// Duplex protocol over WebSocket upgrades on one port, plus GET /ui/*.
/// One thread and one Session per connection.
class Server {
 public:
  /// Binds immediately (port 0 picks a free port). Throws Io.
  explicit Server(ServerOptions options);
  ~Server();

  std::uint16_t port() const;
  /// Accepts connections until stop().
  void run();
  /// Safe from any thread; closes the listener and every connection.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// MIME type for a static file name.
std::string content_type(const std::string& path);

/// Resolves a request target under /ui to a file inside `ui_dir`, or "" when
/// it lies outside or does not exist.
std::string resolve_ui_path(const std::string& ui_dir, const std::string& target);

}  // namespace mantlevis::service
