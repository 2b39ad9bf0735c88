#include "mantlevis/service/server.hpp"

#include <sys/socket.h>

#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "mantlevis/core/bytes.hpp"

namespace mantlevis::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
namespace fs = std::filesystem;

std::string content_type(const std::string& path) {
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
  if (ext == ".css") return "text/css; charset=utf-8";
  if (ext == ".json" || ext == ".map") return "application/json";
  if (ext == ".png") return "image/png";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

std::string resolve_ui_path(const std::string& ui_dir, const std::string& target) {
  if (ui_dir.empty()) return {};
  std::string t = target.substr(0, target.find_first_of("?#"));
  if (t != "/ui" && t.rfind("/ui/", 0) != 0) return {};
  std::string rel = t.size() <= 4 ? std::string() : t.substr(4);
  if (rel.empty() || rel.back() == '/') rel += "index.html";
  const fs::path p = fs::path(rel).lexically_normal();
  if (p.is_absolute() || p.empty() || *p.begin() == "..") return {};
  const fs::path full = fs::path(ui_dir) / p;
  std::error_code ec;
  return fs::is_regular_file(full, ec) ? full.string() : std::string();
}

struct Server::Impl {
  ServerOptions options;
  std::shared_ptr<const Dataset> dataset;
  asio::io_context ioc;
  tcp::acceptor acceptor{ioc};
  std::atomic<bool> stopping{false};
  std::mutex mutex;
  std::set<int> live;
  std::vector<std::thread> threads;

  void serve(tcp::socket socket);
  void websocket_loop(websocket::stream<tcp::socket>& ws);
  http::response<http::string_body> static_response(const http::request<http::string_body>& req) const;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  if (!impl_->options.data_dir.empty()) impl_->dataset = load_dataset(impl_->options.data_dir);
  boost::system::error_code ec;
  const auto address = asio::ip::make_address(impl_->options.address, ec);
  if (ec) throw Error(ErrorCode::Io, "bad address '" + impl_->options.address + "'");
  const tcp::endpoint ep(address, impl_->options.port);
  impl_->acceptor.open(ep.protocol(), ec);
  if (!ec) impl_->acceptor.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) impl_->acceptor.bind(ep, ec);
  if (!ec) impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) {
    throw Error(ErrorCode::Io, "cannot listen on " + impl_->options.address + ":" +
                                   std::to_string(impl_->options.port) + ": " + ec.message());
  }
}

Server::~Server() {
  stop();
  for (auto& t : impl_->threads) {
    if (t.joinable()) t.join();
  }
}

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  while (!impl_->stopping) {
    tcp::socket socket(impl_->ioc);
    boost::system::error_code ec;
    impl_->acceptor.accept(socket, ec);
    if (ec) {
      if (impl_->stopping) break;
      continue;
    }
    std::lock_guard lock(impl_->mutex);
    if (impl_->stopping) break;
    impl_->live.insert(socket.native_handle());
    impl_->threads.emplace_back([impl = impl_.get(), s = std::move(socket)]() mutable { impl->serve(std::move(s)); });
  }
}

void Server::stop() {
  std::lock_guard lock(impl_->mutex);
  if (impl_->stopping.exchange(true)) return;
  // shutdown() wakes threads blocked in accept() or read() on these sockets.
  ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
  for (const int fd : impl_->live) ::shutdown(fd, SHUT_RDWR);
}

http::response<http::string_body> Server::Impl::static_response(const http::request<http::string_body>& req) const {
  http::response<http::string_body> res;
  res.version(req.version());
  res.keep_alive(req.keep_alive());
  const std::string target(req.target());
  if (req.method() != http::verb::get && req.method() != http::verb::head) {
    res.result(http::status::method_not_allowed);
    res.body() = "method not allowed\n";
  } else if (target == "/" && !options.ui_dir.empty()) {
    res.result(http::status::found);
    res.set(http::field::location, "/ui/");
  } else if (const std::string file = resolve_ui_path(options.ui_dir, target); !file.empty()) {
    res.result(http::status::ok);
    res.set(http::field::content_type, content_type(file));
    if (req.method() == http::verb::get) {
      const Bytes data = read_file(file);
      res.body().assign(data.begin(), data.end());
    }
  } else {
    res.result(http::status::not_found);
    res.set(http::field::content_type, "text/plain");
    res.body() = "not found\n";
  }
  res.prepare_payload();
  return res;
}

void Server::Impl::websocket_loop(websocket::stream<tcp::socket>& ws) {
  Session session(options.session);
  if (dataset) session.bind(dataset);
  beast::flat_buffer buffer;
  for (;;) {
    boost::system::error_code ec;
    buffer.clear();
    ws.read(buffer, ec);
    if (ec) return;
    std::vector<Reply> replies;
    if (!ws.got_text()) {
      replies = session.handle_message(nlohmann::json());
    } else {
      replies = session.handle(beast::buffers_to_string(buffer.data()));
    }
    for (const Reply& r : replies) {
      if (r.binary) {
        ws.binary(true);
        ws.write(asio::buffer(*r.binary), ec);
      } else {
        ws.text(true);
        ws.write(asio::buffer(r.text.dump()), ec);
      }
      if (ec) return;
    }
  }
}

void Server::Impl::serve(tcp::socket socket) {
  const int fd = socket.native_handle();
  try {
    beast::flat_buffer buffer;
    for (;;) {
      http::request<http::string_body> req;
      boost::system::error_code ec;
      http::read(socket, buffer, req, ec);
      if (ec) break;
      if (websocket::is_upgrade(req)) {
        websocket::stream<tcp::socket> ws(std::move(socket));
        ws.accept(req, ec);
        if (!ec) websocket_loop(ws);
        break;
      }
      auto res = static_response(req);
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
  } catch (const std::exception& e) {
    std::cerr << "mantlevis: connection error: " << e.what() << "\n";
  }
  std::lock_guard lock(mutex);
  live.erase(fd);
}

}  // namespace mantlevis::service
