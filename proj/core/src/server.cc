#include "gridlab/server.h"

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "gridlab/errors.h"

namespace gridlab {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

std::string_view MimeType(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".png") return "image/png";
  if (ext == ".svg") return "image/svg+xml";
  return "application/octet-stream";
}

}  // namespace

class WsConnection;

struct Server::Impl {
  Impl(SessionConfig config, ServerOptions opts)
      : options(std::move(opts)),
        acceptor(io),
        timer(io),
        session(
            std::move(config), [this](ClientId id, const std::string& msg) { Send(id, msg); },
            [this](ClientId id) { Close(id); }) {
    boost::system::error_code ec;
    const auto address = asio::ip::make_address(options.address, ec);
    if (ec) throw Error("bad address '" + options.address + "': " + ec.message());
    const tcp::endpoint endpoint(address, options.port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) {
      throw Error("cannot listen on " + options.address + ":" + std::to_string(options.port) +
                  ": " + ec.message());
    }
  }

  void Accept();
  void ScheduleTick();
  void AfterMessage();
  void Send(ClientId id, const std::string& msg);
  void Close(ClientId id);

  ServerOptions options;
  asio::io_context io;
  tcp::acceptor acceptor;
  asio::steady_timer timer;
  Session session;
  std::map<ClientId, std::weak_ptr<WsConnection>> connections;
  ClientId next_id = 1;
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket socket, Server::Impl& server, ClientId id)
      : ws_(std::move(socket)), server_(server), id_(id) {}

  void Start(http::request<http::string_body> request) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(request, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->server_.connections[self->id_] = self;
      self->server_.session.OnConnect(self->id_);
      self->Read();
    });
  }

  void Send(const std::string& message) {
    if (closing_) return;
    queue_.push_back(message);
    if (queue_.size() == 1) Write();
  }

  void Close() {
    closing_ = true;
    if (queue_.empty()) CloseNow();
  }

 private:
  void Read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->Gone();
      const std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      if (self->closing_) return;
      self->server_.session.OnMessage(self->id_, text);
      self->server_.AfterMessage();
      if (!self->closing_) self->Read();
    });
  }

  void Write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(queue_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return self->Gone();
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) {
                        self->Write();
                      } else if (self->closing_) {
                        self->CloseNow();
                      }
                    });
  }

  void CloseNow() {
    ws_.async_close(websocket::close_code::policy_error,
                    [self = shared_from_this()](beast::error_code) { self->Gone(); });
  }

  void Gone() {
    if (gone_) return;
    gone_ = true;
    server_.connections.erase(id_);
    server_.session.OnDisconnect(id_);
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  Server::Impl& server_;
  ClientId id_;
  bool closing_ = false;
  bool gone_ = false;
};

// Reads one HTTP request: upgrades to WebSocket or serves a static file.
class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, Server::Impl& server)
      : stream_(std::move(socket)), server_(server) {}

  void Start() {
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, request_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       if (!ec) self->Handle();
                     });
  }

 private:
  void Handle() {
    if (websocket::is_upgrade(request_)) {
      stream_.expires_never();
      auto ws = std::make_shared<WsConnection>(stream_.release_socket(), server_,
                                               server_.next_id++);
      ws->Start(std::move(request_));
      return;
    }
    auto response = std::make_shared<http::response<http::string_body>>();
    response->version(request_.version());
    response->keep_alive(false);
    Serve(*response);
    response->prepare_payload();
    http::async_write(stream_, *response,
                      [self = shared_from_this(), response](beast::error_code, std::size_t) {
                        beast::error_code ignored;
                        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                      });
  }

  void Serve(http::response<http::string_body>& response) {
    namespace fs = std::filesystem;
    response.set(http::field::content_type, "text/plain");
    if (request_.method() != http::verb::get || server_.options.static_dir.empty()) {
      response.result(http::status::not_found);
      response.body() = "not found\n";
      return;
    }
    std::string target(request_.target());
    target = target.substr(0, target.find('?'));
    if (target.empty() || target.back() == '/') target += "index.html";
    if (target.find("..") != std::string::npos) {
      response.result(http::status::bad_request);
      response.body() = "bad path\n";
      return;
    }
    const fs::path path = fs::path(server_.options.static_dir) / target.substr(1);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      response.result(http::status::not_found);
      response.body() = "not found\n";
      return;
    }
    std::ostringstream body;
    body << in.rdbuf();
    response.result(http::status::ok);
    response.set(http::field::content_type, std::string(MimeType(path)));
    response.body() = body.str();
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  Server::Impl& server_;
};

void Server::Impl::Accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<HttpConnection>(std::move(socket), *this)->Start();
    Accept();
  });
}

void Server::Impl::ScheduleTick() {
  timer.expires_after(std::chrono::milliseconds(session.config().tick_ms));
  timer.async_wait([this](beast::error_code ec) {
    if (ec) return;  // cancelled: rescheduled or stopping
    session.Step();
    ScheduleTick();
  });
}

void Server::Impl::AfterMessage() {
  if (session.config().tick == TickPolicy::kLockstep && session.ReadyToStep()) {
    session.Step();
    ScheduleTick();  // restart the timeout from this step
  }
}

void Server::Impl::Send(ClientId id, const std::string& msg) {
  auto it = connections.find(id);
  if (it == connections.end()) return;
  if (auto conn = it->second.lock()) conn->Send(msg);
}

void Server::Impl::Close(ClientId id) {
  auto it = connections.find(id);
  if (it == connections.end()) return;
  if (auto conn = it->second.lock()) conn->Close();
}

Server::Server(SessionConfig config, ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(options))) {}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::Run() {
  impl_->Accept();
  impl_->ScheduleTick();
  impl_->io.run();
}

void Server::Stop() {
  asio::post(impl_->io, [impl = impl_.get()] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    impl->timer.cancel();
    impl->io.stop();
  });
}

}  // namespace gridlab
