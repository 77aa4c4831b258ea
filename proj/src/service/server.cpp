// Copyright 2026 The Hidden Agenda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hidden_agenda/service/server.hpp"

#include <atomic>
#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "hidden_agenda/service/session.hpp"

namespace hidden_agenda::service {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

ServerOptions options_from_environment() {
  ServerOptions o;
  if (const char* host = std::getenv("HA_SERVICE_HOST"); host && *host) o.host = host;
  if (const char* port = std::getenv("HA_SERVICE_PORT"); port && *port) {
    const int p = std::atoi(port);
    if (p < 0 || p > 65535) throw std::invalid_argument("HA_SERVICE_PORT out of range");
    o.port = static_cast<std::uint16_t>(p);
  }
  return o;
}

namespace {

class Connection;
class SessionHost;

// Sessions by id plus the id generator; shared by all connections.
struct Registry {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<SessionHost>> sessions;
  std::atomic<int> next_client{1};
  std::mt19937_64 id_rng{std::random_device{}()};
  double grace_seconds = 2.0;
  net::io_context* ioc = nullptr;  // where session timers run
  std::string record_dir;

  std::string new_id() {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string id(12, '0');
    for (char& c : id) c = kDigits[id_rng() % 16];
    return id;
  }
  std::shared_ptr<SessionHost> find(const std::string& id) {
    std::lock_guard lock(mutex);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }
  int count() {
    std::lock_guard lock(mutex);
    return static_cast<int>(sessions.size());
  }
  void erase(const std::string& id) {
    std::lock_guard lock(mutex);
    sessions.erase(id);
  }
};

// One websocket client. Reads on its own strand, writes through a queue.
class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, std::shared_ptr<Registry> registry)
      : ws_(std::move(socket)), registry_(std::move(registry)), id_(registry_->next_client++) {}

  template <class Request>
  void accept(Request request) {
    ws_.text(true);
    ws_.async_accept(request, beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
  }

  ClientId id() const { return id_; }

  // Thread-safe: hops onto this connection's strand.
  void send(std::string text) {
    net::post(ws_.get_executor(), [self = shared_from_this(), text = std::move(text)]() mutable {
      self->outbox_.push_back(std::move(text));
      if (self->outbox_.size() == 1) self->write_next();
    });
  }
  void send(const json& message) { send(message.dump()); }

  // Called by the session host when the session goes away.
  void detach(const std::string& session_id) {
    net::post(ws_.get_executor(), [self = shared_from_this(), session_id] {
      if (self->session_ == session_id) self->session_.clear();
    });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    read_next();
  }
  void read_next() {
    ws_.async_read(buffer_, beast::bind_front_handler(&Connection::on_read, shared_from_this()));
  }
  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      leave_session();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    handle(text);
    read_next();
  }
  void write_next() {
    ws_.async_write(net::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->outbox_.clear();
        return;
      }
      self->outbox_.pop_front();
      if (!self->outbox_.empty()) self->write_next();
    });
  }

  void handle(const std::string& text);
  void leave_session();

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Registry> registry_;
  ClientId id_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  std::string session_;  // joined session id, empty when none
};

// Owns one Session. Every call into the Session runs on this strand, and
// the tick timer fires on it too, so steps never overlap.
class SessionHost : public std::enable_shared_from_this<SessionHost> {
 public:
  SessionHost(net::io_context& ioc, std::shared_ptr<Registry> registry, Session session)
      : strand_(net::make_strand(ioc)), timer_(strand_), registry_(std::move(registry)), session_(std::move(session)) {}

  const std::string& id() const { return session_.id(); }

  void join(std::shared_ptr<Connection> conn, std::optional<int> seat, FrameMode mode) {
    net::post(strand_, [self = shared_from_this(), conn, seat, mode] {
      try {
        auto out = self->session_.join(conn->id(), seat, mode);
        self->conns_[conn->id()] = conn;
        self->deliver(out);
        if (!self->ticking_) {
          self->ticking_ = true;
          self->next_tick_ = std::chrono::steady_clock::now();
          self->schedule();
        }
      } catch (const ProtocolError& e) {
        conn->send(error_message(e.code(), e.what()));
        conn->detach(self->id());
      }
    });
  }

  void submit(std::shared_ptr<Connection> conn, int tick, std::string action) {
    net::post(strand_, [self = shared_from_this(), conn, tick, action = std::move(action)] {
      try {
        self->deliver(self->session_.submit(conn->id(), tick, action));
      } catch (const ProtocolError& e) {
        conn->send(error_message(e.code(), e.what()));
      }
    });
  }

  void leave(ClientId client) {
    net::post(strand_, [self = shared_from_this(), client] {
      self->session_.leave(client);
      self->conns_.erase(client);
      if (self->session_.num_clients() == 0) self->close();
    });
  }

 private:
  void deliver(const std::vector<Outgoing>& out) {
    for (const auto& o : out) {
      if (auto it = conns_.find(o.client); it != conns_.end()) it->second->send(o.message);
    }
  }

  void schedule() {
    const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / session_.config().tick_rate));
    next_tick_ += period;
    timer_.expires_at(next_tick_);
    timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
      if (ec || self->closed_) return;
      self->deliver(self->session_.tick());
      if (self->session_.finished()) {
        self->save_record();
        self->timer_.expires_after(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(self->registry_->grace_seconds)));
        self->timer_.async_wait([self](beast::error_code) { self->close(); });
      } else {
        self->schedule();
      }
    });
  }

  void save_record() {
    if (registry_->record_dir.empty()) return;
    try {
      std::filesystem::create_directories(registry_->record_dir);
      save_replay(session_.record(),
                  std::filesystem::path(registry_->record_dir) / ("session_" + session_.id() + ".json"));
    } catch (const std::exception&) {
      // Recording is best effort; the live game is unaffected.
    }
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    timer_.cancel();
    for (auto& [id, conn] : conns_) {
      conn->send(notice_message("session_closed", "session " + session_.id() + " closed"));
      conn->detach(session_.id());
    }
    conns_.clear();
    registry_->erase(session_.id());
  }

  net::strand<net::io_context::executor_type> strand_;
  net::steady_timer timer_;
  std::shared_ptr<Registry> registry_;
  Session session_;
  std::map<ClientId, std::shared_ptr<Connection>> conns_;
  std::chrono::steady_clock::time_point next_tick_;
  bool ticking_ = false;
  bool closed_ = false;
};

std::optional<int> seat_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "spectator") throw ProtocolError("bad_request", "seat must be a number or \"spectator\"");
    return std::nullopt;
  }
  return j.get<int>();
}

}  // namespace

struct Server::Impl : std::enable_shared_from_this<Server::Impl> {
  explicit Impl(ServerOptions o) : options(std::move(o)), acceptor(ioc), registry(std::make_shared<Registry>()) {
    registry->grace_seconds = options.grace_seconds;
    registry->ioc = &ioc;
    registry->record_dir = options.record_dir;
    const tcp::endpoint endpoint(net::ip::make_address(options.host), options.port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(net::socket_base::max_listen_connections);
  }

  void accept_next();
  void serve_http(tcp::socket socket);

  ServerOptions options;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::shared_ptr<Registry> registry;
};

void Connection::leave_session() {
  if (session_.empty()) return;
  if (auto host = registry_->find(session_)) host->leave(id_);
  session_.clear();
}

void Connection::handle(const std::string& text) {
  json msg;
  try {
    msg = json::parse(text);
  } catch (const std::exception& e) {
    send(error_message("bad_request", std::string("malformed JSON: ") + e.what()));
    return;
  }
  try {
    if (!msg.is_object()) throw ProtocolError("bad_request", "messages are JSON objects");
    if (msg.contains("v") && msg.at("v") != kProtocolVersion) {
      throw ProtocolError("bad_version", "server speaks protocol version " + std::to_string(kProtocolVersion));
    }
    const std::string type = msg.value("type", "");
    if (type == "create_session" || type == "join") {
      if (!session_.empty()) throw ProtocolError("already_joined", "leave the current session first");
      const FrameMode mode = frame_mode_from_string(msg.value("mode", "sprites"));
      std::shared_ptr<SessionHost> host;
      std::optional<int> seat;
      if (type == "create_session") {
        SessionConfig config = session_config_from_json(msg);
        seat = config.human_seat;
        std::string id;
        {
          std::lock_guard lock(registry_->mutex);
          do id = registry_->new_id();
          while (registry_->sessions.count(id));
          host = std::make_shared<SessionHost>(*registry_->ioc, registry_, Session(id, std::move(config)));
          registry_->sessions[id] = host;
        }
      } else {
        host = registry_->find(msg.at("session").get<std::string>());
        if (!host) throw ProtocolError("unknown_session", "no session " + msg.at("session").get<std::string>());
        seat = seat_from_json(msg.at("seat"));
      }
      session_ = host->id();
      host->join(shared_from_this(), seat, mode);
    } else if (type == "action") {
      auto host = session_.empty() ? nullptr : registry_->find(session_);
      if (!host) throw ProtocolError("not_seated", "join a session first");
      host->submit(shared_from_this(), msg.at("tick").get<int>(), msg.at("action").get<std::string>());
    } else if (type == "leave") {
      leave_session();
    } else {
      throw ProtocolError("bad_request", "unknown message type '" + type + "'");
    }
  } catch (const ProtocolError& e) {
    send(error_message(e.code(), e.what()));
  } catch (const std::exception& e) {
    send(error_message("bad_request", e.what()));
  }
}

void Server::Impl::accept_next() {
  acceptor.async_accept(net::make_strand(ioc), [self = shared_from_this()](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    self->serve_http(std::move(socket));
    self->accept_next();
  });
}

void Server::Impl::serve_http(tcp::socket socket) {
  // Reads one request: websocket upgrade, GET /health or 404.
  struct Pending {
    beast::tcp_stream stream;
    beast::flat_buffer buffer;
    http::request<http::string_body> request;
    http::response<http::string_body> response;
  };
  auto p = std::make_shared<Pending>(Pending{beast::tcp_stream(std::move(socket)), {}, {}, {}});
  p->stream.expires_after(std::chrono::seconds(30));
  http::async_read(p->stream, p->buffer, p->request, [self = shared_from_this(), p](beast::error_code ec, std::size_t) {
    if (ec) return;
    p->stream.expires_never();
    if (websocket::is_upgrade(p->request)) {
      auto conn = std::make_shared<Connection>(p->stream.release_socket(), self->registry);
      conn->accept(std::move(p->request));
      return;
    }
    auto& res = p->response;
    res.version(p->request.version());
    res.keep_alive(false);
    res.set(http::field::content_type, "application/json");
    if (p->request.method() == http::verb::get && p->request.target() == "/health") {
      res.result(http::status::ok);
      res.body() = json{{"status", "ok"}, {"sessions", self->registry->count()}, {"protocol", kProtocolVersion}}.dump();
    } else {
      res.result(http::status::not_found);
      res.body() = json{{"error", "not found"}}.dump();
    }
    res.prepare_payload();
    http::async_write(p->stream, res, [p](beast::error_code, std::size_t) {
      beast::error_code ignored;
      p->stream.socket().shutdown(tcp::socket::shutdown_send, ignored);
    });
  });
}

Server::Server(ServerOptions options) : impl_(std::make_shared<Impl>(std::move(options))) {}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run(int threads) {
  impl_->accept_next();
  std::optional<net::signal_set> signals;
  if (impl_->options.stop_on_signals) {
    signals.emplace(impl_->ioc, SIGINT, SIGTERM);
    signals->async_wait([this](beast::error_code ec, int) {
      if (!ec) stop();
    });
  }
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) {
    pool.emplace_back([this] { impl_->ioc.run(); });
  }
  impl_->ioc.run();
  for (auto& t : pool) t.join();
}

void Server::stop() {
  net::post(impl_->ioc, [impl = impl_] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
  });
  impl_->ioc.stop();
}

int Server::session_count() const { return impl_->registry->count(); }

}  // namespace hidden_agenda::service
