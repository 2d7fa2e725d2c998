#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <thread>

#include "httplib.h"

namespace ctd::testing {

// Local HTTP server on an ephemeral port, running until destruction.
class HttpStub {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit HttpStub(Handler on_post) {
    server_.Post("/.*", std::move(on_post));
    server_.Get("/.*", [](const httplib::Request&, httplib::Response& res) {
      res.status = 405;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~HttpStub() {
    server_.stop();
    thread_.join();
  }
  HttpStub(const HttpStub&) = delete;
  HttpStub& operator=(const HttpStub&) = delete;

  std::string url(const std::string& path = "/v1/complete") const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// A port that had a listener a moment ago and has none now.
inline int closed_port() {
  httplib::Server server;
  const int port = server.bind_to_any_port("127.0.0.1");
  server.stop();
  return port;
}

}  // namespace ctd::testing
