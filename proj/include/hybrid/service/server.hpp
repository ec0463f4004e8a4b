#pragma once

#include <memory>
#include <string>

#include "hybrid/editor/session.hpp"

namespace hybrid::service {

// HTTP/1.1 transport for Api.
class Server {
 public:
  explicit Server(editor::SessionRegistry& registry);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HYBRID_PORT, default 8080.
int port_from_env();

}  // namespace hybrid::service
