#include "hybrid/service/server.hpp"

#include <cstdlib>
#include <httplib.h>

#include "hybrid/service/api.hpp"

namespace hybrid::service {

struct Server::Impl {
  explicit Impl(editor::SessionRegistry& registry) : api(registry) {}
  Api api;
  httplib::Server http;
};

Server::Server(editor::SessionRegistry& registry) : impl_(std::make_unique<Impl>(registry)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    Response out = impl_->api.handle(Request{req.method, req.path, req.body});
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  impl_->http.Get(".*", forward);
  impl_->http.Post(".*", forward);
  impl_->http.Put(".*", forward);
  impl_->http.Delete(".*", forward);
  impl_->http.Patch(".*", forward);
  impl_->http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  impl_->http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                   {"Access-Control-Allow-Headers", "Content-Type"},
                                   {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

int port_from_env() {
  if (const char* raw = std::getenv("HYBRID_PORT")) {
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end != raw && *end == '\0' && v > 0 && v < 65536) return static_cast<int>(v);
  }
  return 8080;
}

}  // namespace hybrid::service
