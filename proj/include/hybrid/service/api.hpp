#pragma once

#include <string>

#include "hybrid/editor/session.hpp"

namespace hybrid::service {

struct Request {
  std::string method;
  std::string path;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

// JSON projections shared by the HTTP routes and the CLI.
std::string state_to_json(const editor::SessionState& state);

// Routes requests onto the session registry. Independent of the transport so
// the HTTP server and in-process callers see identical behavior.
class Api {
 public:
  explicit Api(editor::SessionRegistry& registry) : registry_(registry) {}

  Response handle(const Request& request);

 private:
  editor::SessionRegistry& registry_;
};

}  // namespace hybrid::service
