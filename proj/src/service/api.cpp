#include "hybrid/service/api.hpp"

#include <json.hpp>
#include <optional>
#include <vector>

#include "hybrid/adapter/palette.hpp"
#include "hybrid/blocks/markup.hpp"
#include "hybrid/interp/interpreter.hpp"
#include "hybrid/lang/parser.hpp"

namespace hybrid::service {

namespace {

using nlohmann::json;

constexpr std::string_view kValidation = "VALIDATION_ERROR";
constexpr std::string_view kNotFound = "NOT_FOUND";
constexpr std::string_view kMethodNotAllowed = "METHOD_NOT_ALLOWED";
constexpr std::string_view kNotRunnable = "NOT_RUNNABLE";

struct Rejection {
  int status;
  std::string code;
  std::string message;
  std::optional<std::int64_t> revision;
};

[[noreturn]] void reject(int status, std::string_view code, std::string message,
                         std::optional<std::int64_t> revision = std::nullopt) {
  throw Rejection{status, std::string(code), std::move(message), revision};
}

json diagnostics_json(const lang::Diagnostics& diagnostics) {
  json out = json::array();
  for (const lang::Diagnostic& d : diagnostics) {
    out.push_back({{"severity", d.severity == lang::Severity::Error ? "error" : "warning"},
                   {"code", d.code},
                   {"message", d.message},
                   {"line", d.line},
                   {"col", d.col}});
  }
  return out;
}

json state_json(const editor::SessionState& s) {
  json rows = json::array();
  for (const blocks::LayoutRow& r : blocks::layout(s.blocks)) {
    rows.push_back({{"row", r.row}, {"depth", r.depth}, {"block_ids", r.block_ids}, {"leading_blank", r.leading_blank}});
  }
  return json{{"id", s.id},
              {"text", s.text},
              {"blocks", blocks::to_markup(s.blocks)},
              {"layout", std::move(rows)},
              {"diagnostics", diagnostics_json(s.diagnostics)},
              {"revision", s.revision},
              {"stale", s.stale}};
}

Response reply(int status, const json& body) { return Response{status, body.dump()}; }

json parse_body(const std::string& body, std::initializer_list<const char*> allowed) {
  json doc;
  if (body.empty()) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(body);
    } catch (const json::parse_error& e) {
      reject(422, kValidation, std::string("body is not valid JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) reject(422, kValidation, "body must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) reject(422, kValidation, "unknown field '" + key + "'");
  }
  return doc;
}

std::int64_t int_field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) reject(422, kValidation, std::string("missing field '") + name + "'");
  if (!it->is_number_integer()) reject(422, kValidation, std::string("field '") + name + "' must be an integer");
  return it->get<std::int64_t>();
}

int small_int_field(const json& doc, const char* name) {
  std::int64_t v = int_field(doc, name);
  if (v < -1'000'000'000 || v > 1'000'000'000) reject(422, kValidation, std::string("field '") + name + "' is out of range");
  return static_cast<int>(v);
}

std::string string_field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) reject(422, kValidation, std::string("missing field '") + name + "'");
  if (!it->is_string()) reject(422, kValidation, std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

std::optional<std::int64_t> expected_revision(const json& doc) {
  if (!doc.contains("expected_revision") || doc["expected_revision"].is_null()) return std::nullopt;
  return int_field(doc, "expected_revision");
}

int edit_status(std::string_view code) {
  if (code == editor::codes::kRevisionConflict) return 409;
  if (code == editor::codes::kUnknownSession) return 404;
  return 422;
}

Response edit_reply(const Expected<editor::EditResult, editor::EditError>& result) {
  if (!result) {
    reject(edit_status(result.error().code), result.error().code, result.error().message, result.error().revision);
  }
  return reply(200, json{{"state", state_json(result->state)},
                         {"changed", {{"start", result->changed.start}, {"end", result->changed.end}}},
                         {"revision", result->state.revision}});
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  std::string_view p = path;
  if (auto q = p.find('?'); q != std::string_view::npos) p = p.substr(0, q);
  for (char c : p) {
    if (c == '/') {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

}  // namespace

std::string state_to_json(const editor::SessionState& state) { return state_json(state).dump(); }

Response Api::handle(const Request& request) {
  std::optional<std::int64_t> session_revision;
  try {
    auto parts = split_path(request.path);
    const std::string& method = request.method;
    auto require_method = [&](std::string_view wanted) {
      if (method != wanted) reject(405, kMethodNotAllowed, method + " is not allowed on " + request.path);
    };

    if (parts.size() == 1 && parts[0] == "palette") {
      require_method("GET");
      return Response{200, adapter::palette_json()};
    }
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      reject(404, kNotFound, "no route for " + request.path);
    }

    if (parts.size() == 1) {
      require_method("POST");
      json body = parse_body(request.body, {"text"});
      std::string text = body.contains("text") ? string_field(body, "text") : "";
      auto session = registry_.create(text);
      editor::SessionState s = session->snapshot();
      return reply(201, json{{"id", s.id}, {"state", state_json(s)}, {"revision", s.revision}});
    }

    auto found = registry_.find(parts[1]);
    if (!found) reject(404, found.error().code, found.error().message);
    editor::Session& session = **found;
    session_revision = session.snapshot().revision;

    if (parts.size() == 2) {
      require_method("GET");
      editor::SessionState s = session.snapshot();
      return reply(200, json{{"state", state_json(s)}, {"revision", s.revision}});
    }

    const std::string& action = parts[2];
    if (action == "drop") {
      require_method("POST");
      json body = parse_body(request.body, {"palette_id", "line", "expected_revision"});
      return edit_reply(
          session.drop_block(string_field(body, "palette_id"), small_int_field(body, "line"), expected_revision(body)));
    }
    if (action == "edit") {
      require_method("POST");
      json body = parse_body(request.body, {"range", "replacement", "expected_revision"});
      auto it = body.find("range");
      if (it == body.end() || !it->is_object()) reject(422, kValidation, "field 'range' must be an object");
      for (const auto& [key, value] : it->items()) {
        if (key != "start_line" && key != "start_col" && key != "end_line" && key != "end_col") {
          reject(422, kValidation, "unknown field 'range." + key + "'");
        }
      }
      editor::TextRange range{small_int_field(*it, "start_line"), small_int_field(*it, "start_col"),
                              small_int_field(*it, "end_line"), small_int_field(*it, "end_col")};
      return edit_reply(session.edit_text(range, string_field(body, "replacement"), expected_revision(body)));
    }
    if (action == "run") {
      require_method("POST");
      json body = parse_body(request.body, {"step_limit"});
      std::int64_t limit = body.contains("step_limit") ? int_field(body, "step_limit") : interp::kDefaultStepLimit;
      if (limit <= 0) reject(422, kValidation, "step_limit must be positive");
      editor::SessionState s = session.snapshot();
      auto program = lang::parse(s.text);
      if (!program) {
        return reply(422, json{{"error", {{"code", kNotRunnable}, {"message", "the program has syntax errors"}}},
                               {"diagnostics", diagnostics_json(program.error())},
                               {"revision", s.revision}});
      }
      auto trace = interp::run(*program, limit);
      if (!trace) {
        const auto& e = trace.error();
        return reply(200, json{{"runtime_error", {{"code", e.code}, {"message", e.message}, {"line", e.line}}},
                               {"revision", s.revision}});
      }
      return reply(200, json{{"trace", json::parse(interp::trace_to_json(*trace))}, {"revision", s.revision}});
    }
    reject(404, kNotFound, "no route for " + request.path);
  } catch (const Rejection& r) {
    json body{{"error", {{"code", r.code}, {"message", r.message}}}};
    auto revision = r.revision ? r.revision : session_revision;
    body["revision"] = revision ? json(*revision) : json(nullptr);
    return reply(r.status, body);
  }
}

}  // namespace hybrid::service
