#include "hybrid/editor/session.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <vector>

#include "hybrid/adapter/adapter.hpp"
#include "hybrid/adapter/palette.hpp"
#include "hybrid/lang/parser.hpp"
#include "hybrid/lang/token.hpp"

namespace hybrid::editor {

namespace {

// Physical pieces split on '\n'; "a\n" gives {"a", ""}.
std::vector<std::string_view> pieces(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(text.substr(start));
  return out;
}

std::string random_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 2; ++i) {
    std::uint64_t bits = rng();
    for (int j = 0; j < 16; ++j, bits >>= 4) id += kHex[bits & 0xf];
  }
  return id;
}

EditError refuse(std::string_view code, std::string message, std::int64_t revision) {
  return EditError{std::string(code), std::move(message), revision};
}

}  // namespace

int line_count(std::string_view text) {
  if (text.empty()) return 0;
  int n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

int drop_indent(std::string_view text, int line) {
  auto shapes = lang::classify_lines(text);
  int count = line_count(text);
  int prev = line - 1;
  while (prev >= 0 && shapes[prev].blank) --prev;
  int next = line;
  while (next < count && shapes[next].blank) ++next;

  if (prev >= 0 && shapes[prev].header) return shapes[prev].indent_spaces / lang::kIndentUnit + 1;
  if (next < count) {
    if (shapes[next].clause && prev >= 0) return shapes[prev].indent_spaces / lang::kIndentUnit;
    return shapes[next].indent_spaces / lang::kIndentUnit;
  }
  return 0;
}

LineRange changed_lines(std::string_view before, std::string_view after) {
  auto lines = [](std::string_view text) {
    auto out = pieces(text);
    if (text.empty() || text.back() == '\n') out.pop_back();
    return out;
  };
  auto a = lines(before);
  auto b = lines(after);
  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
  // Lines compare by index, so a change in line count shifts everything below.
  std::size_t end = b.size();
  if (a.size() == b.size()) {
    while (end > prefix && a[end - 1] == b[end - 1]) --end;
  }
  return LineRange{static_cast<int>(prefix), static_cast<int>(std::max(end, prefix))};
}

Session::Session(std::string id, std::string_view text) {
  state_.id = std::move(id);
  state_.text = std::string(text);
  sync();
}

SessionState Session::snapshot() const {
  std::lock_guard lock(mu_);
  return state_;
}

void Session::sync() {
  auto program = lang::parse(state_.text);
  if (program) {
    state_.blocks = adapter::ast_to_blocks(*program);
    state_.diagnostics.clear();
    state_.stale = false;
  } else {
    state_.diagnostics = std::move(program).error();
    state_.stale = true;
  }
}

EditResult Session::commit(std::string text) {
  LineRange changed = changed_lines(state_.text, text);
  state_.text = std::move(text);
  state_.revision += 1;
  sync();
  return EditResult{state_, changed};
}

Expected<EditResult, EditError> Session::drop_block(std::string_view palette_id, int line,
                                                    std::optional<std::int64_t> expected_revision) {
  std::lock_guard lock(mu_);
  if (expected_revision && *expected_revision != state_.revision) {
    return unexpected(refuse(codes::kRevisionConflict,
                             "expected revision " + std::to_string(*expected_revision) + ", session is at " +
                                 std::to_string(state_.revision),
                             state_.revision));
  }
  const adapter::PaletteItem* item = adapter::find_palette_item(palette_id);
  if (item == nullptr) {
    return unexpected(
        refuse(codes::kUnknownPaletteId, "no palette item '" + std::string(palette_id) + "'", state_.revision));
  }
  std::string text = lang::normalize_newlines(state_.text);
  int count = line_count(text);
  if (line < 0 || line > count) {
    return unexpected(refuse(codes::kLineOutOfRange,
                             "line " + std::to_string(line) + " is outside 0.." + std::to_string(count),
                             state_.revision));
  }

  std::string snippet = adapter::instantiate(*item, drop_indent(text, line));
  auto lines = pieces(text);
  if (!text.empty() && text.back() == '\n') lines.pop_back();
  std::string next;
  for (int i = 0; i < count; ++i) {
    if (i == line) next += snippet;
    next.append(lines[i]);
    next += '\n';
  }
  if (line == count) next += snippet;
  return commit(std::move(next));
}

Expected<EditResult, EditError> Session::edit_text(const TextRange& range, std::string_view replacement,
                                                   std::optional<std::int64_t> expected_revision) {
  std::lock_guard lock(mu_);
  if (expected_revision && *expected_revision != state_.revision) {
    return unexpected(refuse(codes::kRevisionConflict,
                             "expected revision " + std::to_string(*expected_revision) + ", session is at " +
                                 std::to_string(state_.revision),
                             state_.revision));
  }
  auto lines = pieces(state_.text);
  auto offset = [&](int line, int col) -> std::optional<std::size_t> {
    if (line < 0 || line >= static_cast<int>(lines.size())) return std::nullopt;
    if (col < 0 || col > static_cast<int>(lines[line].size())) return std::nullopt;
    return static_cast<std::size_t>(lines[line].data() - state_.text.data()) + static_cast<std::size_t>(col);
  };
  auto start = offset(range.start_line, range.start_col);
  auto end = offset(range.end_line, range.end_col);
  if (!start || !end || *start > *end) {
    return unexpected(refuse(codes::kRangeOutOfBounds,
                             "range " + std::to_string(range.start_line) + ":" + std::to_string(range.start_col) +
                                 "-" + std::to_string(range.end_line) + ":" + std::to_string(range.end_col) +
                                 " is not inside the text",
                             state_.revision));
  }
  std::string text = state_.text.substr(0, *start);
  text.append(replacement);
  text.append(state_.text, *end);
  return commit(std::move(text));
}

std::shared_ptr<Session> new_session(std::string_view text) { return std::make_shared<Session>(random_id(), text); }

SessionRegistry::SessionRegistry(std::chrono::seconds ttl, Clock clock)
    : ttl_(ttl), clock_(clock ? std::move(clock) : Clock{[] { return std::chrono::steady_clock::now(); }}) {}

std::chrono::seconds SessionRegistry::ttl_from_env() {
  if (const char* raw = std::getenv("HYBRID_SESSION_TTL")) {
    char* end = nullptr;
    long long v = std::strtoll(raw, &end, 10);
    if (end != raw && *end == '\0' && v > 0) return std::chrono::seconds(v);
  }
  return std::chrono::seconds(1800);
}

std::shared_ptr<Session> SessionRegistry::create(std::string_view text) {
  auto session = new_session(text);
  std::lock_guard lock(mu_);
  auto now = clock_();
  evict_locked(now);
  sessions_[session->snapshot().id] = Entry{session, now};
  return session;
}

Expected<std::shared_ptr<Session>, EditError> SessionRegistry::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto now = clock_();
  evict_locked(now);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return unexpected(refuse(codes::kUnknownSession, "no session '" + id + "'", 0));
  it->second.last_access = now;
  return it->second.session;
}

std::size_t SessionRegistry::evict_idle() {
  std::lock_guard lock(mu_);
  return evict_locked(clock_());
}

std::size_t SessionRegistry::evict_locked(std::chrono::steady_clock::time_point now) {
  return std::erase_if(sessions_, [&](const auto& kv) { return now - kv.second.last_access >= ttl_; });
}

std::size_t SessionRegistry::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

}  // namespace hybrid::editor
