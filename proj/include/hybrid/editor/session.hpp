#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "hybrid/blocks/block_document.hpp"
#include "hybrid/expected.hpp"
#include "hybrid/lang/diagnostic.hpp"

namespace hybrid::editor {

namespace codes {
inline constexpr std::string_view kUnknownPaletteId = "UNKNOWN_PALETTE_ID";
inline constexpr std::string_view kLineOutOfRange = "LINE_OUT_OF_RANGE";
inline constexpr std::string_view kRangeOutOfBounds = "RANGE_OUT_OF_BOUNDS";
inline constexpr std::string_view kRevisionConflict = "REVISION_CONFLICT";
inline constexpr std::string_view kUnknownSession = "UNKNOWN_SESSION";
}  // namespace codes

struct EditError {
  std::string code;
  std::string message;
  std::int64_t revision = 0;  // revision of the session when the request was refused
};

// 0-based lines; columns are byte offsets within a line.
struct TextRange {
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;
};

// Half-open [start, end) over lines of the new text.
struct LineRange {
  int start = 0;
  int end = 0;
  friend bool operator==(const LineRange&, const LineRange&) = default;
};

struct SessionState {
  std::string id;
  std::string text;
  blocks::BlockDocument blocks;
  lang::Diagnostics diagnostics;
  std::int64_t revision = 0;
  bool stale = false;  // blocks come from an earlier revision because the text does not parse
};

struct EditResult {
  SessionState state;
  LineRange changed;
};

// Number of lines as an editor shows them; a final newline does not open a new line.
int line_count(std::string_view text);

// Indent level a block dropped before `line` receives.
int drop_indent(std::string_view text, int line);

// Lines of `after` whose content differs from the same line index in `before`.
LineRange changed_lines(std::string_view before, std::string_view after);

class Session {
 public:
  Session(std::string id, std::string_view text);

  SessionState snapshot() const;

  Expected<EditResult, EditError> drop_block(std::string_view palette_id, int line,
                                             std::optional<std::int64_t> expected_revision = std::nullopt);

  Expected<EditResult, EditError> edit_text(const TextRange& range, std::string_view replacement,
                                            std::optional<std::int64_t> expected_revision = std::nullopt);

 private:
  EditResult commit(std::string text);  // caller holds mu_
  void sync();                          // caller holds mu_

  mutable std::mutex mu_;
  SessionState state_;
};

std::shared_ptr<Session> new_session(std::string_view text);

// In-memory sessions with idle eviction.
class SessionRegistry {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionRegistry(std::chrono::seconds ttl = ttl_from_env(), Clock clock = {});

  std::shared_ptr<Session> create(std::string_view text);
  Expected<std::shared_ptr<Session>, EditError> find(const std::string& id);
  std::size_t evict_idle();
  std::size_t size() const;

  // HYBRID_SESSION_TTL in seconds, default 1800.
  static std::chrono::seconds ttl_from_env();

 private:
  struct Entry {
    std::shared_ptr<Session> session;
    std::chrono::steady_clock::time_point last_access;
  };

  std::size_t evict_locked(std::chrono::steady_clock::time_point now);

  mutable std::mutex mu_;
  std::chrono::seconds ttl_;
  Clock clock_;
  std::map<std::string, Entry> sessions_;
};

}  // namespace hybrid::editor
