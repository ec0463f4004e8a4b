#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybrid/expected.hpp"

namespace hybrid::blocks {

enum class MarkupKind { BlockStart, BlockEnd, SocketStart, SocketEnd, Text, LineBreak, IndentMarker };

// One element of the marked-up text stream. Block starts carry `type` and
// `id`; socket starts carry `name`; only text tokens carry a lexeme. A
// line break projects to "\n" and an indent marker to one indent unit.
struct MarkupToken {
  MarkupKind kind = MarkupKind::Text;
  std::map<std::string, std::string> attrs;
  std::string lexeme;

  static MarkupToken block_start(std::string type, int id);
  static MarkupToken block_end();
  static MarkupToken socket_start(std::string name);
  static MarkupToken socket_end();
  static MarkupToken text(std::string lexeme);
  static MarkupToken line_break();
  static MarkupToken indent();

  friend bool operator==(const MarkupToken&, const MarkupToken&) = default;
};

struct BlockDocument {
  std::vector<MarkupToken> tokens;

  friend bool operator==(const BlockDocument&, const BlockDocument&) = default;
};

struct MarkupError {
  std::string code = "MARKUP_MALFORMED";
  std::string message;
  std::size_t offset = 0;  // byte offset into the markup text, or token index for in-memory docs
};

// Well-nesting, unique positive ids, sockets only directly inside blocks
// and holding text only.
std::optional<MarkupError> validate(const BlockDocument& doc);

// Concatenation of text lexemes, line breaks and indent markers.
std::string text_projection(const BlockDocument& doc);

// Number of block-start tokens.
std::size_t block_count(const BlockDocument& doc);
// Number of block-start tokens at nesting depth 0.
std::size_t top_level_block_count(const BlockDocument& doc);

struct SocketView {
  std::string name;
  std::string text;
};

// The socket contents of the block with the given id, in order.
std::vector<SocketView> sockets_of(const BlockDocument& doc, int block_id);

}  // namespace hybrid::blocks
