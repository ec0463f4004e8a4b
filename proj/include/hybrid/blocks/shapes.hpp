#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hybrid/blocks/block_document.hpp"

namespace hybrid::blocks {

// How a block type's head line is spelled. The literal text of a head is
// fully determined by the type and its socket contents, so serialized
// markup carries only the sockets.
struct ShapePart {
  enum class Kind { Literal, Slot };
  Kind kind = Kind::Literal;
  std::string text;       // literal text, or socket name for a slot
  std::string separator;  // slots only: literal emitted before a non-empty socket
};

struct BlockShape {
  std::string type;
  std::vector<ShapePart> head;
  bool compound = false;     // owns an indented body
  bool has_clauses = false;  // accepts `else if` / `else` clause lines
};

const std::vector<BlockShape>& block_shapes();
const BlockShape* find_shape(std::string_view type);
std::vector<std::string> slot_names(const BlockShape& shape);

inline constexpr std::string_view kElseIfClause = "else if ";
inline constexpr std::string_view kElseClause = "else";
inline constexpr std::string_view kConditionSocket = "cond";

// Tokens for a head line between block-start and its line break.
// `sockets` must hold one entry per slot, in slot order.
std::vector<MarkupToken> expand_head(const BlockShape& shape, const std::vector<SocketView>& sockets);

}  // namespace hybrid::blocks
