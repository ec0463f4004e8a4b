#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hybrid/expected.hpp"
#include "hybrid/lang/diagnostic.hpp"

namespace hybrid::lang {

enum class TokenKind {
  Identifier,
  Integer,
  Float,
  String,
  Operator,
  RangeOpen,
  RangeClose,
  Newline,
  IndentLevel,
  Eof,
};

std::string_view to_string(TokenKind kind);

// Lexemes are raw source slices: string literals keep their quotes and
// escapes, indent-level tokens hold the leading spaces themselves.
struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string lexeme;
  int line = 1;
  int col = 1;

  [[nodiscard]] bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }

  friend bool operator==(const Token&, const Token&) = default;
};

inline constexpr int kIndentUnit = 2;

// Blank and comment-only lines produce no tokens. Newline tokens separate
// logical lines; an indent-level token opens every logical line indented
// by more than zero spaces. The list always ends with Eof.
Expected<std::vector<Token>, Diagnostics> tokenize(std::string_view source);

// CRLF -> LF.
std::string normalize_newlines(std::string_view source);

}  // namespace hybrid::lang
