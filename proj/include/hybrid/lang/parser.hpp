#pragma once

#include <string_view>
#include <vector>

#include "hybrid/expected.hpp"
#include "hybrid/lang/ast.hpp"
#include "hybrid/lang/diagnostic.hpp"

namespace hybrid::lang {

// Lexes and parses MiniPencil source. On failure the diagnostics hold at
// least one error and no tree is produced.
Expected<Program, Diagnostics> parse(std::string_view source);

// Per-physical-line shape used by the editor to pick insertion indents.
struct LineShape {
  bool blank = true;        // empty or comment-only
  int indent_spaces = 0;    // leading spaces
  bool header = false;      // opens a body: if / else / for / function
  bool clause = false;      // starts with `else`
};

std::vector<LineShape> classify_lines(std::string_view source);

}  // namespace hybrid::lang
