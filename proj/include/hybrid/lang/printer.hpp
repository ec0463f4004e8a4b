#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hybrid/lang/ast.hpp"

namespace hybrid::lang {

// Canonical text: two spaces per nesting level, one statement per line,
// single spaces around binary operators, trailing newline.
std::string print(const Program& program);

std::string print_expr(const Expr& expr);
std::string print_args(const std::vector<Expr>& args);  // "a, b"
std::string print_number(double value);                 // shortest round-trip, keeps a '.'
std::string quote_string(std::string_view value);       // single-quoted with escapes

}  // namespace hybrid::lang
