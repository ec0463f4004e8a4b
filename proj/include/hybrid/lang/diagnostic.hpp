#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hybrid::lang {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  int line = 1;  // 1-based
  int col = 1;   // 1-based, in bytes

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

namespace codes {
inline constexpr std::string_view kIndentTab = "INDENT_TAB";
inline constexpr std::string_view kIndentMismatch = "INDENT_MISMATCH";
inline constexpr std::string_view kUnterminatedString = "UNTERMINATED_STRING";
inline constexpr std::string_view kUnexpectedToken = "UNEXPECTED_TOKEN";
inline constexpr std::string_view kEmptyBody = "EMPTY_BODY";
inline constexpr std::string_view kInvalidNumber = "INVALID_NUMBER";
}  // namespace codes

Diagnostic make_error(std::string_view code, std::string message, int line, int col);

// "file:line:col: error: CODE: message" (file part omitted when empty).
std::string format_diagnostic(const Diagnostic& diagnostic, std::string_view file = {});

bool has_code(const Diagnostics& diagnostics, std::string_view code);

}  // namespace hybrid::lang
