#include "hybrid/lang/diagnostic.hpp"

#include <algorithm>

namespace hybrid::lang {

Diagnostic make_error(std::string_view code, std::string message, int line, int col) {
  return Diagnostic{Severity::Error, std::string(code), std::move(message), line, col};
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
  std::string out;
  if (!file.empty()) {
    out.append(file);
    out += ':';
  }
  out += std::to_string(d.line) + ':' + std::to_string(d.col) + ": ";
  out += d.severity == Severity::Error ? "error: " : "warning: ";
  out += d.code + ": " + d.message;
  return out;
}

bool has_code(const Diagnostics& diagnostics, std::string_view code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace hybrid::lang
