#include <cctype>
#include <string>

#include "hybrid/lang/token.hpp"

namespace hybrid::lang {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::Float: return "float";
    case TokenKind::String: return "string-literal";
    case TokenKind::Operator: return "operator";
    case TokenKind::RangeOpen: return "range-open";
    case TokenKind::RangeClose: return "range-close";
    case TokenKind::Newline: return "newline";
    case TokenKind::IndentLevel: return "indent-level";
    case TokenKind::Eof: return "eof";
  }
  return "?";
}

std::string normalize_newlines(std::string_view source) {
  std::string out;
  out.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] == '\r' && i + 1 < source.size() && source[i + 1] == '\n') continue;
    out += source[i];
  }
  return out;
}

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : source_(normalize_newlines(source)) {}

  Expected<std::vector<Token>, Diagnostics> run() {
    std::size_t start = 0;
    int line_no = 1;
    int last_line = 1;
    int last_len = 0;
    while (true) {
      std::size_t end = source_.find('\n', start);
      bool final_piece = end == std::string::npos;
      if (final_piece) end = source_.size();
      std::string_view line(source_.data() + start, end - start);
      lex_line(line, line_no);
      last_line = line_no;
      last_len = static_cast<int>(line.size());
      if (final_piece) break;
      start = end + 1;
      ++line_no;
    }
    tokens_.push_back(Token{TokenKind::Eof, "", last_line, last_len + 1});
    if (!diags_.empty()) return unexpected(std::move(diags_));
    return std::move(tokens_);
  }

 private:
  void error(std::string_view code, std::string message, int line, std::size_t index) {
    diags_.push_back(make_error(code, std::move(message), line, static_cast<int>(index) + 1));
  }

  void lex_line(std::string_view line, int line_no) {
    std::size_t i = 0;
    int spaces = 0;
    std::size_t first_tab = std::string_view::npos;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
      if (line[i] == '\t') {
        if (first_tab == std::string_view::npos) first_tab = i;
      } else {
        ++spaces;
      }
      ++i;
    }
    std::string_view rest = line.substr(i);
    if (rest.empty() || rest.rfind("//", 0) == 0 || rest == "\r") return;

    if (first_tab != std::string_view::npos) {
      error(codes::kIndentTab, "tab character in indentation", line_no, first_tab);
    }
    if (had_line_) {
      tokens_.push_back(Token{TokenKind::Newline, "\n", prev_line_, prev_len_ + 1});
    }
    had_line_ = true;
    prev_line_ = line_no;
    prev_len_ = static_cast<int>(line.size());

    if (i > 0 && first_tab == std::string_view::npos) {
      tokens_.push_back(Token{TokenKind::IndentLevel, std::string(line.substr(0, i)), line_no, 1});
      if (spaces % kIndentUnit != 0) {
        error(codes::kIndentMismatch,
              "indentation of " + std::to_string(spaces) + " spaces is not a multiple of 2",
              line_no, i);
      }
    }

    while (i < line.size()) {
      char c = line[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') break;
      std::size_t begin = i;
      auto push = [&](TokenKind kind, std::size_t len) {
        tokens_.push_back(
            Token{kind, std::string(line.substr(begin, len)), line_no, static_cast<int>(begin) + 1});
        i = begin + len;
      };

      if (is_ident_start(c)) {
        std::size_t j = i + 1;
        while (j < line.size() && is_ident_char(line[j])) ++j;
        push(TokenKind::Identifier, j - i);
        continue;
      }
      if (is_digit(c)) {
        std::size_t j = i;
        bool is_float = false;
        while (j < line.size() && is_digit(line[j])) ++j;
        if (j + 1 < line.size() && line[j] == '.' && is_digit(line[j + 1])) {
          is_float = true;
          ++j;
          while (j < line.size() && is_digit(line[j])) ++j;
        }
        if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
          if (k < line.size() && is_digit(line[k])) {
            is_float = true;
            j = k;
            while (j < line.size() && is_digit(line[j])) ++j;
          }
        }
        push(is_float ? TokenKind::Float : TokenKind::Integer, j - i);
        continue;
      }
      if (c == '\'' || c == '"') {
        std::size_t j = i + 1;
        bool closed = false;
        while (j < line.size()) {
          if (line[j] == '\\') {
            j += 2;
            continue;
          }
          if (line[j] == c) {
            closed = true;
            ++j;
            break;
          }
          ++j;
        }
        if (!closed) {
          error(codes::kUnterminatedString, "unterminated string literal", line_no, i);
          return;
        }
        push(TokenKind::String, j - i);
        continue;
      }
      if (c == '[') {
        push(TokenKind::RangeOpen, 1);
        continue;
      }
      if (c == ']') {
        push(TokenKind::RangeClose, 1);
        continue;
      }
      if (i + 1 < line.size()) {
        std::string_view two = line.substr(i, 2);
        if (two == "->" || two == ".." || two == ">=" || two == "<=" || two == "==" ||
            two == "!=") {
          push(TokenKind::Operator, 2);
          continue;
        }
      }
      if (std::string_view("+-*/%<>=(),").find(c) != std::string_view::npos) {
        push(TokenKind::Operator, 1);
        continue;
      }
      error(codes::kUnexpectedToken, std::string("unexpected character '") + c + "'", line_no, i);
      ++i;
    }
  }

  std::string source_;
  std::vector<Token> tokens_;
  Diagnostics diags_;
  bool had_line_ = false;
  int prev_line_ = 1;
  int prev_len_ = 0;
};

}  // namespace

Expected<std::vector<Token>, Diagnostics> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace hybrid::lang
