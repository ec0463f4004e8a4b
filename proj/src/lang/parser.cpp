#include "hybrid/lang/parser.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "hybrid/lang/token.hpp"

namespace hybrid::lang {

namespace {

struct ParseFailure {
  Diagnostic diagnostic;
};

struct LogicalLine {
  int indent = 0;
  int number = 1;
  int end_col = 1;  // one past the last byte of the line
  std::vector<Token> tokens;
};

std::vector<LogicalLine> group_lines(const std::vector<Token>& tokens) {
  std::vector<LogicalLine> lines;
  LogicalLine current;
  bool open = false;
  for (const Token& tok : tokens) {
    switch (tok.kind) {
      case TokenKind::Newline:
        current.end_col = tok.col;
        lines.push_back(std::move(current));
        current = LogicalLine{};
        open = false;
        break;
      case TokenKind::Eof:
        if (open) {
          current.end_col = tok.line == current.number ? tok.col : current.end_col;
          lines.push_back(std::move(current));
        }
        break;
      case TokenKind::IndentLevel:
        current.indent = static_cast<int>(tok.lexeme.size());
        current.number = tok.line;
        open = true;
        break;
      default:
        if (!open) current.number = tok.line;
        open = true;
        current.tokens.push_back(tok);
        current.end_col = tok.col + static_cast<int>(tok.lexeme.size());
        break;
    }
  }
  return lines;
}

std::string decode_string(std::string_view lexeme) {
  std::string out;
  std::string_view body = lexeme.substr(1, lexeme.size() - 2);
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\' || i + 1 >= body.size()) {
      out += c;
      continue;
    }
    char e = body[++i];
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '0': out += '\0'; break;
      default: out += e; break;
    }
  }
  return out;
}

// Cursor over the tokens of one logical line.
class LineCursor {
 public:
  explicit LineCursor(const LogicalLine& line) : line_(line) {}

  [[nodiscard]] bool at_end() const { return pos_ >= line_.tokens.size(); }
  [[nodiscard]] const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < line_.tokens.size() ? &line_.tokens[pos_ + ahead] : nullptr;
  }
  const Token& take() { return line_.tokens[pos_++]; }

  bool accept(TokenKind kind, std::string_view text) {
    if (const Token* t = peek(); t != nullptr && t->is(kind, text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::string message) const {
    if (const Token* t = peek()) {
      throw ParseFailure{make_error(codes::kUnexpectedToken,
                                    std::move(message) + ", found '" + t->lexeme + "'", t->line,
                                    t->col)};
    }
    throw ParseFailure{make_error(codes::kUnexpectedToken,
                                  std::move(message) + ", found end of line", line_.number,
                                  line_.end_col)};
  }

  void expect(TokenKind kind, std::string_view text) {
    if (!accept(kind, text)) fail("expected '" + std::string(text) + "'");
  }

  void expect_end() {
    if (!at_end()) fail("expected end of line");
  }

  std::string expect_name(std::string_view what) {
    const Token* t = peek();
    if (t == nullptr || t->kind != TokenKind::Identifier || is_keyword(t->lexeme)) {
      fail("expected " + std::string(what));
    }
    return take().lexeme;
  }

  [[nodiscard]] std::size_t mark() const { return pos_; }
  void reset(std::size_t mark) { pos_ = mark; }

 private:
  const LogicalLine& line_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<LogicalLine> lines) : lines_(std::move(lines)) {}

  Program run() {
    Program program;
    program.statements = parse_block(0);
    return program;
  }

 private:
  Body parse_block(int indent) {
    Body body;
    while (cur_ < lines_.size()) {
      const LogicalLine& line = lines_[cur_];
      if (line.indent < indent) break;
      if (line.indent > indent) {
        throw ParseFailure{make_error(codes::kIndentMismatch, "unexpected indentation",
                                      line.number, line.indent + 1)};
      }
      body.push_back(parse_statement(indent));
    }
    return body;
  }

  // Called with cur_ on the line after a block header.
  Body parse_header_body(int indent, const LogicalLine& header, std::string_view what) {
    if (cur_ >= lines_.size()) {
      throw ParseFailure{make_error(codes::kEmptyBody, "'" + std::string(what) + "' has no body",
                                    header.number, header.end_col)};
    }
    const LogicalLine& next = lines_[cur_];
    if (next.indent == indent) {
      throw ParseFailure{make_error(
          codes::kIndentMismatch,
          "body of '" + std::string(what) + "' must be indented under its header", next.number,
          next.indent + 1)};
    }
    if (next.indent < indent) {
      throw ParseFailure{make_error(codes::kEmptyBody, "'" + std::string(what) + "' has no body",
                                    header.number, header.end_col)};
    }
    if (next.indent != indent + kIndentUnit) {
      throw ParseFailure{make_error(codes::kIndentMismatch,
                                    "body must be indented by exactly 2 spaces", next.number,
                                    next.indent + 1)};
    }
    return parse_block(indent + kIndentUnit);
  }

  Stmt parse_statement(int indent) {
    const LogicalLine& line = lines_[cur_];
    LineCursor cur(line);
    const Token& first = *cur.peek();
    SourcePos pos{first.line, first.col};

    if (first.is(TokenKind::Identifier, "if")) return parse_if(indent, pos);
    if (first.is(TokenKind::Identifier, "for")) return parse_for(indent, pos);
    if (first.is(TokenKind::Identifier, "else")) cur.fail("'else' without a matching 'if'");
    if (first.kind != TokenKind::Identifier || is_keyword(first.lexeme)) {
      cur.fail("expected a statement");
    }

    std::string name = cur.take().lexeme;
    if (cur.accept(TokenKind::Operator, "=")) {
      if (auto params = try_function_head(cur)) {
        cur.expect_end();
        ++cur_;
        Body body = parse_header_body(indent, line, name);
        return Stmt{FuncDef{std::move(name), std::move(*params), std::move(body)}, pos};
      }
      Expr value = parse_expr(cur);
      cur.expect_end();
      ++cur_;
      return Stmt{Assign{std::move(name), std::move(value)}, pos};
    }

    std::vector<Expr> args;
    if (!cur.at_end()) {
      args.push_back(parse_expr(cur));
      while (cur.accept(TokenKind::Operator, ",")) args.push_back(parse_expr(cur));
    }
    cur.expect_end();
    ++cur_;
    return Stmt{Call{std::move(name), std::move(args)}, pos};
  }

  // `(a, b) ->` or `->`; restores the cursor when the tokens are not a
  // function head.
  std::optional<std::vector<std::string>> try_function_head(LineCursor& cur) {
    if (cur.accept(TokenKind::Operator, "->")) return std::vector<std::string>{};
    std::size_t mark = cur.mark();
    if (!cur.accept(TokenKind::Operator, "(")) return std::nullopt;
    std::vector<std::string> params;
    if (!cur.accept(TokenKind::Operator, ")")) {
      while (true) {
        const Token* t = cur.peek();
        if (t == nullptr || t->kind != TokenKind::Identifier || is_keyword(t->lexeme)) {
          cur.reset(mark);
          return std::nullopt;
        }
        params.push_back(cur.take().lexeme);
        if (cur.accept(TokenKind::Operator, ",")) continue;
        if (cur.accept(TokenKind::Operator, ")")) break;
        cur.reset(mark);
        return std::nullopt;
      }
    }
    if (!cur.accept(TokenKind::Operator, "->")) {
      cur.reset(mark);
      return std::nullopt;
    }
    return params;
  }

  Stmt parse_if(int indent, SourcePos pos) {
    If node;
    {
      const LogicalLine& line = lines_[cur_];
      LineCursor cur(line);
      cur.take();
      Expr cond = parse_expr(cur);
      cur.expect_end();
      ++cur_;
      Body body = parse_header_body(indent, line, "if");
      node.branches.push_back(Branch{std::move(cond), std::move(body)});
    }
    while (cur_ < lines_.size() && lines_[cur_].indent == indent) {
      const LogicalLine& line = lines_[cur_];
      LineCursor cur(line);
      if (!cur.accept(TokenKind::Identifier, "else")) break;
      if (cur.accept(TokenKind::Identifier, "if")) {
        Expr cond = parse_expr(cur);
        cur.expect_end();
        ++cur_;
        Body body = parse_header_body(indent, line, "else if");
        node.branches.push_back(Branch{std::move(cond), std::move(body)});
        continue;
      }
      cur.expect_end();
      ++cur_;
      node.else_body = parse_header_body(indent, line, "else");
      break;
    }
    return Stmt{std::move(node), pos};
  }

  Stmt parse_for(int indent, SourcePos pos) {
    const LogicalLine& line = lines_[cur_];
    LineCursor cur(line);
    cur.take();
    ForIn node;
    if (const Token* t = cur.peek(); t != nullptr && t->kind != TokenKind::RangeOpen) {
      node.var = cur.expect_name("a loop variable or '['");
      cur.expect(TokenKind::Identifier, "in");
    }
    const Token* open = cur.peek();
    SourcePos range_pos = open ? SourcePos{open->line, open->col} : SourcePos{line.number, line.end_col};
    cur.expect(TokenKind::RangeOpen, "[");
    Expr lo = parse_expr(cur);
    cur.expect(TokenKind::Operator, "..");
    Expr hi = parse_expr(cur);
    cur.expect(TokenKind::RangeClose, "]");
    cur.expect_end();
    node.range = Expr{Range{std::move(lo), std::move(hi)}, range_pos};
    ++cur_;
    node.body = parse_header_body(indent, line, "for");
    return Stmt{std::move(node), pos};
  }

  Expr parse_expr(LineCursor& cur, int min_prec = 1) {
    Expr lhs = parse_primary(cur);
    while (true) {
      const Token* t = cur.peek();
      if (t == nullptr || t->kind != TokenKind::Operator) break;
      auto op = binary_op_from(t->lexeme);
      if (!op || precedence(*op) < min_prec) break;
      SourcePos pos{t->line, t->col};
      cur.take();
      Expr rhs = parse_expr(cur, precedence(*op) + 1);
      lhs = Expr{Binary{*op, std::move(lhs), std::move(rhs)}, pos};
    }
    return lhs;
  }

  Expr parse_primary(LineCursor& cur) {
    const Token* t = cur.peek();
    if (t == nullptr) cur.fail("expected an expression");
    SourcePos pos{t->line, t->col};
    switch (t->kind) {
      case TokenKind::Integer:
      case TokenKind::Float:
        return parse_number(cur.take(), false);
      case TokenKind::String:
        return Expr{StrLit{decode_string(cur.take().lexeme)}, pos};
      case TokenKind::Identifier:
        if (is_keyword(t->lexeme)) cur.fail("expected an expression");
        return Expr{Var{cur.take().lexeme}, pos};
      case TokenKind::Operator:
        if (t->lexeme == "(") {
          cur.take();
          Expr inner = parse_expr(cur);
          cur.expect(TokenKind::Operator, ")");
          return inner;
        }
        if (t->lexeme == "-") {
          const Token* next = cur.peek(1);
          if (next != nullptr &&
              (next->kind == TokenKind::Integer || next->kind == TokenKind::Float)) {
            cur.take();
            Expr lit = parse_number(cur.take(), true);
            lit.pos = pos;
            return lit;
          }
        }
        break;
      default:
        break;
    }
    cur.fail("expected an expression");
  }

  static Expr parse_number(const Token& tok, bool negative) {
    SourcePos pos{tok.line, tok.col};
    std::string text = (negative ? "-" : "") + tok.lexeme;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (tok.kind == TokenKind::Integer) {
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last) {
        throw ParseFailure{make_error(codes::kInvalidNumber,
                                      "integer literal out of range: " + tok.lexeme, tok.line,
                                      tok.col)};
      }
      return Expr{IntLit{value}, pos};
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
      throw ParseFailure{make_error(codes::kInvalidNumber,
                                    "float literal out of range: " + tok.lexeme, tok.line,
                                    tok.col)};
    }
    return Expr{FloatLit{value}, pos};
  }

  std::vector<LogicalLine> lines_;
  std::size_t cur_ = 0;
};

}  // namespace

Expected<Program, Diagnostics> parse(std::string_view source) {
  auto tokens = tokenize(source);
  if (!tokens) return unexpected(std::move(tokens).error());
  try {
    return Parser(group_lines(tokens.value())).run();
  } catch (ParseFailure& failure) {
    return unexpected(Diagnostics{std::move(failure.diagnostic)});
  }
}

std::vector<LineShape> classify_lines(std::string_view source) {
  std::string text = normalize_newlines(source);
  std::vector<LineShape> shapes;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    LineShape shape;
    std::size_t spaces = line.find_first_not_of(' ');
    shape.indent_spaces = static_cast<int>(spaces == std::string_view::npos ? line.size() : spaces);
    auto tokens = tokenize(line);
    if (tokens) {
      std::vector<Token> meaningful;
      for (const Token& t : tokens.value()) {
        if (t.kind != TokenKind::IndentLevel && t.kind != TokenKind::Eof) meaningful.push_back(t);
      }
      if (!meaningful.empty()) {
        shape.blank = false;
        const Token& head = meaningful.front();
        shape.clause = head.is(TokenKind::Identifier, "else");
        shape.header = shape.clause || head.is(TokenKind::Identifier, "if") ||
                       head.is(TokenKind::Identifier, "for") ||
                       meaningful.back().is(TokenKind::Operator, "->");
      }
    } else {
      auto first = line.find_first_not_of(" \t");
      shape.blank = first == std::string_view::npos;
    }
    shapes.push_back(shape);
    if (end == text.size()) break;
    start = end + 1;
  }
  return shapes;
}

}  // namespace hybrid::lang
