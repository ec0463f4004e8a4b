#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hybrid/lang/parser.hpp"
#include "hybrid/lang/printer.hpp"
#include "hybrid/lang/token.hpp"
#include "support/program_gen.hpp"

using namespace hybrid::lang;

namespace {

std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(HYBRID_SOURCE_DIR) + "/data/samples/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::pair<TokenKind, std::string>> kinds(const std::vector<Token>& tokens) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const auto& t : tokens) out.emplace_back(t.kind, t.lexeme);
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  lines.push_back(cur);
  return lines;
}

bool location_in_bounds(const std::string& source, const Diagnostic& d) {
  auto lines = split_lines(normalize_newlines(source));
  if (d.line < 1 || d.line > static_cast<int>(lines.size())) return false;
  return d.col >= 1 && d.col <= static_cast<int>(lines[d.line - 1].size()) + 1;
}

Stmt call(std::string name, std::vector<Expr> args) {
  return Stmt{Call{std::move(name), std::move(args)}, {}};
}

}  // namespace

TEST_CASE("tokenize produces the expected token kinds") {
  auto toks = tokenize("x = 7");
  REQUIRE(toks);
  CHECK(kinds(*toks) == std::vector<std::pair<TokenKind, std::string>>{
                           {TokenKind::Identifier, "x"},
                           {TokenKind::Operator, "="},
                           {TokenKind::Integer, "7"},
                           {TokenKind::Eof, ""}});

  auto empty = tokenize("");
  REQUIRE(empty);
  REQUIRE(empty->size() == 1);
  CHECK(empty->front().kind == TokenKind::Eof);

  auto fd = tokenize("fd 100");
  REQUIRE(fd);
  CHECK(kinds(*fd) == std::vector<std::pair<TokenKind, std::string>>{
                          {TokenKind::Identifier, "fd"}, {TokenKind::Integer, "100"}, {TokenKind::Eof, ""}});
}

TEST_CASE("tokenize handles ranges, floats, indentation and comments") {
  auto toks = tokenize("for x in [0..10]\n  fd 2.5 // go\n\n// only a comment\nrt 1e3");
  REQUIRE(toks);
  auto k = kinds(*toks);
  std::vector<std::pair<TokenKind, std::string>> expected{
      {TokenKind::Identifier, "for"}, {TokenKind::Identifier, "x"},  {TokenKind::Identifier, "in"},
      {TokenKind::RangeOpen, "["},    {TokenKind::Integer, "0"},     {TokenKind::Operator, ".."},
      {TokenKind::Integer, "10"},     {TokenKind::RangeClose, "]"},  {TokenKind::Newline, "\n"},
      {TokenKind::IndentLevel, "  "}, {TokenKind::Identifier, "fd"}, {TokenKind::Float, "2.5"},
      {TokenKind::Newline, "\n"},     {TokenKind::Identifier, "rt"}, {TokenKind::Float, "1e3"},
      {TokenKind::Eof, ""}};
  CHECK(k == expected);
}

TEST_CASE("token locations point at their lexemes") {
  std::string src = "sum=0\nfor x in [0..10]\n  if x>8\n    sum=sum+x // note\n    write 'sum= ' + sum\n";
  auto toks = tokenize(src);
  REQUIRE(toks);
  auto lines = split_lines(src);
  for (const Token& t : *toks) {
    if (t.kind == TokenKind::Newline || t.kind == TokenKind::Eof) continue;
    const std::string& line = lines[static_cast<std::size_t>(t.line - 1)];
    CHECK(line.substr(static_cast<std::size_t>(t.col - 1), t.lexeme.size()) == t.lexeme);
  }
}

TEST_CASE("tokenize reports tabs and unterminated strings") {
  auto tab = tokenize("for [1..2]\n\tfd 1");
  REQUIRE_FALSE(tab);
  CHECK(has_code(tab.error(), "INDENT_TAB"));
  CHECK(tab.error().front().line == 2);
  CHECK(tab.error().front().col == 1);

  auto str = tokenize("write 'hello");
  REQUIRE_FALSE(str);
  CHECK(str.error().front().code == "UNTERMINATED_STRING");
  CHECK(str.error().front().col == 7);

  auto odd = tokenize("if x\n   fd 1");
  REQUIRE_FALSE(odd);
  CHECK(odd.error().front().code == "INDENT_MISMATCH");
}

TEST_CASE("CRLF sources parse like LF sources") {
  auto crlf = parse("x = 7\r\nif x > 0\r\n  write 'a'\r\n");
  auto lf = parse("x = 7\nif x > 0\n  write 'a'\n");
  REQUIRE(crlf);
  REQUIRE(lf);
  CHECK(*crlf == *lf);
}

TEST_CASE("Test sample 1 parses to assignment plus if/else") {
  auto p = parse(read_sample("sample1.mp"));
  REQUIRE(p);
  Program expected;
  expected.statements.push_back(Stmt{Assign{"x", int_lit(7)}, {}});
  If branch;
  branch.branches.push_back(
      Branch{binary(BinaryOp::Gt, var("x"), int_lit(0)), {call("write", {str_lit("x is a positive number.")})}});
  branch.else_body = Body{call("write", {str_lit("x is a negative number.")})};
  expected.statements.push_back(Stmt{std::move(branch), {}});
  CHECK(*p == expected);
  CHECK(p->statements[1].pos.line == 2);
}

TEST_CASE("Test sample 3 parses to a var-less range loop") {
  auto p = parse("for [1..10]\n  fd 100\n  rt 45");
  REQUIRE(p);
  Program expected;
  ForIn loop;
  loop.range = range(int_lit(1), int_lit(10));
  loop.body = {call("fd", {int_lit(100)}), call("rt", {int_lit(45)})};
  expected.statements.push_back(Stmt{std::move(loop), {}});
  CHECK(*p == expected);
}

TEST_CASE("Test sample 2 as written is an indentation error") {
  auto p = parse(read_sample("sample2.mp"));
  REQUIRE_FALSE(p);
  CHECK(has_code(p.error(), "INDENT_MISMATCH"));
  CHECK(p.error().front().line == 4);
  CHECK(parse(read_sample("sample2_fixed.mp")));
}

TEST_CASE("parse errors") {
  SUBCASE("empty body at end of file") {
    auto p = parse("for [1..3]");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "EMPTY_BODY");
  }
  SUBCASE("empty body before dedent") {
    auto p = parse("for [1..3]\n  if x\nfd 1");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "EMPTY_BODY");
  }
  SUBCASE("unexpected indentation") {
    auto p = parse("fd 1\n  rt 2");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "INDENT_MISMATCH");
  }
  SUBCASE("body indented too far") {
    auto p = parse("if x\n    fd 1");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "INDENT_MISMATCH");
  }
  SUBCASE("dangling else") {
    auto p = parse("else\n  fd 1");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "UNEXPECTED_TOKEN");
  }
  SUBCASE("bad expression") {
    auto p = parse("x = 3 +");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "UNEXPECTED_TOKEN");
    CHECK(p.error().front().col == 8);
  }
  SUBCASE("keyword as a variable") {
    CHECK_FALSE(parse("in = 3"));
  }
  SUBCASE("integer overflow") {
    auto p = parse("x = 99999999999999999999");
    REQUIRE_FALSE(p);
    CHECK(p.error().front().code == "INVALID_NUMBER");
  }
}

TEST_CASE("functions, else-if chains and calls") {
  auto p = parse("square = (size, n) ->\n  for [1..n]\n    fd size\n    rt 90\nsquare 100, 4\nshow = ->\n  write 'hi'\n");
  REQUIRE(p);
  REQUIRE(p->statements.size() == 3);
  const auto& def = std::get<FuncDef>(p->statements[0].node);
  CHECK(def.name == "square");
  CHECK(def.params == std::vector<std::string>{"size", "n"});
  const auto& c = std::get<Call>(p->statements[1].node);
  CHECK(c.args.size() == 2);
  CHECK(print(*p) ==
        "square = (size, n) ->\n  for [1..n]\n    fd size\n    rt 90\nsquare 100, 4\nshow = () ->\n  write 'hi'\n");

  auto chain = parse("if x > 0\n  write 1\nelse if x == 0\n  write 0\nelse\n  write -1\n");
  REQUIRE(chain);
  const auto& node = std::get<If>(chain->statements[0].node);
  CHECK(node.branches.size() == 2);
  CHECK(node.else_body.has_value());
}

TEST_CASE("print formatting rules") {
  CHECK(print(Program{}).empty());
  Program fd;
  fd.statements.push_back(call("fd", {int_lit(100)}));
  CHECK(print(fd) == "fd 100\n");

  std::string canonical = read_sample("sample1.mp");
  auto p = parse(canonical);
  REQUIRE(p);
  CHECK(print(*p) == canonical);

  auto messy = parse("sum=0\nfor x in [0..10]\n  if x>8\n    sum=sum+x\n    write 'sum= '+sum\n");
  REQUIRE(messy);
  CHECK(print(*messy) ==
        "sum = 0\nfor x in [0..10]\n  if x > 8\n    sum = sum + x\n    write 'sum= ' + sum\n");
}

TEST_CASE("printer keeps grouping and literal forms") {
  CHECK(print_expr(binary(BinaryOp::Mul, binary(BinaryOp::Add, var("a"), var("b")), var("c"))) ==
        "(a + b) * c");
  CHECK(print_expr(binary(BinaryOp::Sub, var("a"), binary(BinaryOp::Sub, var("b"), var("c")))) ==
        "a - (b - c)");
  CHECK(print_expr(binary(BinaryOp::Sub, binary(BinaryOp::Sub, var("a"), var("b")), var("c"))) ==
        "a - b - c");
  CHECK(print_expr(binary(BinaryOp::Sub, var("a"), int_lit(-3))) == "a - -3");
  CHECK(print_expr(float_lit(2.0)) == "2.0");
  CHECK(print_expr(float_lit(0.1)) == "0.1");
  CHECK(print_expr(str_lit("it's\n")) == "'it\\'s\\n'");

  auto p = parse("x = (a + b) * c\ny = a - -3\nz = 'it\\'s'");
  REQUIRE(p);
  CHECK(std::get<Assign>(p->statements[0].node).value ==
        binary(BinaryOp::Mul, binary(BinaryOp::Add, var("a"), var("b")), var("c")));
  CHECK(std::get<Assign>(p->statements[1].node).value == binary(BinaryOp::Sub, var("a"), int_lit(-3)));
  CHECK(std::get<Assign>(p->statements[2].node).value == str_lit("it's"));
}

TEST_CASE("round-trip property over generated programs") {
  hybrid::testing::ProgramGenerator gen(0xC0FFEE);
  int checked = 0;
  for (int i = 0; i < 1500; ++i) {
    Program p = gen.program();
    std::string text = print(p);
    auto reparsed = parse(text);
    REQUIRE_MESSAGE(reparsed, text);
    CHECK_MESSAGE(*reparsed == p, text);
    CHECK(print(*reparsed) == text);
    ++checked;
  }
  CHECK(checked == 1500);
}

TEST_CASE("canonical fixpoint for hand-written sources") {
  for (const char* src : {"sum=0\nfor x in [0..10]\n  if x>8\n    sum=sum+x\n",
                          "x=(1+2)*3 // comment\n\n\nwrite x",
                          "f = ->\n  write   'a'\nf"}) {
    auto p = parse(src);
    REQUIRE(p);
    std::string once = print(*p);
    auto again = parse(once);
    REQUIRE(again);
    CHECK(print(*again) == once);
    CHECK(*again == *p);
  }
}

TEST_CASE("dedenting the first body statement is always INDENT_MISMATCH") {
  hybrid::testing::ProgramGenerator gen(42);
  int mutations = 0;
  for (int i = 0; i < 300; ++i) {
    std::string text = print(gen.program());
    auto lines = split_lines(text);
    auto shapes = classify_lines(text);
    for (std::size_t h = 0; h + 1 < lines.size(); ++h) {
      if (!shapes[h].header) continue;
      auto mutated = lines;
      mutated[h + 1] = mutated[h + 1].substr(2);
      std::string joined;
      for (std::size_t j = 0; j < mutated.size(); ++j) {
        if (j > 0) joined += '\n';
        joined += mutated[j];
      }
      auto result = parse(joined);
      REQUIRE_MESSAGE(!result, joined);
      CHECK_MESSAGE(has_code(result.error(), "INDENT_MISMATCH"), joined);
      ++mutations;
    }
  }
  CHECK(mutations > 100);
}

TEST_CASE("diagnostic locations stay within the source") {
  hybrid::testing::ProgramGenerator gen(7);
  std::mt19937 rng(99);
  const std::string noise = " \t'x[]().-=>\n";
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    std::string text = print(gen.program());
    int edits = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int e = 0; e < edits; ++e) {
      std::size_t at = std::uniform_int_distribution<std::size_t>(0, text.size())(rng);
      if (rng() % 2 == 0 && at < text.size()) {
        text.erase(at, 1);
      } else {
        text.insert(at, 1, noise[rng() % noise.size()]);
      }
    }
    auto result = parse(text);
    if (result) continue;
    ++failures;
    for (const auto& d : result.error()) CHECK_MESSAGE(location_in_bounds(text, d), text);
  }
  CHECK(failures > 50);
}

TEST_CASE("classify_lines") {
  auto shapes = classify_lines("if x\n  fd 1 // c\n\nelse\n  f = (a) ->\n    rt a\n");
  REQUIRE(shapes.size() == 7);
  CHECK(shapes[0].header);
  CHECK_FALSE(shapes[1].header);
  CHECK(shapes[1].indent_spaces == 2);
  CHECK(shapes[2].blank);
  CHECK(shapes[3].clause);
  CHECK(shapes[4].header);
  CHECK(shapes[6].blank);
}
