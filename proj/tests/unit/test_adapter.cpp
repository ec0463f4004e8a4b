#include <fstream>
#include <set>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "hybrid/adapter/adapter.hpp"
#include "hybrid/adapter/palette.hpp"
#include "hybrid/blocks/markup.hpp"
#include "hybrid/lang/parser.hpp"
#include "hybrid/lang/printer.hpp"
#include "support/program_gen.hpp"

using namespace hybrid;
using namespace hybrid::adapter;

namespace {

std::string read_file(const std::string& rel) {
  std::ifstream in(std::string(HYBRID_SOURCE_DIR) + "/" + rel, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> block_types(const blocks::BlockDocument& doc) {
  std::vector<std::string> out;
  for (const auto& t : doc.tokens) {
    if (t.kind == blocks::MarkupKind::BlockStart) out.push_back(t.attrs.at("type"));
  }
  return out;
}

}  // namespace

TEST_CASE("ast_to_blocks for a single command") {
  auto p = lang::parse("fd 100");
  REQUIRE(p);
  auto doc = ast_to_blocks(*p);
  CHECK(block_types(doc) == std::vector<std::string>{"fd"});
  auto sockets = blocks::sockets_of(doc, 1);
  REQUIRE(sockets.size() == 1);
  CHECK(sockets[0].name == "args");
  CHECK(sockets[0].text == "100");
  CHECK(blocks::text_projection(doc) == lang::print(*p));
}

TEST_CASE("ast_to_blocks mirrors Test sample 1") {
  auto p = lang::parse(read_file("data/samples/sample1.mp"));
  REQUIRE(p);
  auto doc = ast_to_blocks(*p);
  CHECK(blocks::top_level_block_count(doc) == 2);
  CHECK(block_types(doc) == std::vector<std::string>{"assignment", "if-else", "write", "write"});
  CHECK(blocks::sockets_of(doc, 2).front().text == "x > 0");
}

TEST_CASE("empty program maps to an empty document") {
  CHECK(ast_to_blocks(lang::Program{}).tokens.empty());
  auto text = blocks_to_text(blocks::BlockDocument{});
  REQUIRE(text);
  CHECK(text->empty());
}

TEST_CASE("block types for every statement form") {
  auto p = lang::parse(
      "x = 1\nfor [1..2]\n  fd 1\nfor i in [1..2]\n  write i\nf = (a) ->\n  rt a\nf 3\nif x\n  pen red\n");
  REQUIRE(p);
  CHECK(block_types(ast_to_blocks(*p)) ==
        std::vector<std::string>{"assignment", "for-range", "fd", "for-in", "write", "func-def", "rt",
                                 "func-call", "if-else", "pen"});
}

TEST_CASE("composition law and bijection over generated programs") {
  testing::ProgramGenerator gen(2024);
  for (int i = 0; i < 1000; ++i) {
    lang::Program p = gen.program();
    auto text = blocks_to_text(ast_to_blocks(p));
    REQUIRE(text);
    CHECK(*text == lang::print(p));
    auto back = lang::parse(*text);
    REQUIRE(back);
    CHECK(*back == p);
  }
}

TEST_CASE("blocks_to_text propagates malformed markup") {
  auto text = blocks_to_text(std::string_view{"<block type=\"fd\" id=\"1\">"});
  REQUIRE_FALSE(text);
  CHECK(text.error().code == "MARKUP_MALFORMED");

  blocks::BlockDocument broken{{blocks::MarkupToken::block_start("fd", 1)}};
  CHECK_FALSE(blocks_to_text(broken));
}

TEST_CASE("palette contents") {
  const auto& items = palette();
  CHECK(items.size() == 13);
  const PaletteItem* loop = find_palette_item("for-range");
  REQUIRE(loop != nullptr);
  CHECK(loop->template_text == "for [1..5]\n  fd 100\n");
  CHECK(find_palette_item("if-else") != nullptr);
  CHECK(find_palette_item("assignment") != nullptr);
  CHECK(find_palette_item("nope") == nullptr);

  std::set<Category> categories;
  for (const auto& item : items) categories.insert(item.category);
  CHECK(categories.size() == 5);
}

TEST_CASE("every template parses and emits the declared sockets") {
  for (const PaletteItem& item : palette()) {
    auto p = lang::parse(item.template_text);
    REQUIRE_MESSAGE(p, item.id);
    CHECK(lang::print(*p) == item.template_text);
    auto doc = ast_to_blocks(*p);
    CHECK(block_types(doc).front() == item.id);
    std::vector<std::string> names;
    for (const auto& s : blocks::sockets_of(doc, 1)) names.push_back(s.name);
    CHECK_MESSAGE(names == item.sockets, item.id);
  }
}

TEST_CASE("instantiate re-indents templates") {
  CHECK(instantiate(*find_palette_item("fd"), 0) == "fd 100\n");
  CHECK(instantiate(*find_palette_item("fd"), 1) == "  fd 100\n");
  std::string nested = instantiate(*find_palette_item("for-range"), 1);
  CHECK(nested == "  for [1..5]\n    fd 100\n");
  // Parse-in-context: the re-indented loop is valid as a body.
  CHECK(lang::parse("for [1..2]\n" + nested));
}

TEST_CASE("instantiated templates splice into any body") {
  testing::ProgramGenerator gen(31);
  for (int i = 0; i < 60; ++i) {
    std::string text = lang::print(gen.program());
    std::vector<std::string> lines;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) lines.push_back(line);
    auto shapes = lang::classify_lines(text);
    for (std::size_t at = 0; at < lines.size(); ++at) {
      if (shapes[at].clause) continue;  // an `else` line is not a statement position
      int level = shapes[at].indent_spaces / 2;
      for (const PaletteItem& item : palette()) {
        std::string spliced;
        for (std::size_t j = 0; j < lines.size(); ++j) {
          if (j == at) spliced += instantiate(item, level);
          spliced += lines[j] + "\n";
        }
        CHECK_MESSAGE(lang::parse(spliced), spliced);
      }
    }
  }
}

TEST_CASE("palette.json export") {
  auto json = nlohmann::json::parse(palette_json());
  REQUIRE(json.is_array());
  CHECK(json.size() == palette().size());
  CHECK(json[0]["id"] == "fd");
  CHECK(json[0]["category"] == "movement");
  CHECK(json[0]["template"] == "fd 100\n");
  CHECK(json[0]["sockets"] == nlohmann::json::array({"args"}));
  CHECK(read_file("data/palette.json") == palette_json());
}
