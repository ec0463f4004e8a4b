#include "hybrid/blocks/markup.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <variant>

#include "hybrid/blocks/shapes.hpp"

namespace hybrid::blocks {

namespace {

void escape_into(std::string& out, std::string_view text, bool attribute) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        out += c;
        break;
      default: out += c; break;
    }
  }
}

}  // namespace

std::string to_markup(const BlockDocument& doc) {
  std::string out;
  std::vector<bool> past_head;  // per open block
  bool in_socket = false;
  for (const MarkupToken& t : doc.tokens) {
    switch (t.kind) {
      case MarkupKind::BlockStart:
        out += "<block type=\"";
        escape_into(out, t.attrs.at("type"), true);
        out += "\" id=\"";
        escape_into(out, t.attrs.at("id"), true);
        out += "\">";
        past_head.push_back(false);
        break;
      case MarkupKind::BlockEnd:
        out += "</block>";
        if (!past_head.empty()) past_head.pop_back();
        break;
      case MarkupKind::SocketStart:
        out += "<socket name=\"";
        escape_into(out, t.attrs.at("name"), true);
        out += "\">";
        in_socket = true;
        break;
      case MarkupKind::SocketEnd:
        out += "</socket>";
        in_socket = false;
        break;
      case MarkupKind::Text:
        if (in_socket || (!past_head.empty() && past_head.back())) escape_into(out, t.lexeme, false);
        break;
      case MarkupKind::LineBreak:
        if (!past_head.empty()) past_head.back() = true;
        break;
      case MarkupKind::IndentMarker:
        break;
    }
  }
  return out;
}

namespace {

struct RawSocket {
  std::string name;
  std::string text;
  std::size_t offset = 0;
};
struct RawText {
  std::string text;
  std::size_t offset = 0;
};
struct RawBlock;
using RawItem = std::variant<RawSocket, RawText, std::size_t>;  // size_t: index of a child block
struct RawBlock {
  std::string type;
  int id = 0;
  std::size_t offset = 0;
  std::vector<RawItem> items;
};

struct Failure {
  MarkupError error;
};

[[noreturn]] void fail(std::string message, std::size_t offset) {
  throw Failure{MarkupError{"MARKUP_MALFORMED", std::move(message), offset}};
}

class MarkupReader {
 public:
  explicit MarkupReader(std::string_view text) : src_(text) {}

  BlockDocument read() {
    std::vector<std::size_t> roots;
    while (pos_ < src_.size()) {
      if (src_[pos_] == ' ' || src_[pos_] == '\n' || src_[pos_] == '\r' || src_[pos_] == '\t') {
        ++pos_;
        continue;
      }
      if (!starts_with("<block")) fail("expected <block> at top level", pos_);
      roots.push_back(read_block());
    }
    BlockDocument doc;
    for (std::size_t root : roots) expand(doc, root, 0);
    return doc;
  }

 private:
  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  std::map<std::string, std::string> read_tag_attrs(std::size_t tag_start) {
    std::map<std::string, std::string> attrs;
    while (true) {
      while (pos_ < src_.size() && src_[pos_] == ' ') ++pos_;
      if (pos_ >= src_.size()) fail("unterminated tag", tag_start);
      if (src_[pos_] == '>') {
        ++pos_;
        return attrs;
      }
      std::size_t name_start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) != 0 || src_[pos_] == '-')) ++pos_;
      if (pos_ == name_start) fail("malformed attribute", pos_);
      std::string name(src_.substr(name_start, pos_ - name_start));
      if (!starts_with("=\"")) fail("expected =\" after attribute name", pos_);
      pos_ += 2;
      std::string value = read_text('"');
      if (pos_ >= src_.size() || src_[pos_] != '"') fail("unterminated attribute value", name_start);
      ++pos_;  // closing quote
      if (!attrs.emplace(name, std::move(value)).second) fail("duplicate attribute " + name, name_start);
    }
  }

  // Reads character data up to (not including) `stop` or '<'.
  std::string read_text(char stop) {
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != stop && src_[pos_] != '<') {
      if (src_[pos_] != '&') {
        out += src_[pos_++];
        continue;
      }
      static const std::pair<std::string_view, char> kEntities[] = {
          {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
      bool matched = false;
      for (const auto& [entity, ch] : kEntities) {
        if (starts_with(entity)) {
          out += ch;
          pos_ += entity.size();
          matched = true;
          break;
        }
      }
      if (!matched) fail("unknown entity", pos_);
    }
    return out;
  }

  std::size_t read_block() {
    std::size_t start = pos_;
    pos_ += 6;  // "<block"
    if (pos_ < src_.size() && src_[pos_] != ' ' && src_[pos_] != '>') fail("malformed block tag", start);
    auto attrs = read_tag_attrs(start);
    if (attrs.size() != 2 || !attrs.count("type") || !attrs.count("id")) {
      fail("block tag needs exactly type and id attributes", start);
    }
    int id = 0;
    const std::string& id_text = attrs.at("id");
    auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc{} || ptr != id_text.data() + id_text.size() || id <= 0) {
      fail("block id must be a positive integer", start);
    }
    if (!ids_.insert(id).second) fail("duplicate block id " + id_text, start);

    std::size_t index = blocks_.size();
    blocks_.push_back(RawBlock{attrs.at("type"), id, start, {}});
    while (true) {
      if (pos_ >= src_.size()) fail("unclosed <block>", start);
      if (starts_with("</block>")) {
        pos_ += 8;
        return index;
      }
      if (starts_with("<block")) {
        std::size_t child = read_block();
        blocks_[index].items.emplace_back(child);
      } else if (starts_with("<socket")) {
        blocks_[index].items.emplace_back(read_socket());
      } else if (src_[pos_] == '<') {
        fail("mismatched or unknown tag", pos_);
      } else {
        std::size_t text_start = pos_;
        blocks_[index].items.emplace_back(RawText{read_text('<'), text_start});
      }
    }
  }

  RawSocket read_socket() {
    std::size_t start = pos_;
    pos_ += 7;  // "<socket"
    if (pos_ < src_.size() && src_[pos_] != ' ' && src_[pos_] != '>') fail("malformed socket tag", start);
    auto attrs = read_tag_attrs(start);
    if (attrs.size() != 1 || !attrs.count("name")) fail("socket tag needs exactly a name attribute", start);
    std::string text = read_text('<');
    if (!starts_with("</socket>")) fail("socket content must be text followed by </socket>", pos_);
    pos_ += 9;
    return RawSocket{attrs.at("name"), std::move(text), start};
  }

  void expand(BlockDocument& doc, std::size_t index, int depth) {
    const RawBlock& block = blocks_[index];
    const BlockShape* shape = find_shape(block.type);
    if (shape == nullptr) fail("unknown block type '" + block.type + "'", block.offset);
    auto indent = [&] {
      for (int d = 0; d < depth; ++d) doc.tokens.push_back(MarkupToken::indent());
    };

    indent();
    doc.tokens.push_back(MarkupToken::block_start(block.type, block.id));
    auto names = slot_names(*shape);
    std::vector<SocketView> head;
    std::size_t item = 0;
    for (; item < block.items.size() && head.size() < names.size(); ++item) {
      const auto* socket = std::get_if<RawSocket>(&block.items[item]);
      if (socket == nullptr || socket->name != names[head.size()]) {
        fail("block '" + block.type + "' expects socket '" + names[head.size()] + "'",
             item < block.items.size() ? offset_of(block.items[item]) : block.offset);
      }
      head.push_back(SocketView{socket->name, socket->text});
    }
    if (head.size() != names.size()) {
      fail("block '" + block.type + "' is missing socket '" + names[head.size()] + "'", block.offset);
    }
    auto head_tokens = expand_head(*shape, head);
    doc.tokens.insert(doc.tokens.end(), head_tokens.begin(), head_tokens.end());
    doc.tokens.push_back(MarkupToken::line_break());

    std::size_t section_children = 0;
    bool seen_else = false;
    for (; item < block.items.size(); ++item) {
      const RawItem& raw = block.items[item];
      if (const auto* child = std::get_if<std::size_t>(&raw)) {
        if (!shape->compound) fail("block '" + block.type + "' cannot contain blocks", blocks_[*child].offset);
        expand(doc, *child, depth + 1);
        ++section_children;
        continue;
      }
      if (const auto* text = std::get_if<RawText>(&raw)) {
        if (!shape->has_clauses) fail("unexpected text in block '" + block.type + "'", text->offset);
        if (section_children == 0 || seen_else) fail("misplaced clause '" + text->text + "'", text->offset);
        section_children = 0;
        indent();
        doc.tokens.push_back(MarkupToken::text(text->text));
        if (text->text == kElseIfClause) {
          const RawSocket* cond = item + 1 < block.items.size()
                                      ? std::get_if<RawSocket>(&block.items[item + 1])
                                      : nullptr;
          if (cond == nullptr || cond->name != kConditionSocket) {
            fail("'else if' clause needs a cond socket", text->offset);
          }
          ++item;
          doc.tokens.push_back(MarkupToken::socket_start(cond->name));
          if (!cond->text.empty()) doc.tokens.push_back(MarkupToken::text(cond->text));
          doc.tokens.push_back(MarkupToken::socket_end());
        } else if (text->text == kElseClause) {
          seen_else = true;
        } else {
          fail("unknown clause '" + text->text + "'", text->offset);
        }
        doc.tokens.push_back(MarkupToken::line_break());
        continue;
      }
      fail("unexpected socket", std::get<RawSocket>(raw).offset);
    }
    if (shape->compound && section_children == 0) fail("block '" + block.type + "' has an empty body", block.offset);
    doc.tokens.push_back(MarkupToken::block_end());
  }

  std::size_t offset_of(const RawItem& item) const {
    if (const auto* s = std::get_if<RawSocket>(&item)) return s->offset;
    if (const auto* t = std::get_if<RawText>(&item)) return t->offset;
    return blocks_[std::get<std::size_t>(item)].offset;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<RawBlock> blocks_;
  std::set<int> ids_;
};

}  // namespace

Expected<BlockDocument, MarkupError> from_markup(std::string_view markup) {
  try {
    return MarkupReader(markup).read();
  } catch (Failure& f) {
    return unexpected(std::move(f.error));
  }
}

std::vector<LayoutRow> layout(const BlockDocument& doc) {
  std::vector<LayoutRow> rows;
  struct OpenBlock {
    int id;
    std::string type;
  };
  std::vector<OpenBlock> open;
  LayoutRow row;
  std::optional<std::string> previous_top_type;
  for (const MarkupToken& t : doc.tokens) {
    switch (t.kind) {
      case MarkupKind::IndentMarker:
        ++row.depth;
        break;
      case MarkupKind::BlockStart: {
        int id = std::stoi(t.attrs.at("id"));
        const std::string& type = t.attrs.at("type");
        if (open.empty()) {
          row.leading_blank = previous_top_type.has_value() && *previous_top_type != type;
          previous_top_type = type;
        }
        row.block_ids.push_back(id);
        open.push_back(OpenBlock{id, type});
        break;
      }
      case MarkupKind::BlockEnd:
        if (!open.empty()) open.pop_back();
        break;
      case MarkupKind::LineBreak:
        if (row.block_ids.empty() && !open.empty()) row.block_ids.push_back(open.back().id);
        row.row = static_cast<int>(rows.size());
        rows.push_back(std::move(row));
        row = LayoutRow{};
        break;
      default:
        break;
    }
  }
  return rows;
}

}  // namespace hybrid::blocks
