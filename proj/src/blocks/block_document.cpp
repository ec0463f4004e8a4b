#include "hybrid/blocks/block_document.hpp"

#include <charconv>
#include <set>

namespace hybrid::blocks {

MarkupToken MarkupToken::block_start(std::string type, int id) {
  return MarkupToken{MarkupKind::BlockStart, {{"type", std::move(type)}, {"id", std::to_string(id)}}, {}};
}
MarkupToken MarkupToken::block_end() { return MarkupToken{MarkupKind::BlockEnd, {}, {}}; }
MarkupToken MarkupToken::socket_start(std::string name) {
  return MarkupToken{MarkupKind::SocketStart, {{"name", std::move(name)}}, {}};
}
MarkupToken MarkupToken::socket_end() { return MarkupToken{MarkupKind::SocketEnd, {}, {}}; }
MarkupToken MarkupToken::text(std::string lexeme) {
  return MarkupToken{MarkupKind::Text, {}, std::move(lexeme)};
}
MarkupToken MarkupToken::line_break() { return MarkupToken{MarkupKind::LineBreak, {}, {}}; }
MarkupToken MarkupToken::indent() { return MarkupToken{MarkupKind::IndentMarker, {}, {}}; }

namespace {

std::optional<int> parse_id(const std::string& text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value <= 0) return std::nullopt;
  return value;
}

}  // namespace

std::optional<MarkupError> validate(const BlockDocument& doc) {
  enum class Open { Block, Socket };
  std::vector<Open> stack;
  std::set<int> ids;
  auto fail = [](std::string message, std::size_t index) {
    return MarkupError{"MARKUP_MALFORMED", std::move(message), index};
  };
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const MarkupToken& t = doc.tokens[i];
    bool in_socket = !stack.empty() && stack.back() == Open::Socket;
    switch (t.kind) {
      case MarkupKind::BlockStart: {
        if (in_socket) return fail("block inside a socket", i);
        auto type = t.attrs.find("type");
        auto id = t.attrs.find("id");
        if (type == t.attrs.end() || type->second.empty() || id == t.attrs.end()) {
          return fail("block-start needs type and id", i);
        }
        auto value = parse_id(id->second);
        if (!value) return fail("block id must be a positive integer", i);
        if (!ids.insert(*value).second) return fail("duplicate block id " + id->second, i);
        stack.push_back(Open::Block);
        break;
      }
      case MarkupKind::BlockEnd:
        if (stack.empty() || stack.back() != Open::Block) return fail("unmatched block-end", i);
        stack.pop_back();
        break;
      case MarkupKind::SocketStart:
        if (stack.empty() || stack.back() != Open::Block) return fail("socket outside a block", i);
        if (!t.attrs.count("name")) return fail("socket-start needs a name", i);
        stack.push_back(Open::Socket);
        break;
      case MarkupKind::SocketEnd:
        if (!in_socket) return fail("unmatched socket-end", i);
        stack.pop_back();
        break;
      case MarkupKind::Text:
      case MarkupKind::LineBreak:
      case MarkupKind::IndentMarker:
        if (stack.empty()) return fail("content outside any block", i);
        if (in_socket && t.kind != MarkupKind::Text) return fail("socket content must be text", i);
        break;
    }
  }
  if (!stack.empty()) return fail("unclosed element", doc.tokens.size());
  return std::nullopt;
}

std::string text_projection(const BlockDocument& doc) {
  std::string out;
  for (const MarkupToken& t : doc.tokens) {
    if (t.kind == MarkupKind::Text) out += t.lexeme;
    if (t.kind == MarkupKind::LineBreak) out += '\n';
    if (t.kind == MarkupKind::IndentMarker) out += "  ";
  }
  return out;
}

std::size_t block_count(const BlockDocument& doc) {
  std::size_t n = 0;
  for (const MarkupToken& t : doc.tokens) n += t.kind == MarkupKind::BlockStart ? 1 : 0;
  return n;
}

std::size_t top_level_block_count(const BlockDocument& doc) {
  std::size_t n = 0;
  int depth = 0;
  for (const MarkupToken& t : doc.tokens) {
    if (t.kind == MarkupKind::BlockStart) {
      if (depth == 0) ++n;
      ++depth;
    } else if (t.kind == MarkupKind::BlockEnd) {
      --depth;
    }
  }
  return n;
}

std::vector<SocketView> sockets_of(const BlockDocument& doc, int block_id) {
  std::vector<SocketView> out;
  const std::string wanted = std::to_string(block_id);
  std::size_t i = 0;
  for (; i < doc.tokens.size(); ++i) {
    const MarkupToken& t = doc.tokens[i];
    if (t.kind == MarkupKind::BlockStart && t.attrs.at("id") == wanted) break;
  }
  int depth = 0;
  SocketView* open = nullptr;
  for (++i; i < doc.tokens.size(); ++i) {
    const MarkupToken& t = doc.tokens[i];
    if (t.kind == MarkupKind::BlockStart) ++depth;
    if (t.kind == MarkupKind::BlockEnd) {
      if (depth == 0) break;
      --depth;
    }
    if (depth != 0) continue;
    if (t.kind == MarkupKind::SocketStart) {
      out.push_back(SocketView{t.attrs.at("name"), {}});
      open = &out.back();
    } else if (t.kind == MarkupKind::SocketEnd) {
      open = nullptr;
    } else if (t.kind == MarkupKind::Text && open != nullptr) {
      open->text += t.lexeme;
    }
  }
  return out;
}

}  // namespace hybrid::blocks
