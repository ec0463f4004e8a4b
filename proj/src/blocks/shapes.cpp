#include "hybrid/blocks/shapes.hpp"

namespace hybrid::blocks {

namespace {

ShapePart lit(std::string text) { return ShapePart{ShapePart::Kind::Literal, std::move(text), {}}; }
ShapePart slot(std::string name, std::string separator = {}) {
  return ShapePart{ShapePart::Kind::Slot, std::move(name), std::move(separator)};
}

BlockShape command(std::string name) {
  return BlockShape{name, {lit(name), slot("args", " ")}, false, false};
}

}  // namespace

const std::vector<BlockShape>& block_shapes() {
  static const std::vector<BlockShape> kShapes{
      command("fd"),
      command("bk"),
      command("rt"),
      command("lt"),
      command("speed"),
      command("pen"),
      command("write"),
      {"if-else", {lit("if "), slot("cond")}, true, true},
      {"for-range", {lit("for "), slot("range")}, true, false},
      {"for-in", {lit("for "), slot("var"), lit(" in "), slot("range")}, true, false},
      {"assignment", {slot("name"), lit(" = "), slot("value")}, false, false},
      {"func-def", {slot("name"), lit(" = ("), slot("params"), lit(") ->")}, true, false},
      {"func-call", {slot("name"), slot("args", " ")}, false, false},
  };
  return kShapes;
}

const BlockShape* find_shape(std::string_view type) {
  for (const BlockShape& shape : block_shapes()) {
    if (shape.type == type) return &shape;
  }
  return nullptr;
}

std::vector<std::string> slot_names(const BlockShape& shape) {
  std::vector<std::string> names;
  for (const ShapePart& part : shape.head) {
    if (part.kind == ShapePart::Kind::Slot) names.push_back(part.text);
  }
  return names;
}

std::vector<MarkupToken> expand_head(const BlockShape& shape, const std::vector<SocketView>& sockets) {
  std::vector<MarkupToken> out;
  std::string pending;
  auto flush = [&] {
    if (!pending.empty()) out.push_back(MarkupToken::text(std::move(pending)));
    pending.clear();
  };
  std::size_t next = 0;
  for (const ShapePart& part : shape.head) {
    if (part.kind == ShapePart::Kind::Literal) {
      pending += part.text;
      continue;
    }
    const SocketView& socket = sockets.at(next++);
    if (!socket.text.empty()) pending += part.separator;
    flush();
    out.push_back(MarkupToken::socket_start(socket.name));
    if (!socket.text.empty()) out.push_back(MarkupToken::text(socket.text));
    out.push_back(MarkupToken::socket_end());
  }
  flush();
  return out;
}

}  // namespace hybrid::blocks
