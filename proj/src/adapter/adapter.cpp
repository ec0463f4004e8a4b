#include "hybrid/adapter/adapter.hpp"

#include <array>

#include "hybrid/blocks/markup.hpp"
#include "hybrid/blocks/shapes.hpp"
#include "hybrid/lang/printer.hpp"

namespace hybrid::adapter {

using blocks::BlockDocument;
using blocks::MarkupToken;
using blocks::SocketView;

bool is_builtin_command(std::string_view name) {
  static constexpr std::array<std::string_view, 7> kBuiltins{"fd", "bk", "rt", "lt", "speed", "pen", "write"};
  for (auto b : kBuiltins) {
    if (b == name) return true;
  }
  return false;
}

std::string block_type(const lang::Stmt& stmt) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lang::Call>) {
          return is_builtin_command(n.name) ? n.name : "func-call";
        } else if constexpr (std::is_same_v<T, lang::Assign>) {
          return "assignment";
        } else if constexpr (std::is_same_v<T, lang::If>) {
          return "if-else";
        } else if constexpr (std::is_same_v<T, lang::ForIn>) {
          return n.var ? "for-in" : "for-range";
        } else {
          return "func-def";
        }
      },
      stmt.node);
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ", ";
    out += parts[i];
  }
  return out;
}

std::vector<SocketView> head_sockets(const lang::Stmt& stmt) {
  return std::visit(
      [](const auto& n) -> std::vector<SocketView> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lang::Call>) {
          if (is_builtin_command(n.name)) return {{"args", lang::print_args(n.args)}};
          return {{"name", n.name}, {"args", lang::print_args(n.args)}};
        } else if constexpr (std::is_same_v<T, lang::Assign>) {
          return {{"name", n.name}, {"value", lang::print_expr(n.value)}};
        } else if constexpr (std::is_same_v<T, lang::If>) {
          return {{"cond", lang::print_expr(n.branches.front().cond)}};
        } else if constexpr (std::is_same_v<T, lang::ForIn>) {
          if (n.var) return {{"var", *n.var}, {"range", lang::print_expr(n.range)}};
          return {{"range", lang::print_expr(n.range)}};
        } else {
          return {{"name", n.name}, {"params", join(n.params)}};
        }
      },
      stmt.node);
}

class BlockEmitter {
 public:
  BlockDocument take() { return std::move(doc_); }

  void body(const lang::Body& statements, int depth) {
    for (const lang::Stmt& s : statements) stmt(s, depth);
  }

 private:
  void indent(int depth) {
    for (int d = 0; d < depth; ++d) doc_.tokens.push_back(MarkupToken::indent());
  }

  void stmt(const lang::Stmt& s, int depth) {
    std::string type = block_type(s);
    const blocks::BlockShape* shape = blocks::find_shape(type);
    indent(depth);
    doc_.tokens.push_back(MarkupToken::block_start(type, next_id_++));
    auto head = blocks::expand_head(*shape, head_sockets(s));
    doc_.tokens.insert(doc_.tokens.end(), head.begin(), head.end());
    doc_.tokens.push_back(MarkupToken::line_break());

    if (const auto* node = std::get_if<lang::If>(&s.node)) {
      body(node->branches.front().body, depth + 1);
      for (std::size_t i = 1; i < node->branches.size(); ++i) {
        indent(depth);
        doc_.tokens.push_back(MarkupToken::text(std::string(blocks::kElseIfClause)));
        doc_.tokens.push_back(MarkupToken::socket_start(std::string(blocks::kConditionSocket)));
        doc_.tokens.push_back(MarkupToken::text(lang::print_expr(node->branches[i].cond)));
        doc_.tokens.push_back(MarkupToken::socket_end());
        doc_.tokens.push_back(MarkupToken::line_break());
        body(node->branches[i].body, depth + 1);
      }
      if (node->else_body) {
        indent(depth);
        doc_.tokens.push_back(MarkupToken::text(std::string(blocks::kElseClause)));
        doc_.tokens.push_back(MarkupToken::line_break());
        body(*node->else_body, depth + 1);
      }
    } else if (const auto* loop = std::get_if<lang::ForIn>(&s.node)) {
      body(loop->body, depth + 1);
    } else if (const auto* def = std::get_if<lang::FuncDef>(&s.node)) {
      body(def->body, depth + 1);
    }
    doc_.tokens.push_back(MarkupToken::block_end());
  }

  BlockDocument doc_;
  int next_id_ = 1;
};

}  // namespace

BlockDocument ast_to_blocks(const lang::Program& program) {
  BlockEmitter emitter;
  emitter.body(program.statements, 0);
  return emitter.take();
}

Expected<std::string, blocks::MarkupError> blocks_to_text(const BlockDocument& doc) {
  if (auto error = blocks::validate(doc)) return unexpected(std::move(*error));
  return blocks::text_projection(doc);
}

Expected<std::string, blocks::MarkupError> blocks_to_text(std::string_view markup) {
  auto doc = blocks::from_markup(markup);
  if (!doc) return unexpected(std::move(doc).error());
  return blocks::text_projection(*doc);
}

}  // namespace hybrid::adapter
