#include "hybrid/lang/printer.hpp"

#include <charconv>
#include <string>

namespace hybrid::lang {

namespace {

constexpr int kPrimaryPrecedence = 5;

int expr_precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return precedence(b->op);
  return kPrimaryPrecedence;
}

void print_expr_into(std::string& out, const Expr& e);

void print_operand(std::string& out, const Expr& child, int parent_prec, bool right) {
  int prec = expr_precedence(child);
  bool parens = prec < parent_prec || (right && prec == parent_prec);
  if (parens) out += '(';
  print_expr_into(out, child);
  if (parens) out += ')';
}

void print_expr_into(std::string& out, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, FloatLit>) {
          out += print_number(n.value);
        } else if constexpr (std::is_same_v<T, StrLit>) {
          out += quote_string(n.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Binary>) {
          int prec = precedence(n.op);
          print_operand(out, *n.lhs, prec, false);
          out += ' ';
          out += to_string(n.op);
          out += ' ';
          print_operand(out, *n.rhs, prec, true);
        } else if constexpr (std::is_same_v<T, Range>) {
          out += '[';
          print_expr_into(out, *n.lo);
          out += "..";
          print_expr_into(out, *n.hi);
          out += ']';
        }
      },
      e.node);
}

void print_body(std::string& out, const Body& body, int depth);

void print_stmt(std::string& out, const Stmt& s, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out += indent;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          out += n.name + " = ";
          print_expr_into(out, n.value);
          out += '\n';
        } else if constexpr (std::is_same_v<T, Call>) {
          out += n.name;
          if (!n.args.empty()) out += ' ' + print_args(n.args);
          out += '\n';
        } else if constexpr (std::is_same_v<T, FuncDef>) {
          out += n.name + " = (";
          for (std::size_t i = 0; i < n.params.size(); ++i) {
            if (i > 0) out += ", ";
            out += n.params[i];
          }
          out += ") ->\n";
          print_body(out, n.body, depth + 1);
        } else if constexpr (std::is_same_v<T, ForIn>) {
          out += "for ";
          if (n.var) out += *n.var + " in ";
          print_expr_into(out, n.range);
          out += '\n';
          print_body(out, n.body, depth + 1);
        } else if constexpr (std::is_same_v<T, If>) {
          for (std::size_t i = 0; i < n.branches.size(); ++i) {
            if (i > 0) out += indent + "else ";
            out += "if ";
            print_expr_into(out, n.branches[i].cond);
            out += '\n';
            print_body(out, n.branches[i].body, depth + 1);
          }
          if (n.else_body) {
            out += indent + "else\n";
            print_body(out, *n.else_body, depth + 1);
          }
        }
      },
      s.node);
}

void print_body(std::string& out, const Body& body, int depth) {
  for (const Stmt& s : body) print_stmt(out, s, depth);
}

}  // namespace

std::string print(const Program& program) {
  std::string out;
  print_body(out, program.statements, 0);
  return out;
}

std::string print_expr(const Expr& expr) {
  std::string out;
  print_expr_into(out, expr);
  return out;
}

std::string print_args(const std::vector<Expr>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    print_expr_into(out, args[i]);
  }
  return out;
}

std::string print_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, ec == std::errc{} ? ptr : buf);
  if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
  return text;
}

std::string quote_string(std::string_view value) {
  std::string out = "'";
  for (char c : value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\0': out += "\\0"; break;
      default: out += c; break;
    }
  }
  out += '\'';
  return out;
}

}  // namespace hybrid::lang
