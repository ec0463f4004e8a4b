#include "hybrid/lang/ast.hpp"

#include <array>
#include <utility>

namespace hybrid::lang {

namespace {

struct OpInfo {
  BinaryOp op;
  std::string_view text;
  int precedence;
};

constexpr std::array<OpInfo, 11> kOps{{
    {BinaryOp::Add, "+", 3},
    {BinaryOp::Sub, "-", 3},
    {BinaryOp::Mul, "*", 4},
    {BinaryOp::Div, "/", 4},
    {BinaryOp::Mod, "%", 4},
    {BinaryOp::Gt, ">", 2},
    {BinaryOp::Lt, "<", 2},
    {BinaryOp::Ge, ">=", 2},
    {BinaryOp::Le, "<=", 2},
    {BinaryOp::Eq, "==", 1},
    {BinaryOp::Ne, "!=", 1},
}};

const OpInfo& info(BinaryOp op) {
  for (const auto& entry : kOps) {
    if (entry.op == op) return entry;
  }
  return kOps[0];
}

}  // namespace

std::string_view to_string(BinaryOp op) { return info(op).text; }

std::optional<BinaryOp> binary_op_from(std::string_view text) {
  for (const auto& entry : kOps) {
    if (entry.text == text) return entry.op;
  }
  return std::nullopt;
}

int precedence(BinaryOp op) { return info(op).precedence; }

Expr int_lit(std::int64_t v) { return Expr{IntLit{v}, {}}; }
Expr float_lit(double v) { return Expr{FloatLit{v}, {}}; }
Expr str_lit(std::string v) { return Expr{StrLit{std::move(v)}, {}}; }
Expr var(std::string name) { return Expr{Var{std::move(name)}, {}}; }
Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr{Binary{op, std::move(lhs), std::move(rhs)}, {}};
}
Expr range(Expr lo, Expr hi) { return Expr{Range{std::move(lo), std::move(hi)}, {}}; }

bool is_keyword(std::string_view word) {
  return word == "if" || word == "else" || word == "for" || word == "in";
}

}  // namespace hybrid::lang
