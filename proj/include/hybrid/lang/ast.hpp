#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hybrid::lang {

// Heap box with value semantics, used to break recursion in the AST.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct SourcePos {
  int line = 0;
  int col = 0;
};

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Gt, Lt, Ge, Le, Eq, Ne };

std::string_view to_string(BinaryOp op);
std::optional<BinaryOp> binary_op_from(std::string_view text);
// 1 = equality, 2 = relational, 3 = additive, 4 = multiplicative.
int precedence(BinaryOp op);

struct Expr;

struct IntLit {
  std::int64_t value = 0;
  friend bool operator==(const IntLit&, const IntLit&) = default;
};
struct FloatLit {
  double value = 0.0;
  friend bool operator==(const FloatLit&, const FloatLit&) = default;
};
struct StrLit {
  std::string value;
  friend bool operator==(const StrLit&, const StrLit&) = default;
};
struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
};
struct Binary {
  BinaryOp op = BinaryOp::Add;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
// Only valid as the iterable of a for loop.
struct Range {
  Box<Expr> lo;
  Box<Expr> hi;
  friend bool operator==(const Range&, const Range&) = default;
};

struct Expr {
  std::variant<IntLit, FloatLit, StrLit, Var, Binary, Range> node;
  SourcePos pos;

  // Structural: positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b) { return a.node == b.node; }
};

struct Stmt;
using Body = std::vector<Stmt>;

struct Assign {
  std::string name;
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Branch {
  Expr cond;
  Body body;
  friend bool operator==(const Branch&, const Branch&);
};

// branches[0] is the `if`; the rest are `else if` links.
struct If {
  std::vector<Branch> branches;
  std::optional<Body> else_body;
  friend bool operator==(const If&, const If&);
};

struct ForIn {
  std::optional<std::string> var;
  Expr range;  // holds a Range
  Body body;
  friend bool operator==(const ForIn&, const ForIn&);
};

struct Call {
  std::string name;
  std::vector<Expr> args;
  friend bool operator==(const Call&, const Call&) = default;
};

struct FuncDef {
  std::string name;
  std::vector<std::string> params;
  Body body;
  friend bool operator==(const FuncDef&, const FuncDef&);
};

struct Stmt {
  std::variant<Assign, If, ForIn, Call, FuncDef> node;
  SourcePos pos;

  friend bool operator==(const Stmt& a, const Stmt& b) { return a.node == b.node; }
};

inline bool operator==(const Branch& a, const Branch& b) {
  return a.cond == b.cond && a.body == b.body;
}
inline bool operator==(const If& a, const If& b) {
  return a.branches == b.branches && a.else_body == b.else_body;
}
inline bool operator==(const ForIn& a, const ForIn& b) {
  return a.var == b.var && a.range == b.range && a.body == b.body;
}
inline bool operator==(const FuncDef& a, const FuncDef& b) {
  return a.name == b.name && a.params == b.params && a.body == b.body;
}

struct Program {
  Body statements;
  friend bool operator==(const Program&, const Program&) = default;
};

// Convenience constructors, mostly for tests and generated trees.
Expr int_lit(std::int64_t v);
Expr float_lit(double v);
Expr str_lit(std::string v);
Expr var(std::string name);
Expr binary(BinaryOp op, Expr lhs, Expr rhs);
Expr range(Expr lo, Expr hi);

bool is_keyword(std::string_view word);

}  // namespace hybrid::lang
