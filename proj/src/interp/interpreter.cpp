#include "hybrid/interp/interpreter.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <optional>

namespace hybrid::interp {

namespace {

using Lookup = std::function<const Value*(const std::string&)>;

struct Failure {
  RuntimeDiagnostic diagnostic;
};

[[noreturn]] void fail(std::string_view code, std::string message, int line) {
  throw Failure{RuntimeDiagnostic{std::string(code), std::move(message), line}};
}

std::string_view type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "string";
    case 2: return "boolean";
    default: return "function";
  }
}

bool truthy(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d != 0.0 && !std::isnan(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return !s->empty();
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return true;
}

Value evaluate(const lang::Expr& expr, const Lookup& lookup);

double as_number(const Value& v, std::string_view what, int line) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  fail(codes::kTypeError, std::string(what) + " needs a number, got a " + std::string(type_name(v)), line);
}

Value apply(lang::BinaryOp op, const Value& lhs, const Value& rhs, int line) {
  using lang::BinaryOp;
  std::string symbol(lang::to_string(op));
  if (op == BinaryOp::Eq) return lhs == rhs;
  if (op == BinaryOp::Ne) return !(lhs == rhs);
  if (op == BinaryOp::Add &&
      (std::holds_alternative<std::string>(lhs) || std::holds_alternative<std::string>(rhs))) {
    if (std::holds_alternative<FunctionRef>(lhs) || std::holds_alternative<FunctionRef>(rhs)) {
      fail(codes::kTypeError, "cannot concatenate a function", line);
    }
    return format_value(lhs) + format_value(rhs);
  }
  const auto* ls = std::get_if<std::string>(&lhs);
  const auto* rs = std::get_if<std::string>(&rhs);
  if (ls != nullptr && rs != nullptr) {
    switch (op) {
      case BinaryOp::Gt: return *ls > *rs;
      case BinaryOp::Lt: return *ls < *rs;
      case BinaryOp::Ge: return *ls >= *rs;
      case BinaryOp::Le: return *ls <= *rs;
      default: break;
    }
  }
  const auto* ld = std::get_if<double>(&lhs);
  const auto* rd = std::get_if<double>(&rhs);
  if (ld == nullptr || rd == nullptr) {
    fail(codes::kTypeError,
         "operator '" + symbol + "' is not defined for " + std::string(type_name(lhs)) + " and " +
             std::string(type_name(rhs)),
         line);
  }
  double a = *ld;
  double b = *rd;
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == 0.0) fail(codes::kDivisionByZero, "division by zero", line);
      return a / b;
    case BinaryOp::Mod:
      if (b == 0.0) fail(codes::kDivisionByZero, "modulo by zero", line);
      return std::fmod(a, b);
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Ge: return a >= b;
    case BinaryOp::Le: return a <= b;
    default: break;
  }
  fail(codes::kTypeError, "unsupported operator '" + symbol + "'", line);
}

Value evaluate(const lang::Expr& expr, const Lookup& lookup) {
  int line = expr.pos.line;
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lang::IntLit>) {
          return static_cast<double>(n.value);
        } else if constexpr (std::is_same_v<T, lang::FloatLit>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, lang::StrLit>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, lang::Var>) {
          const Value* v = lookup(n.name);
          if (v == nullptr) fail(codes::kUndefinedVariable, "'" + n.name + "' is not defined", line);
          return *v;
        } else if constexpr (std::is_same_v<T, lang::Binary>) {
          Value lhs = evaluate(*n.lhs, lookup);
          Value rhs = evaluate(*n.rhs, lookup);
          return apply(n.op, lhs, rhs, line);
        } else {
          fail(codes::kTypeError, "a range can only be used in a for loop", line);
        }
      },
      expr.node);
}

double normalize_heading(double heading) {
  double h = std::fmod(heading, 360.0);
  if (h < 0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  return h;
}

// (sin, cos) of a heading in degrees, exact at multiples of 90.
std::pair<double, double> direction(double heading) {
  double quarter = heading / 90.0;
  if (quarter == std::floor(quarter)) {
    switch (static_cast<int>(std::fmod(quarter, 4.0))) {
      case 0: return {0.0, 1.0};
      case 1: return {1.0, 0.0};
      case 2: return {0.0, -1.0};
      case 3: return {-1.0, 0.0};
      default: break;
    }
  }
  double rad = heading * std::numbers::pi / 180.0;
  return {std::sin(rad), std::cos(rad)};
}

class Machine {
 public:
  Machine(const lang::Program& program, std::int64_t limit) : program_(program), limit_(limit) {
    scopes_.emplace_back();
    for (const std::string& color : pen_colors()) scopes_[0][color] = color;
    scopes_[0]["none"] = std::string("none");
  }

  ExecutionTrace execute() {
    frames_.push_back(Frame{&program_.statements, 0, FrameKind::Block, {}, 0, 0});
    while (!frames_.empty()) {
      Frame& top = frames_.back();
      if (top.index >= top.body->size()) {
        if (top.kind == FrameKind::Loop && top.counter + 1 <= top.hi) {
          top.counter += 1;
          top.index = 0;
          if (top.var) assign(*top.var, top.counter);
          continue;
        }
        if (top.kind == FrameKind::Call) scopes_.pop_back();
        frames_.pop_back();
        continue;
      }
      const lang::Stmt& stmt = (*top.body)[top.index++];
      if (trace_.steps >= limit_) {
        fail(codes::kStepLimit, "step limit of " + std::to_string(limit_) + " reached", stmt.pos.line);
      }
      ++trace_.steps;
      step(stmt);
    }
    trace_.final_state = turtle_;
    return std::move(trace_);
  }

 private:
  enum class FrameKind { Block, Loop, Call };
  struct Frame {
    const lang::Body* body;
    std::size_t index;
    FrameKind kind;
    std::optional<std::string> var;
    double counter;
    double hi;
  };

  const Value* lookup(const std::string& name) const {
    if (auto it = scopes_.back().find(name); it != scopes_.back().end()) return &it->second;
    if (auto it = scopes_.front().find(name); it != scopes_.front().end()) return &it->second;
    return nullptr;
  }

  void assign(const std::string& name, Value value) {
    Environment& local = scopes_.back();
    if (scopes_.size() > 1 && !local.count(name) && scopes_.front().count(name)) {
      scopes_.front()[name] = std::move(value);
      return;
    }
    local[name] = std::move(value);
  }

  Value eval(const lang::Expr& expr) {
    return evaluate(expr, [this](const std::string& name) { return lookup(name); });
  }

  void step(const lang::Stmt& stmt) {
    int line = stmt.pos.line;
    if (const auto* s = std::get_if<lang::Assign>(&stmt.node)) {
      assign(s->name, eval(s->value));
    } else if (const auto* s = std::get_if<lang::If>(&stmt.node)) {
      for (const lang::Branch& branch : s->branches) {
        if (truthy(eval(branch.cond))) {
          frames_.push_back(Frame{&branch.body, 0, FrameKind::Block, {}, 0, 0});
          return;
        }
      }
      if (s->else_body) frames_.push_back(Frame{&*s->else_body, 0, FrameKind::Block, {}, 0, 0});
    } else if (const auto* s = std::get_if<lang::ForIn>(&stmt.node)) {
      const auto& r = std::get<lang::Range>(s->range.node);
      double lo = as_number(eval(*r.lo), "range start", line);
      double hi = as_number(eval(*r.hi), "range end", line);
      if (lo > hi) return;
      if (s->var) assign(*s->var, lo);
      frames_.push_back(Frame{&s->body, 0, FrameKind::Loop, s->var, lo, hi});
    } else if (const auto* s = std::get_if<lang::FuncDef>(&stmt.node)) {
      assign(s->name, FunctionRef{s});
    } else if (const auto* s = std::get_if<lang::Call>(&stmt.node)) {
      call(*s, line);
    }
  }

  void call(const lang::Call& c, int line) {
    std::vector<Value> args;
    args.reserve(c.args.size());
    for (const lang::Expr& a : c.args) args.push_back(eval(a));

    if (const Value* bound = lookup(c.name)) {
      const auto* fn = std::get_if<FunctionRef>(bound);
      if (fn == nullptr) fail(codes::kTypeError, "'" + c.name + "' is not a function", line);
      if (args.size() != fn->def->params.size()) {
        fail(codes::kTypeError,
             "'" + c.name + "' expects " + std::to_string(fn->def->params.size()) + " argument(s), got " +
                 std::to_string(args.size()),
             line);
      }
      Environment scope;
      for (std::size_t i = 0; i < args.size(); ++i) scope[fn->def->params[i]] = std::move(args[i]);
      scopes_.push_back(std::move(scope));
      frames_.push_back(Frame{&fn->def->body, 0, FrameKind::Call, {}, 0, 0});
      return;
    }

    auto single = [&](std::string_view what) -> const Value& {
      if (args.size() != 1) {
        fail(codes::kTypeError, "'" + c.name + "' expects exactly one " + std::string(what), line);
      }
      return args.front();
    };

    if (c.name == "fd" || c.name == "bk") {
      double distance = as_number(single("distance"), c.name, line);
      if (c.name == "bk") distance = -distance;
      auto [dx, dy] = direction(turtle_.heading);
      Point from = turtle_.position;
      turtle_.position = Point{from.x + distance * dx, from.y + distance * dy};
      if (turtle_.pen != "none") trace_.segments.push_back(Segment{from, turtle_.position, turtle_.pen});
    } else if (c.name == "rt" || c.name == "lt") {
      double angle = as_number(single("angle"), c.name, line);
      turtle_.heading = normalize_heading(turtle_.heading + (c.name == "rt" ? angle : -angle));
    } else if (c.name == "speed") {
      turtle_.speed = as_number(single("speed"), c.name, line);
    } else if (c.name == "pen") {
      const Value& color = single("color");
      const auto* name = std::get_if<std::string>(&color);
      bool known = name != nullptr && (*name == "none" || std::find(pen_colors().begin(), pen_colors().end(),
                                                                    *name) != pen_colors().end());
      if (!known) fail(codes::kTypeError, "'pen' needs a color name, got " + format_value(color), line);
      turtle_.pen = *name;
    } else if (c.name == "write") {
      const Value& v = single("value");
      if (std::holds_alternative<FunctionRef>(v)) fail(codes::kTypeError, "cannot write a function", line);
      trace_.output.push_back(format_value(v));
    } else {
      fail(codes::kUnknownCommand, "unknown command '" + c.name + "'", line);
    }
  }

  const lang::Program& program_;
  std::int64_t limit_;
  std::vector<Environment> scopes_;
  std::vector<Frame> frames_;
  TurtleState turtle_;
  ExecutionTrace trace_;
};

}  // namespace

const std::vector<std::string>& pen_colors() {
  static const std::vector<std::string> kColors{"red", "green", "blue", "black", "purple", "orange"};
  return kColors;
}

Expected<ExecutionTrace, RuntimeDiagnostic> run(const lang::Program& program, std::int64_t step_limit) {
  try {
    return Machine(program, step_limit).execute();
  } catch (Failure& f) {
    return unexpected(std::move(f.diagnostic));
  }
}

Expected<Value, RuntimeDiagnostic> eval_expr(const lang::Expr& expr, const Environment& env) {
  try {
    return evaluate(expr, [&env](const std::string& name) -> const Value* {
      auto it = env.find(name);
      return it == env.end() ? nullptr : &it->second;
    });
  } catch (Failure& f) {
    return unexpected(std::move(f.diagnostic));
  }
}

std::string format_value(const Value& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  if (std::holds_alternative<FunctionRef>(value)) return "[function]";
  double d = std::get<double>(value);
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
  double rounded = std::round(d);
  if (std::fabs(d - rounded) <= 1e-9 && std::fabs(rounded) < 1e15) {
    return std::to_string(static_cast<long long>(rounded));
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::string trace_to_json(const ExecutionTrace& trace, int indent) {
  using nlohmann::json;
  json segments = json::array();
  for (const Segment& s : trace.segments) {
    segments.push_back({{"from", {{"x", s.from.x}, {"y", s.from.y}}},
                        {"to", {{"x", s.to.x}, {"y", s.to.y}}},
                        {"color", s.color}});
  }
  json doc{{"output", trace.output},
           {"segments", std::move(segments)},
           {"final",
            {{"x", trace.final_state.position.x},
             {"y", trace.final_state.position.y},
             {"heading", trace.final_state.heading},
             {"pen", trace.final_state.pen},
             {"speed", trace.final_state.speed}}},
           {"steps", trace.steps}};
  return doc.dump(indent);
}

}  // namespace hybrid::interp
