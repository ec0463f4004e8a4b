#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hybrid/expected.hpp"
#include "hybrid/lang/ast.hpp"

namespace hybrid::interp {

inline constexpr std::int64_t kDefaultStepLimit = 100000;

struct FunctionRef {
  const lang::FuncDef* def = nullptr;
  friend bool operator==(const FunctionRef&, const FunctionRef&) = default;
};

using Value = std::variant<double, std::string, bool, FunctionRef>;
using Environment = std::map<std::string, Value>;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Heading is in degrees clockwise from north (+y), normalized to [0, 360).
struct TurtleState {
  Point position;
  double heading = 0.0;
  std::string pen = "none";
  double speed = 1.0;  // recorded only
  friend bool operator==(const TurtleState&, const TurtleState&) = default;
};

struct Segment {
  Point from;
  Point to;
  std::string color;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ExecutionTrace {
  std::vector<std::string> output;  // one entry per `write`
  std::vector<Segment> segments;
  TurtleState final_state;
  std::int64_t steps = 0;
  friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

namespace codes {
inline constexpr std::string_view kUndefinedVariable = "UNDEFINED_VARIABLE";
inline constexpr std::string_view kUnknownCommand = "UNKNOWN_COMMAND";
inline constexpr std::string_view kTypeError = "TYPE_ERROR";
inline constexpr std::string_view kStepLimit = "STEP_LIMIT";
inline constexpr std::string_view kDivisionByZero = "DIVISION_BY_ZERO";
}  // namespace codes

struct RuntimeDiagnostic {
  std::string code;
  std::string message;
  int line = 0;
  friend bool operator==(const RuntimeDiagnostic&, const RuntimeDiagnostic&) = default;
};

// Pen colors accepted by `pen`, besides "none".
const std::vector<std::string>& pen_colors();

// Executes a program; each executed statement costs one step.
Expected<ExecutionTrace, RuntimeDiagnostic> run(const lang::Program& program,
                                                std::int64_t step_limit = kDefaultStepLimit);

Expected<Value, RuntimeDiagnostic> eval_expr(const lang::Expr& expr, const Environment& env);

// Numbers within 1e-9 of an integer print without a decimal point.
std::string format_value(const Value& value);

// {output, segments: [{from, to, color}], final: {x, y, heading, pen, speed}, steps}
std::string trace_to_json(const ExecutionTrace& trace, int indent = -1);

}  // namespace hybrid::interp
