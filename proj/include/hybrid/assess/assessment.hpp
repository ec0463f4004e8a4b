#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hybrid/expected.hpp"
#include "hybrid/lang/ast.hpp"

namespace hybrid::assess {

namespace codes {
inline constexpr std::string_view kCorpusMalformed = "CORPUS_MALFORMED";
inline constexpr std::string_view kUnknownChoice = "UNKNOWN_CHOICE";
inline constexpr std::string_view kWrongKind = "WRONG_TASK_KIND";
}  // namespace codes

// Per-case details in a GradeReport.
namespace detail {
inline constexpr std::string_view kPass = "PASS";
inline constexpr std::string_view kSyntax = "SYNTAX";
inline constexpr std::string_view kOutputMismatch = "OUTPUT_MISMATCH";
inline constexpr std::string_view kMissing = "MISSING";
}  // namespace detail

enum class TaskKind { Modification, SyntaxFix, OutputPrediction };

std::string_view to_string(TaskKind kind);
std::optional<TaskKind> task_kind_from(std::string_view text);

using Literal = std::variant<double, std::string>;

struct IoCase {
  std::map<std::string, Literal> overrides;
  std::vector<std::string> expected_output;
};

// What a choice claims the program does. Absent fields are unconstrained.
struct Behavior {
  bool not_run = false;  // the source does not parse
  std::optional<std::vector<std::string>> output;
  std::optional<int> segments;
  std::optional<int> closed_after;  // turtle is back at the origin after this many segments
  std::optional<bool> ends_at_start;
};

struct Choice {
  std::string id;
  std::string text;
  Behavior behavior;
};

struct Task {
  std::string id;
  TaskKind kind = TaskKind::Modification;
  std::string prompt;
  std::string source;
  std::string reference;     // modification / syntax-fix
  std::vector<IoCase> io_spec;  // modification / syntax-fix
  std::vector<Choice> choices;  // output-prediction
  std::string correct_choice;   // output-prediction
};

struct AssessError {
  std::string code;
  std::string task_id;
  std::string message;
};

struct CaseResult {
  bool passed = false;
  std::string detail;  // PASS, SYNTAX, OUTPUT_MISMATCH or a runtime diagnostic code
  std::vector<std::string> expected;
  std::vector<std::string> actual;
};

struct GradeReport {
  std::string task_id;
  int score = 0;
  std::vector<CaseResult> cases;  // code tasks
  std::string chosen;             // prediction tasks
  std::string correct;
};

// 100 * passed / total, rounded half up.
int score(std::size_t passed, std::size_t total);

// Parses and self-checks a corpus document.
Expected<std::vector<Task>, AssessError> parse_corpus(std::string_view json_text);
Expected<std::vector<Task>, AssessError> load_corpus(const std::string& path);

// Rewrites the first top-level assignment to each name, or prepends one.
lang::Program apply_overrides(lang::Program program, const std::map<std::string, Literal>& overrides);

// Modification and syntax-fix tasks share the io-spec grader.
Expected<GradeReport, AssessError> grade_modification(const Task& task, std::string_view submission);
Expected<GradeReport, AssessError> grade_syntax_fix(const Task& task, std::string_view submission);
Expected<GradeReport, AssessError> grade_prediction(const Task& task, std::string_view choice_id);

// Grades <id>.mp (code tasks) or <id>.choice (prediction tasks) from `dir`.
// A missing submission or an unknown choice scores 0.
std::vector<GradeReport> grade_directory(const std::vector<Task>& tasks, const std::filesystem::path& dir);

// Whether running `source` exhibits `behavior`.
bool exhibits(std::string_view source, const Behavior& behavior);

std::string report_to_json(const std::vector<GradeReport>& reports, int indent = 2);

}  // namespace hybrid::assess
