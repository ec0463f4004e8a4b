#include "hybrid/assess/assessment.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "hybrid/interp/interpreter.hpp"
#include "hybrid/lang/parser.hpp"

namespace hybrid::assess {

namespace {

using nlohmann::json;

struct Malformed {
  std::string task_id;
  std::string message;
};

[[noreturn]] void malformed(const std::string& id, std::string message) { throw Malformed{id, std::move(message)}; }

const json& field(const json& obj, const char* name, const std::string& id) {
  auto it = obj.find(name);
  if (it == obj.end()) malformed(id, std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& obj, const char* name, const std::string& id) {
  const json& v = field(obj, name, id);
  if (!v.is_string()) malformed(id, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> lines_field(const json& v, const std::string& id, const char* name) {
  if (!v.is_array()) malformed(id, std::string("field '") + name + "' must be an array of strings");
  std::vector<std::string> out;
  for (const json& line : v) {
    if (!line.is_string()) malformed(id, std::string("field '") + name + "' must be an array of strings");
    out.push_back(line.get<std::string>());
  }
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& id) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) malformed(id, "unknown field '" + key + "'");
  }
}

Behavior parse_behavior(const json& v, const std::string& id) {
  if (!v.is_object()) malformed(id, "choice behavior must be an object");
  reject_unknown(v, {"not_run", "output", "segments", "closed_after", "ends_at_start"}, id);
  Behavior b;
  if (v.contains("not_run")) b.not_run = v["not_run"].get<bool>();
  if (v.contains("output")) b.output = lines_field(v["output"], id, "output");
  if (v.contains("segments")) b.segments = v["segments"].get<int>();
  if (v.contains("closed_after")) b.closed_after = v["closed_after"].get<int>();
  if (v.contains("ends_at_start")) b.ends_at_start = v["ends_at_start"].get<bool>();
  if (b.not_run && (b.output || b.segments || b.closed_after || b.ends_at_start)) {
    malformed(id, "a not_run behavior cannot constrain execution");
  }
  if (!b.not_run && !b.output && !b.segments && !b.closed_after && !b.ends_at_start) {
    malformed(id, "choice behavior is empty");
  }
  return b;
}

Task parse_task(const json& t, std::size_t index) {
  std::string id = "#" + std::to_string(index);
  if (!t.is_object()) malformed(id, "task must be an object");
  id = string_field(t, "id", id);
  if (id.empty()) malformed("#" + std::to_string(index), "task id is empty");
  reject_unknown(t, {"id", "kind", "prompt", "source", "reference", "io_spec", "choices", "correct_choice"}, id);

  Task task;
  task.id = id;
  auto kind = task_kind_from(string_field(t, "kind", id));
  if (!kind) malformed(id, "unknown kind '" + t["kind"].get<std::string>() + "'");
  task.kind = *kind;
  task.prompt = string_field(t, "prompt", id);
  task.source = string_field(t, "source", id);

  if (task.kind == TaskKind::OutputPrediction) {
    if (t.contains("reference") || t.contains("io_spec")) malformed(id, "prediction tasks take choices, not io_spec");
    const json& choices = field(t, "choices", id);
    if (!choices.is_array()) malformed(id, "choices must be an array");
    for (const json& c : choices) {
      if (!c.is_object()) malformed(id, "choice must be an object");
      reject_unknown(c, {"id", "text", "behavior"}, id);
      task.choices.push_back(
          Choice{string_field(c, "id", id), string_field(c, "text", id), parse_behavior(field(c, "behavior", id), id)});
    }
    task.correct_choice = string_field(t, "correct_choice", id);
  } else {
    if (t.contains("choices") || t.contains("correct_choice")) malformed(id, "code tasks take io_spec, not choices");
    task.reference = string_field(t, "reference", id);
    const json& io = field(t, "io_spec", id);
    if (!io.is_array()) malformed(id, "io_spec must be an array");
    for (const json& c : io) {
      if (!c.is_object()) malformed(id, "io case must be an object");
      reject_unknown(c, {"overrides", "expected_output"}, id);
      IoCase io_case;
      if (c.contains("overrides")) {
        if (!c["overrides"].is_object()) malformed(id, "overrides must be an object");
        for (const auto& [name, value] : c["overrides"].items()) {
          if (value.is_number()) {
            io_case.overrides[name] = value.get<double>();
          } else if (value.is_string()) {
            io_case.overrides[name] = value.get<std::string>();
          } else {
            malformed(id, "override '" + name + "' must be a number or a string");
          }
        }
      }
      io_case.expected_output = lines_field(field(c, "expected_output", id), id, "expected_output");
      task.io_spec.push_back(std::move(io_case));
    }
  }
  return task;
}

const Choice* find_choice(const Task& task, std::string_view id) {
  for (const Choice& c : task.choices) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

void self_check(const Task& task) {
  const std::string& id = task.id;
  if (task.kind == TaskKind::OutputPrediction) {
    if (task.choices.size() < 2) malformed(id, "needs at least two choices");
    std::set<std::string> ids;
    for (const Choice& c : task.choices) {
      if (!ids.insert(c.id).second) malformed(id, "duplicate choice '" + c.id + "'");
    }
    const Choice* key = find_choice(task, task.correct_choice);
    if (key == nullptr) malformed(id, "correct_choice '" + task.correct_choice + "' is not a choice");
    if (!key->behavior.not_run && !lang::parse(task.source)) malformed(id, "source does not parse");
    // The key must describe what the interpreter does, and no distractor may.
    for (const Choice& c : task.choices) {
      bool seen = exhibits(task.source, c.behavior);
      if (&c == key && !seen) malformed(id, "key '" + c.id + "' disagrees with the interpreter");
      if (&c != key && seen) malformed(id, "distractor '" + c.id + "' also matches the interpreter");
    }
    return;
  }

  if (task.io_spec.empty()) malformed(id, "io_spec is empty");
  if (task.kind == TaskKind::Modification && !lang::parse(task.source)) malformed(id, "source does not parse");
  if (task.kind == TaskKind::SyntaxFix && lang::parse(task.source)) malformed(id, "syntax-fix source already parses");
  auto graded = task.kind == TaskKind::Modification ? grade_modification(task, task.reference)
                                                    : grade_syntax_fix(task, task.reference);
  if (!graded || graded->score != 100) malformed(id, "reference solution does not pass its own io_spec");
}

lang::Expr literal_expr(const Literal& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return lang::str_lit(*s);
  double d = std::get<double>(value);
  if (d == std::floor(d) && std::fabs(d) < 9e15) return lang::int_lit(static_cast<std::int64_t>(d));
  return lang::float_lit(d);
}

GradeReport grade_io(const Task& task, std::string_view submission) {
  GradeReport report;
  report.task_id = task.id;
  auto program = lang::parse(submission);
  std::size_t passed = 0;
  for (const IoCase& c : task.io_spec) {
    CaseResult result;
    result.expected = c.expected_output;
    if (!program) {
      result.detail = std::string(detail::kSyntax);
    } else {
      auto trace = interp::run(apply_overrides(*program, c.overrides));
      if (!trace) {
        result.detail = trace.error().code;
      } else {
        result.actual = trace->output;
        result.passed = result.actual == result.expected;
        result.detail = std::string(result.passed ? detail::kPass : detail::kOutputMismatch);
      }
    }
    passed += result.passed ? 1 : 0;
    report.cases.push_back(std::move(result));
  }
  report.score = score(passed, task.io_spec.size());
  return report;
}

AssessError wrong_kind(const Task& task, TaskKind wanted) {
  return AssessError{std::string(codes::kWrongKind), task.id,
                     "task is " + std::string(to_string(task.kind)) + ", not " + std::string(to_string(wanted))};
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::Modification: return "modification";
    case TaskKind::SyntaxFix: return "syntax-fix";
    case TaskKind::OutputPrediction: return "output-prediction";
  }
  return "";
}

std::optional<TaskKind> task_kind_from(std::string_view text) {
  for (TaskKind k : {TaskKind::Modification, TaskKind::SyntaxFix, TaskKind::OutputPrediction}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

int score(std::size_t passed, std::size_t total) {
  if (total == 0) return 0;
  return static_cast<int>((200 * passed + total) / (2 * total));
}

Expected<std::vector<Task>, AssessError> parse_corpus(std::string_view json_text) {
  try {
    json doc = json::parse(json_text);
    if (!doc.is_array() || doc.empty()) malformed("", "corpus must be a non-empty array of tasks");
    std::vector<Task> tasks;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      Task task = parse_task(doc[i], i);
      if (!ids.insert(task.id).second) malformed(task.id, "duplicate task id");
      tasks.push_back(std::move(task));
    }
    for (const Task& task : tasks) self_check(task);
    return tasks;
  } catch (const Malformed& m) {
    return unexpected(AssessError{std::string(codes::kCorpusMalformed), m.task_id, m.message});
  } catch (const json::exception& e) {
    return unexpected(AssessError{std::string(codes::kCorpusMalformed), "", e.what()});
  }
}

Expected<std::vector<Task>, AssessError> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return unexpected(AssessError{std::string(codes::kCorpusMalformed), "", "cannot read " + path});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

lang::Program apply_overrides(lang::Program program, const std::map<std::string, Literal>& overrides) {
  std::vector<lang::Stmt> prepended;
  for (const auto& [name, value] : overrides) {
    bool rewritten = false;
    for (lang::Stmt& stmt : program.statements) {
      auto* assign = std::get_if<lang::Assign>(&stmt.node);
      if (assign != nullptr && assign->name == name) {
        assign->value = literal_expr(value);
        rewritten = true;
        break;
      }
    }
    if (!rewritten) prepended.push_back(lang::Stmt{lang::Assign{name, literal_expr(value)}, {}});
  }
  program.statements.insert(program.statements.begin(), std::make_move_iterator(prepended.begin()),
                            std::make_move_iterator(prepended.end()));
  return program;
}

Expected<GradeReport, AssessError> grade_modification(const Task& task, std::string_view submission) {
  if (task.kind != TaskKind::Modification) return unexpected(wrong_kind(task, TaskKind::Modification));
  return grade_io(task, submission);
}

Expected<GradeReport, AssessError> grade_syntax_fix(const Task& task, std::string_view submission) {
  if (task.kind != TaskKind::SyntaxFix) return unexpected(wrong_kind(task, TaskKind::SyntaxFix));
  return grade_io(task, submission);
}

Expected<GradeReport, AssessError> grade_prediction(const Task& task, std::string_view choice_id) {
  if (task.kind != TaskKind::OutputPrediction) return unexpected(wrong_kind(task, TaskKind::OutputPrediction));
  if (find_choice(task, choice_id) == nullptr) {
    return unexpected(AssessError{std::string(codes::kUnknownChoice), task.id,
                                  "'" + std::string(choice_id) + "' is not one of the choices"});
  }
  GradeReport report;
  report.task_id = task.id;
  report.chosen = std::string(choice_id);
  report.correct = task.correct_choice;
  report.score = report.chosen == report.correct ? 100 : 0;
  return report;
}

std::vector<GradeReport> grade_directory(const std::vector<Task>& tasks, const std::filesystem::path& dir) {
  std::vector<GradeReport> reports;
  for (const Task& task : tasks) {
    bool prediction = task.kind == TaskKind::OutputPrediction;
    std::ifstream in(dir / (task.id + (prediction ? ".choice" : ".mp")), std::ios::binary);
    if (!in) {
      GradeReport missing;
      missing.task_id = task.id;
      missing.chosen = std::string(detail::kMissing);
      missing.correct = task.correct_choice;
      if (!prediction) missing.cases.assign(task.io_spec.size(), CaseResult{false, std::string(detail::kMissing), {}, {}});
      reports.push_back(std::move(missing));
      continue;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string submission = ss.str();
    if (prediction) {
      auto first = submission.find_first_not_of(" \t\r\n");
      auto last = submission.find_last_not_of(" \t\r\n");
      std::string choice = first == std::string::npos ? "" : submission.substr(first, last - first + 1);
      auto graded = grade_prediction(task, choice);
      if (graded) {
        reports.push_back(std::move(*graded));
      } else {
        reports.push_back(GradeReport{task.id, 0, {}, choice, task.correct_choice});
      }
    } else {
      auto graded = task.kind == TaskKind::Modification ? grade_modification(task, submission)
                                                        : grade_syntax_fix(task, submission);
      reports.push_back(std::move(*graded));
    }
  }
  return reports;
}

bool exhibits(std::string_view source, const Behavior& behavior) {
  auto program = lang::parse(source);
  if (behavior.not_run) return !program;
  if (!program) return false;
  auto trace = interp::run(*program);
  if (!trace) return false;
  const auto& segs = trace->segments;
  auto at_origin = [](const interp::Point& p) { return std::fabs(p.x) <= 1e-9 && std::fabs(p.y) <= 1e-9; };
  if (behavior.output && trace->output != *behavior.output) return false;
  if (behavior.segments && static_cast<int>(segs.size()) != *behavior.segments) return false;
  if (behavior.closed_after) {
    int k = *behavior.closed_after;
    if (k < 1 || k > static_cast<int>(segs.size()) || !at_origin(segs[k - 1].to)) return false;
  }
  if (behavior.ends_at_start && at_origin(trace->final_state.position) != *behavior.ends_at_start) return false;
  return true;
}

std::string report_to_json(const std::vector<GradeReport>& reports, int indent) {
  json out = json::array();
  for (const GradeReport& r : reports) {
    json entry{{"task_id", r.task_id}, {"score", r.score}};
    if (!r.cases.empty()) {
      json cases = json::array();
      for (const CaseResult& c : r.cases) {
        cases.push_back(
            {{"passed", c.passed}, {"detail", c.detail}, {"expected", c.expected}, {"actual", c.actual}});
      }
      entry["cases"] = std::move(cases);
    }
    if (!r.correct.empty()) {
      entry["chosen"] = r.chosen;
      entry["correct"] = r.correct;
    }
    out.push_back(std::move(entry));
  }
  return out.dump(indent);
}

}  // namespace hybrid::assess
