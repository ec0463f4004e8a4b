#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "doctest.h"
#include "hybrid/assess/assessment.hpp"
#include "hybrid/interp/interpreter.hpp"
#include "hybrid/lang/parser.hpp"
#include "hybrid/lang/printer.hpp"

using namespace hybrid;
using namespace hybrid::assess;

namespace {

std::string read_file(const std::string& rel) {
  std::ifstream in(std::string(HYBRID_SOURCE_DIR) + "/" + rel, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<Task>& corpus() {
  static const std::vector<Task> tasks = [] {
    auto loaded = load_corpus(std::string(HYBRID_SOURCE_DIR) + "/data/corpus.json");
    REQUIRE_MESSAGE(loaded, (loaded ? "" : loaded.error().task_id + ": " + loaded.error().message));
    return *loaded;
  }();
  return tasks;
}

const Task& task(const std::string& id) {
  for (const Task& t : corpus()) {
    if (t.id == id) return t;
  }
  FAIL("no task " << id);
  throw;
}

nlohmann::json corpus_json() { return nlohmann::json::parse(read_file("data/corpus.json")); }

AssessError corpus_error(const nlohmann::json& doc) {
  auto r = parse_corpus(doc.dump());
  REQUIRE_FALSE(r);
  CHECK(r.error().code == codes::kCorpusMalformed);
  return r.error();
}

}  // namespace

TEST_CASE("bundled corpus loads and contains the three published items") {
  std::map<TaskKind, int> per_kind;
  for (const Task& t : corpus()) per_kind[t.kind]++;
  for (const char* id : {"sample-1-mod", "sample-2-syntax", "sample-2-predict", "sample-3-predict"}) {
    CHECK(task(id).id == id);
  }
  CHECK(corpus().size() >= 15);
  CHECK(per_kind[TaskKind::Modification] >= 2);
  CHECK(per_kind[TaskKind::SyntaxFix] >= 2);
  CHECK(per_kind[TaskKind::OutputPrediction] >= 2);
  CHECK(task("sample-1-mod").source == read_file("data/samples/sample1.mp"));
  CHECK(task("sample-2-syntax").source == read_file("data/samples/sample2.mp"));
  CHECK(task("sample-3-predict").source == read_file("data/samples/sample3.mp"));
}

TEST_CASE("shipped reference submissions match the corpus") {
  for (const Task& t : corpus()) {
    if (t.kind == TaskKind::OutputPrediction) {
      CHECK(read_file("data/reference/" + t.id + ".choice") == t.correct_choice + "\n");
    } else {
      CHECK(read_file("data/reference/" + t.id + ".mp") == t.reference);
    }
  }
}

TEST_CASE("score rounds half up and stays in bounds") {
  CHECK(score(2, 3) == 67);
  CHECK(score(1, 3) == 33);
  CHECK(score(1, 2) == 50);
  CHECK(score(1, 8) == 13);
  CHECK(score(0, 5) == 0);
  CHECK(score(5, 5) == 100);
  for (std::size_t total = 1; total <= 40; ++total) {
    int last = -1;
    for (std::size_t passed = 0; passed <= total; ++passed) {
      int s = score(passed, total);
      CHECK(s >= 0);
      CHECK(s <= 100);
      CHECK(s >= last);
      // Oracle: floor(100 * p / t + 1/2) in exact integer arithmetic.
      CHECK(s == static_cast<int>((100 * passed * 2 + total) / (2 * total)));
      last = s;
    }
  }
}

TEST_CASE("sample-1-mod grading") {
  const Task& t = task("sample-1-mod");
  auto zero = grade_modification(t, read_file("data/samples/sample1_zero.mp"));
  REQUIRE(zero);
  CHECK(zero->score == 100);

  auto unmodified = grade_modification(t, t.source);
  REQUIRE(unmodified);
  CHECK(unmodified->score == 67);
  REQUIRE(unmodified->cases.size() == 3);
  CHECK(unmodified->cases[2].detail == detail::kOutputMismatch);
  CHECK(unmodified->cases[2].actual == std::vector<std::string>{"x is a negative number."});

  auto empty = grade_modification(t, "");
  REQUIRE(empty);
  CHECK(empty->score == 0);

  auto broken = grade_modification(t, "if x >\n");
  REQUIRE(broken);
  CHECK(broken->score == 0);
  CHECK(broken->cases[0].detail == detail::kSyntax);

  auto crash = grade_modification(t, "write y\n");
  REQUIRE(crash);
  CHECK(crash->cases[0].detail == "UNDEFINED_VARIABLE");
}

TEST_CASE("sample-2-syntax grading") {
  const Task& t = task("sample-2-syntax");
  auto as_written = grade_syntax_fix(t, read_file("data/samples/sample2.mp"));
  REQUIRE(as_written);
  CHECK(as_written->score == 0);
  CHECK(as_written->cases[0].detail == detail::kSyntax);

  auto fixed = grade_syntax_fix(t, read_file("data/samples/sample2_fixed.mp"));
  REQUIRE(fixed);
  CHECK(fixed->score == 100);
  CHECK(fixed->cases[0].actual == std::vector<std::string>{"sum= 9", "sum= 19"});

  // Parses, but writes only the final total.
  auto final_only = grade_syntax_fix(t, "sum=0\nfor x in [0..10]\n  if x>8\n    sum=sum+x\nwrite 'sum= ' + sum\n");
  REQUIRE(final_only);
  CHECK(final_only->score < 100);
  CHECK(final_only->cases[0].actual == std::vector<std::string>{"sum= 19"});
}

TEST_CASE("prediction grading") {
  auto d = grade_prediction(task("sample-3-predict"), "D");
  REQUIRE(d);
  CHECK(d->score == 100);
  auto b = grade_prediction(task("sample-3-predict"), "B");
  REQUIRE(b);
  CHECK(b->score == 0);
  CHECK(b->correct == "D");
  auto c = grade_prediction(task("sample-2-predict"), "C");
  REQUIRE(c);
  CHECK(c->score == 100);

  auto unknown = grade_prediction(task("sample-2-predict"), "E");
  REQUIRE_FALSE(unknown);
  CHECK(unknown.error().code == codes::kUnknownChoice);

  auto wrong = grade_prediction(task("sample-1-mod"), "A");
  REQUIRE_FALSE(wrong);
  CHECK(wrong.error().code == codes::kWrongKind);
}

TEST_CASE("prediction keys agree with the interpreter") {
  const Task& s2 = task("sample-2-predict");
  CHECK_FALSE(lang::parse(s2.source));
  const Task& s3 = task("sample-3-predict");
  auto p = lang::parse(s3.source);
  REQUIRE(p);
  auto trace = interp::run(*p);
  REQUIRE(trace);
  CHECK(trace->segments.size() == 10);
  for (const Task& t : corpus()) {
    if (t.kind != TaskKind::OutputPrediction) continue;
    for (const Choice& c : t.choices) CHECK_MESSAGE(exhibits(t.source, c.behavior) == (c.id == t.correct_choice), t.id);
  }
}

TEST_CASE("every reference solution scores 100") {
  for (const Task& t : corpus()) {
    if (t.kind == TaskKind::OutputPrediction) continue;
    auto r = t.kind == TaskKind::Modification ? grade_modification(t, t.reference) : grade_syntax_fix(t, t.reference);
    REQUIRE(r);
    CHECK_MESSAGE(r->score == 100, t.id);
  }
}

TEST_CASE("load_corpus rejects malformed corpora") {
  CHECK(parse_corpus("").error().code == codes::kCorpusMalformed);
  CHECK(parse_corpus("[]").error().code == codes::kCorpusMalformed);
  CHECK(parse_corpus("{}").error().code == codes::kCorpusMalformed);
  CHECK(load_corpus("/nonexistent/corpus.json").error().code == codes::kCorpusMalformed);

  auto doc = corpus_json();
  doc[0]["io_spec"][0]["expected_output"] = {"something else"};
  CHECK(corpus_error(doc).task_id == "sample-1-mod");

  doc = corpus_json();
  doc[3]["correct_choice"] = "B";
  auto key = corpus_error(doc);
  CHECK(key.task_id == "sample-3-predict");

  doc = corpus_json();
  doc[3]["correct_choice"] = "Z";
  CHECK(corpus_error(doc).task_id == "sample-3-predict");

  doc = corpus_json();
  doc[0]["source"] = "if x\n";
  CHECK(corpus_error(doc).message.find("parse") != std::string::npos);

  doc = corpus_json();
  doc[1]["source"] = read_file("data/samples/sample2_fixed.mp");
  CHECK(corpus_error(doc).task_id == "sample-2-syntax");

  doc = corpus_json();
  doc[0]["surprise"] = 1;
  CHECK(corpus_error(doc).message.find("unknown field") != std::string::npos);

  doc = corpus_json();
  doc[2]["choices"] = nlohmann::json::array({doc[2]["choices"][2]});
  CHECK(corpus_error(doc).message.find("two choices") != std::string::npos);

  doc = corpus_json();
  doc.push_back(doc[0]);
  CHECK(corpus_error(doc).message.find("duplicate") != std::string::npos);

  doc = corpus_json();
  doc[0]["kind"] = "essay";
  CHECK(corpus_error(doc).task_id == "sample-1-mod");
}

TEST_CASE("apply_overrides rewrites the first top-level assignment") {
  auto p = lang::parse("x = 1\nif x\n  x = 2\nx = 3\n");
  REQUIRE(p);
  auto rewritten = apply_overrides(*p, {{"x", 9.0}, {"name", std::string("Ada")}, {"f", 0.5}});
  CHECK(lang::print(rewritten) == "f = 0.5\nname = 'Ada'\nx = 9\nif x\n  x = 2\nx = 3\n");
  CHECK(apply_overrides(*p, {{"x", -4.0}}) == *lang::parse("x = -4\nif x\n  x = 2\nx = 3\n"));
}

TEST_CASE("report JSON") {
  auto r = grade_modification(task("sample-1-mod"), task("sample-1-mod").source);
  auto p = grade_prediction(task("sample-3-predict"), "D");
  REQUIRE(r);
  REQUIRE(p);
  auto j = nlohmann::json::parse(report_to_json({*r, *p}));
  CHECK(j[0]["task_id"] == "sample-1-mod");
  CHECK(j[0]["score"] == 67);
  CHECK(j[0]["cases"][2]["passed"] == false);
  CHECK(j[1]["chosen"] == "D");
  CHECK(j[1]["score"] == 100);
}
