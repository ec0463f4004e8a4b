#include "hybrid/service/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hybrid/adapter/adapter.hpp"
#include "hybrid/adapter/palette.hpp"
#include "hybrid/assess/assessment.hpp"
#include "hybrid/blocks/markup.hpp"
#include "hybrid/editor/session.hpp"
#include "hybrid/interp/interpreter.hpp"
#include "hybrid/lang/parser.hpp"
#include "hybrid/lang/printer.hpp"
#include "hybrid/service/server.hpp"

namespace hybrid::service {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses `file` or reports its diagnostics.
std::optional<lang::Program> load_program(const std::string& file, std::ostream& err) {
  auto program = lang::parse(slurp(file));
  if (!program) {
    for (const auto& d : program.error()) err << lang::format_diagnostic(d, file) << "\n";
    return std::nullopt;
  }
  return std::move(*program);
}

std::string case_summary(const assess::GradeReport& r) {
  if (r.cases.empty()) return "chose " + r.chosen + ", key " + r.correct;
  std::size_t passed = 0;
  std::string details;
  for (const auto& c : r.cases) {
    passed += c.passed ? 1 : 0;
    details += (details.empty() ? "" : ", ") + c.detail;
  }
  return std::to_string(passed) + "/" + std::to_string(r.cases.size()) + " cases (" + details + ")";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid block/text environment for the MiniPencil turtle language", "hybrid"};
  app.require_subcommand(1);

  std::string file;
  auto* parse_cmd = app.add_subcommand("parse", "Check a program and report diagnostics");
  parse_cmd->add_option("FILE", file, "MiniPencil source")->required()->check(CLI::ExistingFile);

  auto* fmt_cmd = app.add_subcommand("fmt", "Print the canonical text of a program");
  fmt_cmd->add_option("FILE", file, "MiniPencil source")->required()->check(CLI::ExistingFile);

  auto* blocks_cmd = app.add_subcommand("blocks", "Print the block markup (.blx) of a program");
  blocks_cmd->add_option("FILE", file, "MiniPencil source")->required()->check(CLI::ExistingFile);

  bool json_out = false;
  std::int64_t step_limit = interp::kDefaultStepLimit;
  auto* run_cmd = app.add_subcommand("run", "Run a program and print its output");
  run_cmd->add_option("FILE", file, "MiniPencil source")->required()->check(CLI::ExistingFile);
  run_cmd->add_flag("--json", json_out, "Print the full trace as JSON");
  run_cmd->add_option("--step-limit", step_limit, "Maximum statements executed")->check(CLI::PositiveNumber);

  std::string corpus_path;
  std::string submissions;
  auto* grade_cmd = app.add_subcommand("grade", "Grade a directory of submissions against a corpus");
  grade_cmd->add_option("CORPUS", corpus_path, "corpus.json")->required()->check(CLI::ExistingFile);
  grade_cmd->add_option("SUBMISSION_DIR", submissions, "Directory of <task-id>.mp / <task-id>.choice")
      ->required()
      ->check(CLI::ExistingDirectory);
  grade_cmd->add_flag("--json", json_out, "Print the report as JSON");

  int port = port_from_env();
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the session API over HTTP");
  serve_cmd->add_option("--port", port, "Port (default HYBRID_PORT or 8080; 0 picks one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Address to bind");

  auto* palette_cmd = app.add_subcommand("palette", "Print palette.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (*parse_cmd) {
    if (!load_program(file, err)) return kFailed;
    out << file << ": ok\n";
    return kOk;
  }
  if (*fmt_cmd) {
    auto program = load_program(file, err);
    if (!program) return kFailed;
    out << lang::print(*program);
    return kOk;
  }
  if (*blocks_cmd) {
    auto program = load_program(file, err);
    if (!program) return kFailed;
    out << blocks::to_markup(adapter::ast_to_blocks(*program));
    return kOk;
  }
  if (*run_cmd) {
    auto program = load_program(file, err);
    if (!program) return kFailed;
    auto trace = interp::run(*program, step_limit);
    if (!trace) {
      const auto& e = trace.error();
      err << file << ":" << e.line << ": error: " << e.code << ": " << e.message << "\n";
      return kFailed;
    }
    if (json_out) {
      out << interp::trace_to_json(*trace, 2) << "\n";
    } else {
      for (const auto& line : trace->output) out << line << "\n";
    }
    return kOk;
  }
  if (*grade_cmd) {
    auto corpus = assess::load_corpus(corpus_path);
    if (!corpus) {
      const auto& e = corpus.error();
      err << corpus_path << ": error: " << e.code << (e.task_id.empty() ? "" : " [" + e.task_id + "]") << ": "
          << e.message << "\n";
      return kFailed;
    }
    auto reports = assess::grade_directory(*corpus, submissions);
    if (json_out) {
      out << assess::report_to_json(reports) << "\n";
      return kOk;
    }
    int total = 0;
    out << std::left << std::setw(24) << "task" << std::setw(19) << "kind" << std::right << std::setw(5) << "score"
        << "  detail\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      total += r.score;
      out << std::left << std::setw(24) << r.task_id << std::setw(19) << assess::to_string((*corpus)[i].kind)
          << std::right << std::setw(5) << r.score << "  " << case_summary(r) << "\n";
    }
    out << "mean score: " << (reports.empty() ? 0 : total / static_cast<int>(reports.size())) << "\n";
    return kOk;
  }
  if (*serve_cmd) {
    editor::SessionRegistry registry;
    Server server(registry);
    int bound = server.bind(host, port);
    if (bound < 0) {
      err << "error: cannot bind " << host << ":" << port << "\n";
      return kFailed;
    }
    out << "listening on http://" << host << ":" << bound << std::endl;
    return server.listen() ? kOk : kFailed;
  }
  if (*palette_cmd) {
    out << adapter::palette_json();
    return kOk;
  }
  return kUsage;
}

}  // namespace hybrid::service
