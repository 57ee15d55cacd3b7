// ws1s: command-line front end over the C API.
//
//   ws1s check <formula>
//   ws1s compile <formula> [--dump-automaton <path|->] [--no-memo]
//   ws1s stream [--skip-bad-lines] [--log <jsonl>] [--mode inc|scratch]
//   ws1s bench --family {1,2} --n <max> --modes inc,scratch --reps <r> --out <csv>
//   ws1s oracle check <formula> --k <n>
//
// Exit status: 0 ok, 2 parse or kind error, 3 budget exceeded, 4 the two
// modes disagreed, 1 anything else.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ws1s/ws1s.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitDisagreement = 4;

int exit_code(ws1s_status s) {
  switch (s) {
    case WS1S_OK: return kExitOk;
    case WS1S_ERR_SYNTAX:
    case WS1S_ERR_KIND:
    case WS1S_ERR_BINDING:
    case WS1S_ERR_UNBOUND: return kExitParse;
    case WS1S_ERR_BUDGET: return kExitBudget;
    case WS1S_ERR_MODE_DISAGREEMENT: return kExitDisagreement;
    default: return kExitOther;
  }
}

int fail(ws1s_status s) {
  std::cerr << "ws1s: " << ws1s_status_name(s) << ": " << ws1s_last_error() << '\n';
  return exit_code(s);
}

struct CString {
  char* p = nullptr;
  ~CString() { ws1s_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct AutomatonPtr {
  ws1s_automaton* p = nullptr;
  ~AutomatonPtr() { ws1s_automaton_free(p); }
};

struct SessionPtr {
  ws1s_session* p = nullptr;
  ~SessionPtr() { ws1s_session_close(p); }
};

struct ReportGuard {
  ws1s_step_report r{};
  ~ReportGuard() { ws1s_step_report_clear(&r); }
};

// WS1S_STATE_BUDGET caps both the product search and each determinization.
std::optional<ws1s_options> base_options(bool weak, bool memo) {
  ws1s_options o = ws1s_default_options();
  o.semantics = weak ? WS1S_SEMANTICS_WEAK : WS1S_SEMANTICS_FINITE_STRING;
  o.memo = memo ? 1 : 0;
  if (const char* env = std::getenv("WS1S_STATE_BUDGET")) {
    std::uint64_t value = 0;
    std::istringstream in(env);
    if (!(in >> value) || !in.eof() || value == 0) {
      std::cerr << "ws1s: WS1S_STATE_BUDGET must be a positive integer, got '" << env
                << "'\n";
      return std::nullopt;
    }
    o.state_budget = value;
    o.subset_budget = value;
  }
  return o;
}

int run_check(const std::string& formula, const ws1s_options& o) {
  AutomatonPtr a;
  if (ws1s_status s = ws1s_compile(formula.c_str(), &o, &a.p); s != WS1S_OK) return fail(s);
  int sat = 0;
  CString witness;
  if (ws1s_status s = ws1s_automaton_witness(a.p, &sat, &witness.p); s != WS1S_OK) {
    return fail(s);
  }
  std::cout << "verdict=" << (sat ? "sat" : "unsat");
  if (sat) std::cout << " witness=" << witness.str();
  std::cout << '\n';
  return kExitOk;
}

int run_compile(const std::string& formula, const std::string& dump_path,
                const ws1s_options& o) {
  AutomatonPtr a;
  if (ws1s_status s = ws1s_compile(formula.c_str(), &o, &a.p); s != WS1S_OK) return fail(s);
  std::uint64_t hits = 0, misses = 0;
  ws1s_automaton_cache_stats(a.p, &hits, &misses);
  if (!dump_path.empty()) {
    CString text;
    if (ws1s_status s = ws1s_automaton_dump(a.p, &text.p); s != WS1S_OK) return fail(s);
    if (dump_path == "-") {
      std::cout << text.str();
      return kExitOk;
    }
    std::ofstream out(dump_path);
    if (!(out << text.str())) {
      std::cerr << "ws1s: cannot write '" << dump_path << "'\n";
      return kExitOther;
    }
  }
  std::cout << "states=" << ws1s_automaton_states(a.p)
            << " transitions=" << ws1s_automaton_transitions(a.p) << " memo_hits=" << hits
            << " memo_misses=" << misses << '\n';
  return kExitOk;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

int run_stream(bool skip_bad_lines, const std::string& log_path, ws1s_mode mode,
               const ws1s_options& o) {
  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path);
    if (!log) {
      std::cerr << "ws1s: cannot open log '" << log_path << "'\n";
      return kExitOther;
    }
  }
  SessionPtr session;
  if (ws1s_status s = ws1s_session_open(&o, mode, &session.p); s != WS1S_OK) return fail(s);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(std::cin, line)) {
    ++line_no;
    if (blank(line)) continue;
    ReportGuard rep;
    const ws1s_status s = ws1s_session_push(session.p, line.c_str(), &rep.r);
    if (s != WS1S_OK) {
      std::cerr << "ws1s: line " << line_no << ": " << ws1s_status_name(s) << ": "
                << ws1s_last_error() << '\n';
      if (exit_code(s) == kExitParse && skip_bad_lines) continue;
      return exit_code(s);
    }
    std::cout << "step=" << rep.r.step << " verdict=" << (rep.r.sat ? "sat" : "unsat");
    if (rep.r.sat) std::cout << " witness=" << rep.r.witness;
    std::cout << std::endl;

    if (log.is_open()) {
      nlohmann::ordered_json j;
      j["step"] = rep.r.step;
      j["mode"] = rep.r.mode == WS1S_MODE_INCREMENTAL ? "incremental" : "from_scratch";
      j["verdict"] = rep.r.sat ? "sat" : "unsat";
      if (rep.r.sat) j["witness"] = nlohmann::ordered_json::parse(rep.r.witness_json);
      j["compile_ms"] = rep.r.compile_ms;
      j["process_ms"] = rep.r.process_ms;
      j["explored_step"] = rep.r.explored_step;
      j["explored_total"] = rep.r.explored_total;
      log << j.dump() << std::endl;
    }
  }
  return kExitOk;
}

int run_bench(int family, int n, const std::string& modes, int reps, const std::string& out,
              const ws1s_options& o) {
  unsigned mask = 0;
  std::istringstream in(modes);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "inc") mask |= 1U;
    else if (token == "scratch") mask |= 2U;
    else {
      std::cerr << "ws1s: unknown mode '" << token << "' (expected inc or scratch)\n";
      return kExitParse;
    }
  }
  if (ws1s_status s = ws1s_bench(family, n, mask, reps, out.c_str(), &o); s != WS1S_OK) {
    return fail(s);
  }
  return kExitOk;
}

int run_oracle(const std::string& formula, std::size_t k) {
  int sat = 0;
  CString model;
  if (ws1s_status s = ws1s_oracle_check(formula.c_str(), k, &sat, &model.p); s != WS1S_OK) {
    return fail(s);
  }
  std::cout << "verdict=" << (sat ? "sat" : "unsat");
  if (sat) std::cout << " model=" << model.str();
  std::cout << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WS1S satisfiability over a stream of conjuncts"};
  app.require_subcommand(1);
  bool weak = false;
  app.add_flag("--weak", weak, "pad words with trailing zeros on projection (WS1S models)");

  std::string formula;
  auto* check = app.add_subcommand("check", "decide one formula and print a shortest witness");
  check->add_option("formula", formula)->required();

  std::string dump_path;
  bool no_memo = false;
  auto* compile = app.add_subcommand("compile", "compile one formula to a minimal DFA");
  compile->add_option("formula", formula)->required();
  compile->add_option("--dump-automaton", dump_path, "write the DFA to a file, - for stdout");
  compile->add_flag("--no-memo", no_memo, "disable the subformula cache");

  bool skip_bad_lines = false;
  std::string log_path;
  std::string mode_name = "inc";
  auto* stream = app.add_subcommand("stream", "read one conjunct per line from stdin");
  stream->add_flag("--skip-bad-lines", skip_bad_lines, "report and ignore malformed lines");
  stream->add_option("--log", log_path, "append one JSON record per step to this file");
  stream->add_option("--mode", mode_name, "inc or scratch")
      ->check(CLI::IsMember({"inc", "scratch"}));

  int family = 1, n = 12, reps = 1;
  std::string modes = "inc,scratch", out;
  auto* bench = app.add_subcommand("bench", "time both modes on a benchmark family");
  bench->add_option("--family", family)->check(CLI::IsMember({1, 2}))->required();
  bench->add_option("--n", n)->check(CLI::Range(1, 30))->required();
  bench->add_option("--modes", modes);
  bench->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench->add_option("--out", out)->required();

  std::size_t k = 0;
  auto* oracle = app.add_subcommand("oracle", "bounded model search");
  oracle->require_subcommand(1);
  auto* oracle_check = oracle->add_subcommand("check", "search models of length 0..k");
  oracle_check->add_option("formula", formula)->required();
  oracle_check->add_option("--k", k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  const auto options = base_options(weak, !no_memo);
  if (!options) return kExitParse;

  if (*check) return run_check(formula, *options);
  if (*compile) return run_compile(formula, dump_path, *options);
  if (*stream) {
    return run_stream(skip_bad_lines, log_path,
                      mode_name == "inc" ? WS1S_MODE_INCREMENTAL : WS1S_MODE_FROM_SCRATCH,
                      *options);
  }
  if (*bench) return run_bench(family, n, modes, reps, out, *options);
  if (*oracle_check) return run_oracle(formula, k);
  return kExitOther;
}
