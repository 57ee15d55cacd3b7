#include "ws1s/ws1s.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include <json.hpp>

#include "ws1s/bench.hpp"
#include "ws1s/compiler.hpp"
#include "ws1s/error.hpp"
#include "ws1s/oracle.hpp"
#include "ws1s/stream.hpp"

struct ws1s_automaton {
  ws1s::Dfa dfa;
  std::vector<ws1s::VarId> vars;  // parallel to dfa.tracks()
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

struct ws1s_session {
  std::variant<ws1s::StreamSession, ws1s::FromScratchSession> impl;
};

namespace {

thread_local std::string g_last_error;

ws1s_status status_of(ws1s::ErrorCode code) {
  using ws1s::ErrorCode;
  switch (code) {
    case ErrorCode::kSyntax: return WS1S_ERR_SYNTAX;
    case ErrorCode::kKind:
    case ErrorCode::kTrackKindConflict: return WS1S_ERR_KIND;
    case ErrorCode::kBinding: return WS1S_ERR_BINDING;
    case ErrorCode::kUnboundVariable:
    case ErrorCode::kUnboundTrack:
    case ErrorCode::kUnassignedVariable: return WS1S_ERR_UNBOUND;
    case ErrorCode::kStateBudgetExceeded:
    case ErrorCode::kEnumerationBudgetExceeded: return WS1S_ERR_BUDGET;
    case ErrorCode::kModeDisagreement: return WS1S_ERR_MODE_DISAGREEMENT;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnknownTrack:
    case ErrorCode::kArityMismatch: return WS1S_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return WS1S_ERR_IO;
    case ErrorCode::kInternal: return WS1S_ERR_INTERNAL;
  }
  return WS1S_ERR_INTERNAL;
}

template <class Fn>
ws1s_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return WS1S_OK;
  } catch (const ws1s::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WS1S_ERR_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WS1S_ERR_INTERNAL;
  }
}

ws1s_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return WS1S_ERR_INVALID_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ws1s::SessionConfig session_config(const ws1s_options* options) {
  const ws1s_options o = options ? *options : ws1s_default_options();
  ws1s::SessionConfig c;
  c.state_budget = o.state_budget;
  c.subset_budget = static_cast<std::size_t>(o.subset_budget);
  c.memo = o.memo != 0;
  c.semantics = o.semantics == WS1S_SEMANTICS_WEAK ? ws1s::Semantics::kWeak
                                                   : ws1s::Semantics::kFiniteString;
  return c;
}

std::string witness_json(const ws1s::StepVerdict& v) {
  if (!v.sat || !v.witness) return "null";
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < v.vars.size(); ++i) {
    auto column = nlohmann::json::array();
    for (const ws1s::Symbol& symbol : *v.witness) column.push_back(int{symbol[i]});
    j[v.vars[i].name] = column;
  }
  return j.dump();
}

void fill_report(const ws1s::StepReport& r, ws1s_step_report* out) {
  ws1s_step_report tmp{};
  tmp.step = r.step;
  tmp.mode = r.mode == ws1s::Mode::kIncremental ? WS1S_MODE_INCREMENTAL
                                                : WS1S_MODE_FROM_SCRATCH;
  tmp.sat = r.verdict.sat ? 1 : 0;
  tmp.compile_ms = ws1s::to_ms(r.compile_time);
  tmp.process_ms = ws1s::to_ms(r.process_time);
  tmp.explored_step = r.explored_step;
  tmp.explored_total = r.explored_total;
  tmp.witness = duplicate(r.verdict.witness_string());
  try {
    tmp.witness_json = duplicate(witness_json(r.verdict));
  } catch (...) {
    std::free(tmp.witness);
    throw;
  }
  *out = tmp;
}

}  // namespace

extern "C" {

ws1s_options ws1s_default_options(void) {
  ws1s_options o;
  o.state_budget = ws1s::kDefaultStateBudget;
  o.subset_budget = ws1s::kDefaultSubsetBudget;
  o.memo = 1;
  o.semantics = WS1S_SEMANTICS_FINITE_STRING;
  return o;
}

const char* ws1s_last_error(void) { return g_last_error.c_str(); }

const char* ws1s_status_name(ws1s_status status) {
  switch (status) {
    case WS1S_OK: return "ok";
    case WS1S_ERR_SYNTAX: return "syntax";
    case WS1S_ERR_KIND: return "kind";
    case WS1S_ERR_BINDING: return "binding";
    case WS1S_ERR_UNBOUND: return "unbound";
    case WS1S_ERR_BUDGET: return "budget";
    case WS1S_ERR_MODE_DISAGREEMENT: return "mode-disagreement";
    case WS1S_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case WS1S_ERR_IO: return "io";
    case WS1S_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void ws1s_string_free(char* s) { std::free(s); }

ws1s_status ws1s_compile(const char* formula, const ws1s_options* options,
                         ws1s_automaton** out) {
  if (!formula) return null_argument("formula");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const ws1s::SessionConfig config = session_config(options);
    ws1s::CompileOptions co;
    co.memo = config.memo;
    co.semantics = config.semantics;
    co.subset_budget = config.subset_budget;
    const ws1s::Formula f = ws1s::parse(formula);
    ws1s::TrackRegistry registry;
    ws1s::MemoCache cache;
    ws1s::Dfa dfa = ws1s::compile(f, registry, co.memo ? &cache : nullptr, co);
    auto a = std::make_unique<ws1s_automaton>(ws1s_automaton{std::move(dfa), {}, 0, 0});
    for (const ws1s::Track& t : a->dfa.tracks()) a->vars.push_back(registry.var_of(t.index));
    a->cache_hits = cache.hits();
    a->cache_misses = cache.misses();
    *out = a.release();
  });
}

void ws1s_automaton_free(ws1s_automaton* a) { delete a; }

size_t ws1s_automaton_states(const ws1s_automaton* a) {
  return a ? a->dfa.num_states() : 0;
}

size_t ws1s_automaton_transitions(const ws1s_automaton* a) {
  return a ? a->dfa.num_transitions() : 0;
}

ws1s_status ws1s_automaton_dump(const ws1s_automaton* a, char** out) {
  if (!a) return null_argument("automaton");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(ws1s::dump(a->dfa)); });
}

ws1s_status ws1s_automaton_witness(const ws1s_automaton* a, int* sat, char** witness) {
  if (!a) return null_argument("automaton");
  if (!sat) return null_argument("sat");
  return guarded([&] {
    ws1s::StepVerdict v;
    v.witness = ws1s::shortest_witness(a->dfa);
    v.sat = v.witness.has_value();
    v.tracks = a->dfa.tracks();
    v.vars = a->vars;
    *sat = v.sat ? 1 : 0;
    if (witness) *witness = duplicate(v.witness_string());
  });
}

void ws1s_automaton_cache_stats(const ws1s_automaton* a, uint64_t* hits,
                                uint64_t* misses) {
  if (hits) *hits = a ? a->cache_hits : 0;
  if (misses) *misses = a ? a->cache_misses : 0;
}

ws1s_status ws1s_session_open(const ws1s_options* options, ws1s_mode mode,
                              ws1s_session** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const ws1s::SessionConfig config = session_config(options);
    if (mode == WS1S_MODE_FROM_SCRATCH) {
      *out = new ws1s_session{ws1s::FromScratchSession(config)};
    } else if (mode == WS1S_MODE_INCREMENTAL) {
      *out = new ws1s_session{ws1s::StreamSession(config)};
    } else {
      throw ws1s::Error(ws1s::ErrorCode::kInvalidArgument, "unknown mode");
    }
  });
}

void ws1s_session_close(ws1s_session* s) { delete s; }

ws1s_status ws1s_session_push(ws1s_session* s, const char* formula,
                              ws1s_step_report* report) {
  if (!s) return null_argument("session");
  if (!formula) return null_argument("formula");
  if (!report) return null_argument("report");
  return guarded([&] {
    const ws1s::Formula f = ws1s::parse(formula);
    const ws1s::StepReport r =
        std::visit([&](auto& session) { return session.push(f); }, s->impl);
    fill_report(r, report);
  });
}

void ws1s_step_report_clear(ws1s_step_report* report) {
  if (!report) return;
  std::free(report->witness);
  std::free(report->witness_json);
  report->witness = nullptr;
  report->witness_json = nullptr;
}

size_t ws1s_session_step(const ws1s_session* s) {
  if (!s) return 0;
  return std::visit([](const auto& session) { return session.step(); }, s->impl);
}

ws1s_status ws1s_bench(int family, int n, unsigned modes, int reps, const char* out_path,
                       const ws1s_options* options) {
  return guarded([&] {
    ws1s::bench::BenchConfig c;
    c.family = family;
    c.n_max = n;
    c.incremental = (modes & 1U) != 0;
    c.from_scratch = (modes & 2U) != 0;
    c.repetitions = reps;
    c.out_path = out_path ? out_path : "";
    c.session = session_config(options);
    ws1s::bench::run_bench(c);
  });
}

ws1s_status ws1s_oracle_check(const char* formula, size_t k, int* sat, char** model) {
  if (!formula) return null_argument("formula");
  if (!sat) return null_argument("sat");
  return guarded([&] {
    const ws1s::Formula f = ws1s::parse(formula);
    const auto m = ws1s::oracle::sat_bounded(f, k);
    *sat = m ? 1 : 0;
    if (model) *model = duplicate(m ? ws1s::oracle::to_string(*m) : "");
  });
}

}  // extern "C"
