// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "ws1s/bench.hpp"
#include "ws1s/compiler.hpp"
#include "ws1s/error.hpp"
#include "ws1s/oracle.hpp"
#include "ws1s/stream.hpp"

namespace {

using namespace ws1s;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

bool oracle_can_enumerate(const Formula& f, std::size_t k) {
  std::size_t so = 0;
  for (const VarId& v : free_vars(f)) so += v.kind == VarKind::kSecondOrder;
  return k <= oracle::kMaxModelSize &&
         static_cast<double>(k + 1) * std::pow(2.0, static_cast<double>(k * so)) <=
             oracle::kEnumerationLimit;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  testing::FormulaGenerator gen(20240601);
  int agree = 0, total = 0, redrawn = 0;
  std::string first_mismatch;
  while (total < 200) {
    const Formula f = gen.next();
    TrackRegistry registry;
    const Dfa a = compile(f, registry);
    const std::size_t k = a.num_states();
    if (!oracle_can_enumerate(f, k)) {
      ++redrawn;
      continue;
    }
    ++total;
    const bool engine_sat = !is_empty_language(a);
    const bool oracle_sat = oracle::sat_bounded(f, k).has_value();
    if (engine_sat == oracle_sat) ++agree;
    else if (first_mismatch.empty()) first_mismatch = print(f);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = agree == 200 && secs < 60.0;
  o.detail = std::to_string(agree) + "/200 agree, " + std::to_string(redrawn) +
             " redrawn past the enumeration guard, " + fmt(secs) + " s (limit 60 s)";
  if (!first_mismatch.empty()) o.detail += ", first mismatch: " + first_mismatch;
  return o;
}

Formula conjunction_of(const std::vector<Formula>& fs, std::size_t n) {
  Formula all = fs[0];
  for (std::size_t i = 1; i < n; ++i) all = Formula::conjunction(all, fs[i]);
  return all;
}

Outcome cross_mode_agreement() {
  const auto t0 = Clock::now();
  int checked = 0;
  std::string problem;
  for (int which : {1, 2}) {
    const auto fs = bench::family(which, 12);
    StreamSession inc;
    for (const Formula& f : fs) inc.push(f);
    const FromScratchResult scratch = from_scratch_check(fs);
    for (std::size_t n = 1; n <= fs.size() && problem.empty(); ++n) {
      const StepVerdict& a = inc.reports()[n - 1].verdict;
      const StepVerdict& b = scratch.reports[n - 1].verdict;
      const std::string where = "family " + std::to_string(which) + " step " + std::to_string(n);
      if (a.sat != b.sat || a.witness != b.witness) problem = "modes disagree at " + where;
      else if (!a.sat) problem = "unsat at " + where;
      if (!problem.empty()) break;
      TrackRegistry fresh;
      const Dfa whole = compile(conjunction_of(fs, n), fresh);
      const auto pos = whole.tracks().positions_in(a.tracks);
      Word w;
      for (const Symbol& s : *a.witness) {
        Symbol t;
        for (std::size_t p : pos) t.push_back(s[p]);
        w.push_back(t);
      }
      if (!accepts(whole, w)) problem = "witness rejected by the compiled conjunction at " + where;
      ++checked;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = problem.empty() && checked == 24 && secs < 120.0;
  o.detail = std::to_string(checked) + "/24 steps agree, Sat, witness validated, " + fmt(secs) +
             " s (limit 120 s)";
  if (!problem.empty()) o.detail += ", " + problem;
  return o;
}

Outcome cost_ordering() {
  bench::BenchConfig c;
  c.family = 1;
  c.n_max = 12;
  c.repetitions = 5;
  const bench::BenchResult r = bench::run_bench(c);
  std::map<std::pair<Mode, std::size_t>, const bench::BenchRow*> median;
  for (const bench::BenchRow& row : r.summary) median[{row.mode, row.step}] = &row;
  const double inc_ms = median.at({Mode::kIncremental, 12})->cum_total_ms;
  const double fs_ms = median.at({Mode::kFromScratch, 12})->cum_total_ms;
  auto ratio = [&](std::size_t step) {
    return static_cast<double>(median.at({Mode::kFromScratch, step})->explored_step) /
           static_cast<double>(median.at({Mode::kIncremental, step})->explored_step);
  };
  int rising = 0;
  for (std::size_t step = 4; step <= 12; ++step) rising += ratio(step) >= ratio(step - 1);
  Outcome o;
  o.pass = inc_ms <= fs_ms && rising >= 7;
  o.detail = "median cumulative ms incremental " + fmt(inc_ms, 3) + " <= from-scratch " +
             fmt(fs_ms, 3) + ": " + (inc_ms <= fs_ms ? "yes" : "no") +
             "; explored ratio non-decreasing in " + std::to_string(rising) +
             "/9 steps (need 7), ratio at 12 = " + fmt(ratio(12));
  return o;
}

Outcome cost_accounting() {
  const auto fs = bench::family1(12);
  StreamSession inc;
  for (const Formula& f : fs) inc.push(f);
  const FromScratchResult scratch = from_scratch_check(fs);
  bool ok = true;
  std::string detail;
  for (const auto* reports : {&inc.reports(), &scratch.reports}) {
    const SessionStats st = session_stats(*reports);
    Nanoseconds running{0}, processing{0};
    for (std::size_t i = 0; i < reports->size(); ++i) {
      const StepReport& r = (*reports)[i];
      running += r.compile_time + r.process_time;
      processing += r.process_time;
      ok = ok && st.steps[i].cumulative == running &&
           st.steps[i].compile_time + st.steps[i].process_time ==
               r.compile_time + r.process_time;
    }
    ok = ok && st.measured_total == running &&
         st.incremental_estimate == reports->front().compile_time + processing &&
         st.explored_total == reports->back().explored_total;
    detail += std::string(mode_name(reports->front().mode)) + " sum(C+P) = " +
              std::to_string(running.count()) + " ns, C1+sum(P) = " +
              std::to_string(st.incremental_estimate.count()) + " ns; ";
  }
  return {ok, detail + "identities exact: " + (ok ? "yes" : "no")};
}

Outcome automata_laws() {
  const auto t0 = Clock::now();
  testing::FormulaGenerator gen(777);
  int violations = 0;
  std::string first;
  auto fail = [&](const std::string& law, const Formula& f) {
    ++violations;
    if (first.empty()) first = law + " on " + print(f);
  };
  for (int i = 0; i < 100; ++i) {
    const Formula f = gen.next();
    TrackRegistry registry;
    const Dfa a = compile(f, registry);
    if (minimize(minimize(a)).num_states() != minimize(a).num_states()) fail("idempotence", f);
    if (!language_equiv(complement(complement(a)), a)) fail("double complement", f);
    if (!is_empty_language(intersect(a, complement(a)))) fail("intersect complement", f);
    const TrackIndex fresh = static_cast<TrackIndex>(registry.size() + 8);
    const Dfa wide = cylindrify(a, TrackSet({Track{fresh, VarKind::kSecondOrder}}));
    if (!language_equiv(minimize(determinize(project(wide, fresh))), a)) {
      fail("cylindrify/project", f);
    }
    if (const auto w = shortest_witness(a); w && w->size() > a.num_states()) {
      fail("witness bound", f);
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = violations == 0 && secs < 60.0;
  o.detail = std::to_string(violations) + " violations over 100 automata x 5 laws, " +
             fmt(secs) + " s (limit 60 s)";
  if (!first.empty()) o.detail += ", first: " + first;
  return o;
}

Outcome lazy_exploration() {
  int ok_n = 0;
  bool depth_ok = true;
  std::string detail;
  for (int n = 1; n <= 12; ++n) {
    const auto fs = bench::family1(n);
    StreamSession inc;
    for (const Formula& f : fs) {
      const StepReport r = inc.push(f);
      if (r.verdict.sat &&
          r.max_expanded_depth > static_cast<std::int64_t>(r.verdict.witness->size())) {
        depth_ok = false;
      }
    }
    const FromScratchResult scratch = from_scratch_check(fs);
    for (const StepReport& r : scratch.reports) {
      if (r.verdict.sat &&
          r.max_expanded_depth > static_cast<std::int64_t>(r.verdict.witness->size())) {
        depth_ok = false;
      }
    }
    const std::uint64_t inc_total = inc.explored_total();
    const std::uint64_t fs_total = scratch.reports.back().explored_total;
    ok_n += inc_total <= fs_total;
    if (n == 12) {
      detail = "at n=12 incremental " + std::to_string(inc_total) + " vs from-scratch " +
               std::to_string(fs_total);
    }
  }
  Outcome o;
  o.pass = ok_n == 12 && depth_ok;
  o.detail = std::to_string(ok_n) + "/12 sizes with incremental <= from-scratch explored total (" +
             detail + "); expansion within witness depth: " + (depth_ok ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 oracle equivalence", oracle_equivalence},
      {"AC2 cross-mode agreement", cross_mode_agreement},
      {"AC3 cost ordering", cost_ordering},
      {"AC4 cost accounting", cost_accounting},
      {"AC5 automata laws", automata_laws},
      {"AC6 lazy exploration", lazy_exploration},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
