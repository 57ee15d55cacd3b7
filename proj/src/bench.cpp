#include "ws1s/bench.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include "ws1s/error.hpp"

namespace ws1s::bench {

std::vector<Formula> family1(int n) {
  std::vector<Formula> out;
  for (int i = 1; i <= n; ++i) {
    const std::string k = std::to_string(i);
    out.push_back(parse("x" + k + " in Y" + k));
  }
  return out;
}

std::vector<Formula> family2(int n) {
  std::vector<Formula> out;
  for (int i = 1; i <= n; ++i) {
    const std::string k = std::to_string(i);
    out.push_back(parse("ex2 Y" + k + ": x" + k + " in Y" + k));
  }
  return out;
}

std::vector<Formula> family(int which, int n) {
  switch (which) {
    case 1: return family1(n);
    case 2: return family2(n);
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown benchmark family " + std::to_string(which));
  }
}

void BenchConfig::validate() const {
  if (family != 1 && family != 2) {
    throw Error(ErrorCode::kInvalidArgument, "family must be 1 or 2");
  }
  if (n_max < 1 || n_max > kMaxConjuncts) {
    throw Error(ErrorCode::kInvalidArgument,
                "n must lie in [1, " + std::to_string(kMaxConjuncts) + "]");
  }
  if (repetitions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "repetitions must be at least 1");
  }
  if (!incremental && !from_scratch) {
    throw Error(ErrorCode::kInvalidArgument, "select at least one mode");
  }
}

namespace {

std::vector<BenchRow> to_rows(int fam, int rep, const std::vector<StepReport>& reports) {
  std::vector<BenchRow> rows;
  const SessionStats stats = session_stats(reports);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const StepReport& r = reports[i];
    BenchRow row;
    row.family = fam;
    row.mode = r.mode;
    row.step = r.step;
    row.rep = rep;
    row.compile_ms = to_ms(r.compile_time);
    row.process_ms = to_ms(r.process_time);
    row.cum_total_ms = to_ms(stats.steps[i].cumulative);
    row.explored_step = r.explored_step;
    row.explored_total = r.explored_total;
    row.sat = r.verdict.sat;
    rows.push_back(row);
  }
  return rows;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

void check_agreement(const std::vector<StepReport>& a, const std::vector<StepReport>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const StepVerdict& x = a[i].verdict;
    const StepVerdict& y = b[i].verdict;
    if (x.sat != y.sat || x.witness != y.witness) {
      throw Error(ErrorCode::kModeDisagreement,
                  std::string("modes disagree at step ") + std::to_string(i + 1) +
                      ": " + mode_name(a[i].mode) + " says " +
                      (x.sat ? "sat" : "unsat") + ", " + mode_name(b[i].mode) +
                      " says " + (y.sat ? "sat" : "unsat"));
    }
  }
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  config.validate();
  const std::vector<Formula> formulas = family(config.family, config.n_max);
  BenchResult result;
  std::vector<StepReport> reference;

  for (int rep = 0; rep < config.repetitions; ++rep) {
    if (config.incremental) {
      StreamSession session(config.session);
      for (const Formula& f : formulas) session.push(f);
      if (reference.empty()) reference = session.reports();
      check_agreement(reference, session.reports());
      auto rows = to_rows(config.family, rep, session.reports());
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    if (config.from_scratch) {
      FromScratchResult scratch = from_scratch_check(formulas, config.session);
      if (reference.empty()) reference = scratch.reports;
      check_agreement(reference, scratch.reports);
      auto rows = to_rows(config.family, rep, scratch.reports);
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
  }

  std::map<std::pair<int, std::size_t>, std::vector<const BenchRow*>> groups;
  for (const BenchRow& row : result.rows) {
    groups[{static_cast<int>(row.mode), row.step}].push_back(&row);
  }
  for (const auto& [key, members] : groups) {
    BenchRow summary = *members.front();
    summary.rep = -1;
    std::vector<double> compile, process, cumulative;
    for (const BenchRow* r : members) {
      compile.push_back(r->compile_ms);
      process.push_back(r->process_ms);
      cumulative.push_back(r->cum_total_ms);
    }
    summary.compile_ms = median(compile);
    summary.process_ms = median(process);
    summary.cum_total_ms = median(cumulative);
    result.summary.push_back(summary);
  }

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) {
      throw Error(ErrorCode::kIo, "cannot open '" + config.out_path + "' for writing");
    }
    write_csv(result, out);
    if (!out) throw Error(ErrorCode::kIo, "failed writing '" + config.out_path + "'");
  }
  return result;
}

void write_csv(const BenchResult& result, std::ostream& out) {
  out << "family,mode,step,rep,compile_ms,process_ms,cum_total_ms,explored_step,"
         "explored_total,verdict\n";
  auto line = [&](const BenchRow& r) {
    out << r.family << ',' << mode_name(r.mode) << ',' << r.step << ',';
    if (r.rep < 0) out << "median";
    else out << r.rep;
    out << ',' << r.compile_ms << ',' << r.process_ms << ',' << r.cum_total_ms << ','
        << r.explored_step << ',' << r.explored_total << ','
        << (r.sat ? "sat" : "unsat") << '\n';
  };
  for (const BenchRow& r : result.rows) line(r);
  for (const BenchRow& r : result.summary) line(r);
}

}  // namespace ws1s::bench
