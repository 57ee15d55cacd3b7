#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ws1s/stream.hpp"
#include "ws1s/syntax.hpp"

namespace ws1s::bench {

inline constexpr int kMaxConjuncts = 30;

/// x1 in Y1, ..., xn in Yn
std::vector<Formula> family1(int n);
/// ex2 Y1: x1 in Y1, ..., ex2 Yn: xn in Yn
std::vector<Formula> family2(int n);
std::vector<Formula> family(int which, int n);

struct BenchConfig {
  int family = 1;
  int n_max = 12;
  bool incremental = true;
  bool from_scratch = true;
  int repetitions = 1;
  std::string out_path;
  std::uint64_t seed = 0;  // reserved; both families are deterministic
  SessionConfig session;

  /// Throws kInvalidArgument.
  void validate() const;
};

struct BenchRow {
  int family = 1;
  Mode mode = Mode::kIncremental;
  std::size_t step = 0;
  int rep = 0;  // -1 marks a median summary row
  double compile_ms = 0;
  double process_ms = 0;
  double cum_total_ms = 0;
  std::uint64_t explored_step = 0;
  std::uint64_t explored_total = 0;
  bool sat = true;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<BenchRow> summary;
};

/// Runs every repetition of every selected mode; throws kModeDisagreement if
/// the modes disagree on any step's verdict or witness. Writes the CSV to
/// out_path when it is set.
BenchResult run_bench(const BenchConfig& config);

void write_csv(const BenchResult& result, std::ostream& out);

}  // namespace ws1s::bench
