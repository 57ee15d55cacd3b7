#pragma once

// Incremental satisfiability of a growing conjunction.
//
// A session keeps one minimal automaton per pushed conjunct and the part of
// their synchronous product it has explored so far. Pushing a conjunct
// appends a component to every retained product state instead of rebuilding
// the product: edges already computed for a state are replayed through the
// new automaton alone, and only states never expanded before need the full
// cross product of component transitions. The search is breadth-first with
// successors taken in symbol order, so the first accepting state it
// discovers yields the shortest, then least, satisfying word.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ws1s/automaton.hpp"
#include "ws1s/compiler.hpp"
#include "ws1s/syntax.hpp"

namespace ws1s {

using Nanoseconds = std::chrono::nanoseconds;

inline constexpr std::uint64_t kDefaultStateBudget = 5'000'000;

struct SessionConfig {
  /// Cap on product states created over the whole session.
  std::uint64_t state_budget = kDefaultStateBudget;
  std::size_t subset_budget = kDefaultSubsetBudget;
  bool memo = true;
  Semantics semantics = Semantics::kFiniteString;
  bool allow_free_vars = true;
};

enum class Mode { kIncremental, kFromScratch };
const char* mode_name(Mode mode);

struct StepVerdict {
  std::size_t step = 0;
  bool sat = true;
  /// Present iff sat. One bit per entry of `tracks`.
  std::optional<Witness> witness;
  TrackSet tracks;
  /// Variable owning each track, parallel to `tracks`.
  std::vector<VarId> vars;

  /// "[x1=1,Y1=1][x1=0,Y1=0]", "eps" for the empty word, "" when unsat.
  std::string witness_string() const;
};

struct StepReport {
  std::size_t step = 0;
  Mode mode = Mode::kIncremental;
  Nanoseconds compile_time{0};
  Nanoseconds process_time{0};
  /// Product states created during this step.
  std::uint64_t explored_step = 0;
  /// Running sum of explored_step.
  std::uint64_t explored_total = 0;
  /// Deepest product state whose successors were computed; -1 if none.
  std::int64_t max_expanded_depth = -1;
  StepVerdict verdict;
};

namespace detail {
class ProductGraph;
}

/// Kind each variable name was first used with in a stream.
using KindTable = std::unordered_map<std::string, VarKind>;

class StreamSession {
 public:
  explicit StreamSession(SessionConfig config = {});
  ~StreamSession();
  StreamSession(StreamSession&&) noexcept;
  StreamSession& operator=(StreamSession&&) noexcept;

  /// Compiles `f` against the shared registry and decides the conjunction of
  /// everything pushed so far. Throws kKind on a registry kind conflict and
  /// BudgetExceeded past the state budget; a failed push leaves the session
  /// as it was.
  StepReport push(const Formula& f);

  std::size_t step() const { return components_.size(); }
  /// Verdict for the current prefix; Sat(eps) before the first push.
  const StepVerdict& verdict() const { return verdict_; }
  const std::vector<StepReport>& reports() const { return reports_; }
  const std::vector<Dfa>& components() const { return components_; }
  const TrackRegistry& registry() const { return registry_; }
  const TrackSet& tracks() const { return tracks_; }
  /// Product states currently retained.
  std::size_t retained_states() const;
  std::uint64_t explored_total() const { return explored_total_; }
  const SessionConfig& config() const { return config_; }

 private:
  SessionConfig config_;
  TrackRegistry registry_;
  KindTable kinds_;
  MemoCache cache_;
  std::vector<Dfa> components_;
  TrackSet tracks_;
  std::unique_ptr<detail::ProductGraph> graph_;
  StepVerdict verdict_;
  std::vector<StepReport> reports_;
  std::uint64_t explored_total_ = 0;
};

/// Naive baseline: every push recompiles all formulas so far in a fresh
/// context and searches their product from nothing. Reports carry
/// Mode::kFromScratch and a running explored_total across steps.
class FromScratchSession {
 public:
  explicit FromScratchSession(SessionConfig config = {});

  StepReport push(const Formula& f);

  std::size_t step() const { return formulas_.size(); }
  const StepVerdict& verdict() const { return verdict_; }
  const std::vector<StepReport>& reports() const { return reports_; }
  std::uint64_t explored_total() const { return explored_total_; }

 private:
  SessionConfig config_;
  std::vector<Formula> formulas_;
  KindTable kinds_;
  StepVerdict verdict_;
  std::vector<StepReport> reports_;
  std::uint64_t explored_total_ = 0;
};

struct FromScratchResult {
  StepVerdict verdict;
  std::vector<StepReport> reports;
};
FromScratchResult from_scratch_check(std::span<const Formula> formulas,
                                     const SessionConfig& config = {});

struct StepCost {
  std::size_t step = 0;
  Nanoseconds compile_time{0};
  Nanoseconds process_time{0};
  /// Running sum of compile + process up to this step.
  Nanoseconds cumulative{0};
  std::uint64_t explored_step = 0;
  std::uint64_t explored_total = 0;
};

struct SessionStats {
  std::vector<StepCost> steps;
  /// Sum over steps of compile + process.
  Nanoseconds measured_total{0};
  /// First compile time plus every processing time.
  Nanoseconds incremental_estimate{0};
  std::uint64_t explored_total = 0;
};

SessionStats session_stats(std::span<const StepReport> reports);

double to_ms(Nanoseconds d);

}  // namespace ws1s
