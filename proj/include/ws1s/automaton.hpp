#pragma once

// Finite automata over bit-vector track alphabets. Transition labels are
// cubes, so a state with k tracks never needs 2^k explicit entries.
//
// Every Dfa produced by the operations below is total, deterministic,
// trimmed to its reachable part, and keeps at most one dead state, which is
// always the last id. Cube lists are canonical: for a fixed track order the
// cover of each state's transition function is unique, so structurally equal
// minimal automata are exactly the isomorphic ones.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ws1s/cube.hpp"
#include "ws1s/kind.hpp"

namespace ws1s {

using TrackIndex = std::uint32_t;
using StateId = std::uint32_t;
using Witness = Word;

inline constexpr std::size_t kDefaultSubsetBudget = 1'000'000;

struct Track {
  TrackIndex index = 0;
  VarKind kind = VarKind::kFirstOrder;

  friend bool operator==(const Track&, const Track&) = default;
};

/// Tracks in strictly increasing index order.
class TrackSet {
 public:
  TrackSet() = default;
  /// Sorts the input. Throws kTrackKindConflict when one index carries two
  /// kinds; exact duplicates collapse.
  explicit TrackSet(std::vector<Track> tracks);

  std::size_t size() const { return tracks_.size(); }
  bool empty() const { return tracks_.empty(); }
  const Track& operator[](std::size_t i) const { return tracks_[i]; }
  auto begin() const { return tracks_.begin(); }
  auto end() const { return tracks_.end(); }

  std::optional<std::size_t> position_of(TrackIndex index) const;
  bool contains(TrackIndex index) const { return position_of(index).has_value(); }

  TrackSet unite(const TrackSet& other) const;
  TrackSet without(TrackIndex index) const;
  /// Position of each of our tracks inside `super`, which must contain them.
  std::vector<std::size_t> positions_in(const TrackSet& super) const;

  /// "0:fo,3:so"
  std::string to_string() const;

  friend bool operator==(const TrackSet&, const TrackSet&) = default;

 private:
  std::vector<Track> tracks_;
};

struct Transition {
  Cube cube;
  StateId target;

  friend bool operator==(const Transition&, const Transition&) = default;
};

class Dfa {
 public:
  /// Checks shapes and ids only; totality is checked by audit().
  Dfa(TrackSet tracks, StateId initial, std::vector<bool> accepting,
      std::vector<std::vector<Transition>> delta);

  const TrackSet& tracks() const { return tracks_; }
  std::size_t num_states() const { return accepting_.size(); }
  StateId initial() const { return initial_; }
  bool is_accepting(StateId s) const { return accepting_[s]; }
  const std::vector<bool>& accepting() const { return accepting_; }
  const std::vector<Transition>& transitions(StateId s) const { return delta_[s]; }
  std::size_t num_transitions() const;

  /// The non-accepting sink, if the last state is one.
  std::optional<StateId> dead_state() const { return dead_; }
  bool is_dead(StateId s) const { return dead_ && *dead_ == s; }

  /// Throws kArityMismatch on a wrong-width symbol.
  StateId step(StateId s, const Symbol& symbol) const;

  /// Throws Error(kInternal) unless every state's cubes are pairwise disjoint
  /// and cover the whole alphabet.
  void audit() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  TrackSet tracks_;
  StateId initial_;
  std::vector<bool> accepting_;
  std::vector<std::vector<Transition>> delta_;
  std::optional<StateId> dead_;
};

/// Cubes may overlap and a state may move to several targets.
struct Nfa {
  TrackSet tracks;
  StateId initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<Transition>> delta;

  std::size_t num_states() const { return accepting.size(); }
};

/// Builds the canonical Dfa for a possibly partial, possibly redundant
/// deterministic transition table. Symbols without a transition go to the
/// dead state. States are numbered breadth-first in cube order.
Dfa make_dfa(TrackSet tracks, StateId initial, std::vector<bool> accepting,
             std::vector<std::vector<Transition>> delta);

Dfa universal_dfa(TrackSet tracks);
Dfa empty_dfa(TrackSet tracks);

/// Unique cover of a function given as disjoint cubes; uncovered symbols map
/// to `fallback`. Cubes come out sorted by least member.
std::vector<Transition> canonical_cover(std::span<const Transition> function,
                                        std::size_t width, StateId fallback);

bool accepts(const Dfa& a, const Word& word);
bool accepts(const Nfa& a, const Word& word);

/// Product over the union of both track sets.
Dfa intersect(const Dfa& a, const Dfa& b);
Dfa complement(const Dfa& a);
Dfa cylindrify(const Dfa& a, const TrackSet& extra);

enum class PaddingClosure { kNone, kTrailingZeros };

/// Erases `track`. With kTrailingZeros, a state also accepts when a run of
/// symbols that are zero on the remaining tracks leads to acceptance.
Nfa project(const Dfa& a, TrackIndex track,
            PaddingClosure closure = PaddingClosure::kNone);

/// Subset construction over reachable subsets. Throws BudgetExceeded
/// (kStateBudgetExceeded) past `subset_budget` subsets.
Dfa determinize(const Nfa& n, std::size_t subset_budget = kDefaultSubsetBudget);

Dfa minimize(const Dfa& a);

/// Shortest accepted word, least under symbol order among those, or nullopt
/// for the empty language. Breadth-first; stops at the first accepting state
/// it reaches.
std::optional<Witness> shortest_witness(const Dfa& a);
inline bool is_empty_language(const Dfa& a) { return !shortest_witness(a); }

bool language_equiv(const Dfa& a, const Dfa& b);

/// Line format:
///   dfa tracks=<idx:fo|so,...> states=<m> initial=<i>
///   accepting <ids...>
///   trans <src> <cube> <dst>
/// A zero-width cube prints as "-".
std::string dump(const Dfa& a);

}  // namespace ws1s
