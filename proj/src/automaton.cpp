#include "ws1s/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ws1s/error.hpp"

namespace ws1s {

// ---------------------------------------------------------------------------
// TrackSet

TrackSet::TrackSet(std::vector<Track> tracks) : tracks_(std::move(tracks)) {
  std::sort(tracks_.begin(), tracks_.end(),
            [](const Track& a, const Track& b) { return a.index < b.index; });
  std::vector<Track> unique;
  unique.reserve(tracks_.size());
  for (const Track& t : tracks_) {
    if (!unique.empty() && unique.back().index == t.index) {
      if (unique.back().kind != t.kind) {
        throw Error(ErrorCode::kTrackKindConflict,
                    "track " + std::to_string(t.index) +
                        " is used with two different kinds");
      }
      continue;
    }
    unique.push_back(t);
  }
  tracks_ = std::move(unique);
}

std::optional<std::size_t> TrackSet::position_of(TrackIndex index) const {
  auto it = std::lower_bound(
      tracks_.begin(), tracks_.end(), index,
      [](const Track& t, TrackIndex i) { return t.index < i; });
  if (it == tracks_.end() || it->index != index) return std::nullopt;
  return static_cast<std::size_t>(it - tracks_.begin());
}

TrackSet TrackSet::unite(const TrackSet& other) const {
  std::vector<Track> all = tracks_;
  all.insert(all.end(), other.tracks_.begin(), other.tracks_.end());
  return TrackSet(std::move(all));
}

TrackSet TrackSet::without(TrackIndex index) const {
  std::vector<Track> rest;
  for (const Track& t : tracks_) {
    if (t.index != index) rest.push_back(t);
  }
  return TrackSet(std::move(rest));
}

std::vector<std::size_t> TrackSet::positions_in(const TrackSet& super) const {
  std::vector<std::size_t> out;
  out.reserve(tracks_.size());
  for (const Track& t : tracks_) {
    auto pos = super.position_of(t.index);
    if (!pos) {
      throw Error(ErrorCode::kUnknownTrack,
                  "track " + std::to_string(t.index) + " is missing");
    }
    out.push_back(*pos);
  }
  return out;
}

std::string TrackSet::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (i) os << ',';
    os << tracks_[i].index << ':'
       << (tracks_[i].kind == VarKind::kFirstOrder ? "fo" : "so");
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(TrackSet tracks, StateId initial, std::vector<bool> accepting,
         std::vector<std::vector<Transition>> delta)
    : tracks_(std::move(tracks)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  const std::size_t m = accepting_.size();
  if (m == 0 || delta_.size() != m || initial_ >= m) {
    throw Error(ErrorCode::kInvalidArgument, "malformed automaton shape");
  }
  for (const auto& row : delta_) {
    for (const Transition& t : row) {
      if (t.target >= m || t.cube.width() != tracks_.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "transition refers to an unknown state or has the wrong width");
      }
    }
  }
  const StateId last = static_cast<StateId>(m - 1);
  if (!accepting_[last] && !delta_[last].empty() &&
      std::all_of(delta_[last].begin(), delta_[last].end(),
                  [last](const Transition& t) { return t.target == last; })) {
    dead_ = last;
  }
}

std::size_t Dfa::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : delta_) n += row.size();
  return n;
}

StateId Dfa::step(StateId s, const Symbol& symbol) const {
  if (symbol.size() != tracks_.size()) {
    throw Error(ErrorCode::kArityMismatch,
                "symbol has " + std::to_string(symbol.size()) +
                    " bits but the automaton has " +
                    std::to_string(tracks_.size()) + " tracks");
  }
  for (const Transition& t : delta_[s]) {
    if (t.cube.matches(symbol)) return t.target;
  }
  throw Error(ErrorCode::kInternal, "automaton is not total");
}

void Dfa::audit() const {
  const std::size_t width = tracks_.size();
  for (std::size_t s = 0; s < delta_.size(); ++s) {
    const auto& row = delta_[s];
    for (std::size_t i = 0; i < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        if (row[i].cube.intersects(row[j].cube)) {
          throw Error(ErrorCode::kInternal,
                      "state " + std::to_string(s) + " has overlapping cubes");
        }
      }
    }
    constexpr StateId kHole = std::numeric_limits<StateId>::max();
    for (const Transition& t : canonical_cover(row, width, kHole)) {
      if (t.target == kHole) {
        throw Error(ErrorCode::kInternal,
                    "state " + std::to_string(s) + " is not total");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Canonical covers: a reduced ordered decision diagram over track positions
// whose leaves are targets. Its paths are the canonical cubes.

namespace {

class CoverBuilder {
 public:
  CoverBuilder(std::span<const Transition> fn, std::size_t width,
               StateId fallback)
      : fn_(fn), width_(width), fallback_(fallback) {}

  std::vector<Transition> run() {
    std::vector<std::uint32_t> items(fn_.size());
    for (std::uint32_t i = 0; i < items.size(); ++i) items[i] = i;
    const std::uint32_t root = build(items, 0);
    std::vector<Transition> out;
    std::string prefix(width_, Cube::kAny);
    emit(root, prefix, out);
    return out;
  }

 private:
  struct Node {
    std::size_t pos;  // width_ for leaves
    std::uint32_t lo;
    std::uint32_t hi;
    StateId leaf;
  };

  struct Key {
    std::size_t pos;
    std::uint32_t lo, hi;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.pos;
      h = h * 0x9E3779B97F4A7C15ULL + k.lo;
      h = h * 0x9E3779B97F4A7C15ULL + k.hi;
      return h ^ (h >> 29);
    }
  };

  std::uint32_t leaf(StateId target) {
    auto [it, inserted] =
        leaves_.emplace(target, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back(Node{width_, 0, 0, target});
    return it->second;
  }

  std::uint32_t node(std::size_t pos, std::uint32_t lo, std::uint32_t hi) {
    if (lo == hi) return lo;
    auto [it, inserted] = unique_.emplace(
        Key{pos, lo, hi}, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back(Node{pos, lo, hi, 0});
    return it->second;
  }

  std::uint32_t build(const std::vector<std::uint32_t>& items,
                      std::size_t pos) {
    if (items.empty()) return leaf(fallback_);
    std::size_t split = width_;
    for (std::size_t p = pos; p < width_ && split == width_; ++p) {
      for (std::uint32_t i : items) {
        if (fn_[i].cube[p] != Cube::kAny) {
          split = p;
          break;
        }
      }
    }
    if (split == width_) {
      if (items.size() != 1) {
        throw Error(ErrorCode::kInternal,
                    "overlapping cubes in a deterministic transition function");
      }
      return leaf(fn_[items[0]].target);
    }
    std::vector<std::uint32_t> lo;
    std::vector<std::uint32_t> hi;
    for (std::uint32_t i : items) {
      const char c = fn_[i].cube[split];
      if (c != Cube::kOne) lo.push_back(i);
      if (c != Cube::kZero) hi.push_back(i);
    }
    const std::uint32_t l = build(lo, split + 1);
    const std::uint32_t h = build(hi, split + 1);
    return node(split, l, h);
  }

  void emit(std::uint32_t id, std::string& prefix,
            std::vector<Transition>& out) const {
    const Node& n = nodes_[id];
    if (n.pos == width_) {
      out.push_back(Transition{Cube::parse(prefix), n.leaf});
      return;
    }
    prefix[n.pos] = Cube::kZero;
    emit(n.lo, prefix, out);
    prefix[n.pos] = Cube::kOne;
    emit(n.hi, prefix, out);
    prefix[n.pos] = Cube::kAny;
  }

  std::span<const Transition> fn_;
  std::size_t width_;
  StateId fallback_;
  std::vector<Node> nodes_;
  std::unordered_map<StateId, std::uint32_t> leaves_;
  std::unordered_map<Key, std::uint32_t, KeyHash> unique_;
};

constexpr StateId kSink = std::numeric_limits<StateId>::max();

}  // namespace

std::vector<Transition> canonical_cover(std::span<const Transition> function,
                                        std::size_t width, StateId fallback) {
  return CoverBuilder(function, width, fallback).run();
}

// ---------------------------------------------------------------------------
// Normal form

Dfa make_dfa(TrackSet tracks, StateId initial, std::vector<bool> accepting,
             std::vector<std::vector<Transition>> delta) {
  const std::size_t n = accepting.size();
  const std::size_t width = tracks.size();

  std::vector<bool> reach(n, false);
  std::vector<StateId> order{initial};
  reach[initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Transition& t : delta[order[i]]) {
      if (!reach[t.target]) {
        reach[t.target] = true;
        order.push_back(t.target);
      }
    }
  }

  std::vector<std::vector<StateId>> preds(n);
  for (StateId s : order) {
    for (const Transition& t : delta[s]) preds[t.target].push_back(s);
  }
  std::vector<bool> live(n, false);
  std::vector<StateId> work;
  for (StateId s : order) {
    if (accepting[s]) {
      live[s] = true;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    const StateId s = work.back();
    work.pop_back();
    for (StateId p : preds[s]) {
      if (!live[p]) {
        live[p] = true;
        work.push_back(p);
      }
    }
  }

  if (!live[initial]) return empty_dfa(std::move(tracks));

  std::vector<std::vector<Transition>> covers(n);
  for (StateId s : order) {
    if (!live[s]) continue;
    std::vector<Transition> mapped;
    mapped.reserve(delta[s].size());
    for (const Transition& t : delta[s]) {
      if (live[t.target]) mapped.push_back(t);
    }
    covers[s] = canonical_cover(mapped, width, kSink);
  }

  std::vector<StateId> id(n, kSink);
  std::vector<StateId> numbered{initial};
  id[initial] = 0;
  bool needs_sink = false;
  for (std::size_t i = 0; i < numbered.size(); ++i) {
    for (const Transition& t : covers[numbered[i]]) {
      if (t.target == kSink) {
        needs_sink = true;
      } else if (id[t.target] == kSink) {
        id[t.target] = static_cast<StateId>(numbered.size());
        numbered.push_back(t.target);
      }
    }
  }

  const std::size_t m = numbered.size() + (needs_sink ? 1 : 0);
  const StateId sink = static_cast<StateId>(numbered.size());
  std::vector<bool> out_accepting(m, false);
  std::vector<std::vector<Transition>> out_delta(m);
  for (std::size_t i = 0; i < numbered.size(); ++i) {
    const StateId s = numbered[i];
    out_accepting[i] = accepting[s];
    auto& row = out_delta[i];
    row.reserve(covers[s].size());
    for (Transition& t : covers[s]) {
      t.target = t.target == kSink ? sink : id[t.target];
      row.push_back(std::move(t));
    }
  }
  if (needs_sink) out_delta[sink].push_back(Transition{Cube(width), sink});
  return Dfa(std::move(tracks), 0, std::move(out_accepting),
             std::move(out_delta));
}

Dfa universal_dfa(TrackSet tracks) {
  const std::size_t width = tracks.size();
  return Dfa(std::move(tracks), 0, {true}, {{Transition{Cube(width), 0}}});
}

Dfa empty_dfa(TrackSet tracks) {
  const std::size_t width = tracks.size();
  return Dfa(std::move(tracks), 0, {false}, {{Transition{Cube(width), 0}}});
}

// ---------------------------------------------------------------------------
// Word semantics

bool accepts(const Dfa& a, const Word& word) {
  StateId s = a.initial();
  for (const Symbol& symbol : word) s = a.step(s, symbol);
  return a.is_accepting(s);
}

bool accepts(const Nfa& a, const Word& word) {
  std::vector<bool> current(a.num_states(), false);
  current[a.initial] = true;
  for (const Symbol& symbol : word) {
    if (symbol.size() != a.tracks.size()) {
      throw Error(ErrorCode::kArityMismatch, "symbol width differs from tracks");
    }
    std::vector<bool> next(a.num_states(), false);
    for (std::size_t s = 0; s < current.size(); ++s) {
      if (!current[s]) continue;
      for (const Transition& t : a.delta[s]) {
        if (t.cube.matches(symbol)) next[t.target] = true;
      }
    }
    current = std::move(next);
  }
  for (std::size_t s = 0; s < current.size(); ++s) {
    if (current[s] && a.accepting[s]) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Boolean operations

namespace {

std::vector<std::vector<Transition>> widened_live_rows(
    const Dfa& a, const TrackSet& onto) {
  const std::vector<std::size_t> map = a.tracks().positions_in(onto);
  std::vector<std::vector<Transition>> rows(a.num_states());
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const Transition& t : a.transitions(s)) {
      if (a.is_dead(t.target)) continue;
      rows[s].push_back(Transition{t.cube.widen(map, onto.size()), t.target});
    }
  }
  return rows;
}

}  // namespace

Dfa intersect(const Dfa& a, const Dfa& b) {
  TrackSet tracks = a.tracks().unite(b.tracks());
  const auto rows_a = widened_live_rows(a, tracks);
  const auto rows_b = widened_live_rows(b, tracks);

  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId qa, StateId qb) {
    const std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
    auto [it, inserted] = ids.emplace(key, static_cast<StateId>(pairs.size()));
    if (inserted) pairs.emplace_back(qa, qb);
    return it->second;
  };

  intern(a.initial(), b.initial());
  std::vector<std::vector<Transition>> delta;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [qa, qb] = pairs[i];
    std::vector<Transition> row;
    for (const Transition& ta : rows_a[qa]) {
      for (const Transition& tb : rows_b[qb]) {
        if (auto c = ta.cube.intersect(tb.cube)) {
          row.push_back(Transition{std::move(*c), intern(ta.target, tb.target)});
        }
      }
    }
    delta.push_back(std::move(row));
    accepting.push_back(a.is_accepting(qa) && b.is_accepting(qb));
  }
  return make_dfa(std::move(tracks), 0, std::move(accepting), std::move(delta));
}

Dfa complement(const Dfa& a) {
  std::vector<bool> flipped = a.accepting();
  flipped.flip();
  std::vector<std::vector<Transition>> delta;
  delta.reserve(a.num_states());
  for (StateId s = 0; s < a.num_states(); ++s) delta.push_back(a.transitions(s));
  return make_dfa(a.tracks(), a.initial(), std::move(flipped), std::move(delta));
}

Dfa cylindrify(const Dfa& a, const TrackSet& extra) {
  TrackSet tracks = a.tracks().unite(extra);
  const std::vector<std::size_t> map = a.tracks().positions_in(tracks);
  std::vector<std::vector<Transition>> delta(a.num_states());
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const Transition& t : a.transitions(s)) {
      delta[s].push_back(Transition{t.cube.widen(map, tracks.size()), t.target});
    }
  }
  return Dfa(std::move(tracks), a.initial(), a.accepting(), std::move(delta));
}

// ---------------------------------------------------------------------------
// Emptiness

std::optional<Witness> shortest_witness(const Dfa& a) {
  if (a.is_accepting(a.initial())) return Witness{};
  const std::size_t n = a.num_states();
  constexpr StateId kNone = std::numeric_limits<StateId>::max();
  std::vector<StateId> parent(n, kNone);
  std::vector<const Cube*> via(n, nullptr);
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = true;

  while (!queue.empty()) {
    const StateId u = queue.front();
    queue.pop_front();
    std::vector<const Transition*> out;
    for (const Transition& t : a.transitions(u)) out.push_back(&t);
    std::sort(out.begin(), out.end(), [](const Transition* x, const Transition* y) {
      return cube_min_less(x->cube, y->cube);
    });
    for (const Transition* t : out) {
      const StateId v = t->target;
      if (seen[v] || a.is_dead(v)) continue;
      seen[v] = true;
      parent[v] = u;
      via[v] = &t->cube;
      if (a.is_accepting(v)) {
        Witness word;
        for (StateId s = v; s != a.initial(); s = parent[s]) {
          word.push_back(via[s]->min_symbol());
        }
        std::reverse(word.begin(), word.end());
        return word;
      }
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

bool language_equiv(const Dfa& a, const Dfa& b) {
  return is_empty_language(intersect(a, complement(b))) &&
         is_empty_language(intersect(b, complement(a)));
}

std::string dump(const Dfa& a) {
  std::ostringstream os;
  os << "dfa tracks=" << a.tracks().to_string() << " states=" << a.num_states()
     << " initial=" << a.initial() << '\n';
  os << "accepting";
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (a.is_accepting(s)) os << ' ' << s;
  }
  os << '\n';
  for (StateId s = 0; s < a.num_states(); ++s) {
    std::vector<const Transition*> row;
    for (const Transition& t : a.transitions(s)) row.push_back(&t);
    std::sort(row.begin(), row.end(), [](const Transition* x, const Transition* y) {
      return cube_min_less(x->cube, y->cube);
    });
    for (const Transition* t : row) {
      os << "trans " << s << ' '
         << (t->cube.width() == 0 ? std::string("-") : t->cube.str()) << ' '
         << t->target << '\n';
    }
  }
  return os.str();
}

}  // namespace ws1s
