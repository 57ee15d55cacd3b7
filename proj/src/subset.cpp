// Projection and the subset construction.

#include <algorithm>
#include <map>

#include "ws1s/automaton.hpp"
#include "ws1s/error.hpp"

namespace ws1s {

Nfa project(const Dfa& a, TrackIndex track, PaddingClosure closure) {
  const auto pos = a.tracks().position_of(track);
  if (!pos) {
    throw Error(ErrorCode::kUnknownTrack,
                "cannot project track " + std::to_string(track) +
                    ": not one of " + a.tracks().to_string());
  }
  Nfa out;
  out.tracks = a.tracks().without(track);
  out.initial = a.initial();
  out.accepting = a.accepting();
  out.delta.resize(a.num_states());
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const Transition& t : a.transitions(s)) {
      if (a.is_dead(t.target)) continue;
      out.delta[s].push_back(Transition{t.cube.without(*pos), t.target});
    }
  }

  if (closure == PaddingClosure::kTrailingZeros) {
    // Backward fixpoint over edges that admit the all-zero symbol.
    std::vector<std::vector<StateId>> zero_preds(out.num_states());
    for (StateId s = 0; s < out.num_states(); ++s) {
      for (const Transition& t : out.delta[s]) {
        if (t.cube.admits_zero()) zero_preds[t.target].push_back(s);
      }
    }
    std::vector<StateId> work;
    for (StateId s = 0; s < out.num_states(); ++s) {
      if (out.accepting[s]) work.push_back(s);
    }
    while (!work.empty()) {
      const StateId s = work.back();
      work.pop_back();
      for (StateId p : zero_preds[s]) {
        if (!out.accepting[p]) {
          out.accepting[p] = true;
          work.push_back(p);
        }
      }
    }
  }
  return out;
}

namespace {

using Subset = std::vector<StateId>;

// Splits overlapping cubes into disjoint regions, each labelled with every
// target reachable on it. Regions with no target are left out.
void refine(const std::vector<const Transition*>& items, std::size_t pos,
            std::string& prefix,
            std::vector<std::pair<Cube, Subset>>& out) {
  if (items.empty()) return;
  const std::size_t width = prefix.size();
  std::size_t split = width;
  for (std::size_t p = pos; p < width && split == width; ++p) {
    for (const Transition* t : items) {
      if (t->cube[p] != Cube::kAny) {
        split = p;
        break;
      }
    }
  }
  if (split == width) {
    Subset targets;
    for (const Transition* t : items) targets.push_back(t->target);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    out.emplace_back(Cube::parse(prefix), std::move(targets));
    return;
  }
  std::vector<const Transition*> lo;
  std::vector<const Transition*> hi;
  for (const Transition* t : items) {
    const char c = t->cube[split];
    if (c != Cube::kOne) lo.push_back(t);
    if (c != Cube::kZero) hi.push_back(t);
  }
  prefix[split] = Cube::kZero;
  refine(lo, split + 1, prefix, out);
  prefix[split] = Cube::kOne;
  refine(hi, split + 1, prefix, out);
  prefix[split] = Cube::kAny;
}

}  // namespace

Dfa determinize(const Nfa& n, std::size_t subset_budget) {
  std::map<Subset, StateId> ids;
  std::vector<Subset> subsets;
  auto intern = [&](Subset s) {
    auto [it, inserted] = ids.emplace(s, static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= subset_budget) {
        throw BudgetExceeded(ErrorCode::kStateBudgetExceeded, subset_budget,
                             "subset construction");
      }
      subsets.push_back(std::move(s));
    }
    return it->second;
  };

  intern(Subset{n.initial});
  std::vector<std::vector<Transition>> delta;
  std::vector<bool> accepting;
  std::string prefix(n.tracks.size(), Cube::kAny);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<const Transition*> items;
    bool acc = false;
    for (StateId s : subsets[i]) {
      acc = acc || n.accepting[s];
      for (const Transition& t : n.delta[s]) items.push_back(&t);
    }
    std::vector<std::pair<Cube, Subset>> regions;
    refine(items, 0, prefix, regions);
    std::vector<Transition> row;
    row.reserve(regions.size());
    for (auto& [cube, targets] : regions) {
      row.push_back(Transition{std::move(cube), intern(std::move(targets))});
    }
    delta.push_back(std::move(row));
    accepting.push_back(acc);
  }
  return make_dfa(n.tracks, 0, std::move(accepting), std::move(delta));
}

}  // namespace ws1s
