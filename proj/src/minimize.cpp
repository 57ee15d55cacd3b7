// Moore-style partition refinement. Each round a state's signature is its
// current block plus the canonical cover of its transition function with
// targets replaced by blocks; equal covers mean equal functions.

#include <string>
#include <unordered_map>

#include "ws1s/automaton.hpp"

namespace ws1s {

Dfa minimize(const Dfa& input) {
  std::vector<std::vector<Transition>> rows(input.num_states());
  for (StateId s = 0; s < input.num_states(); ++s) rows[s] = input.transitions(s);
  const Dfa a = make_dfa(input.tracks(), input.initial(), input.accepting(),
                         std::move(rows));
  const std::size_t n = a.num_states();
  const std::size_t width = a.tracks().size();

  std::vector<StateId> block(n);
  std::size_t blocks = 0;
  {
    StateId acc_block = 0;
    StateId rej_block = 0;
    bool have_acc = false;
    bool have_rej = false;
    for (StateId s = 0; s < n; ++s) {
      bool& have = a.is_accepting(s) ? have_acc : have_rej;
      StateId& id = a.is_accepting(s) ? acc_block : rej_block;
      if (!have) {
        have = true;
        id = static_cast<StateId>(blocks++);
      }
      block[s] = id;
    }
  }

  std::vector<Transition> mapped;
  while (true) {
    std::unordered_map<std::string, StateId> signatures;
    std::vector<StateId> next(n);
    for (StateId s = 0; s < n; ++s) {
      mapped.clear();
      for (const Transition& t : a.transitions(s)) {
        mapped.push_back(Transition{t.cube, block[t.target]});
      }
      std::string sig = std::to_string(block[s]);
      for (const Transition& t : canonical_cover(mapped, width, 0)) {
        sig += '|';
        sig += t.cube.str();
        sig += ':';
        sig += std::to_string(t.target);
      }
      auto [it, inserted] =
          signatures.emplace(std::move(sig), static_cast<StateId>(signatures.size()));
      next[s] = it->second;
    }
    const std::size_t refined = signatures.size();
    block = std::move(next);
    if (refined == blocks) break;
    blocks = refined;
  }

  std::vector<StateId> representative(blocks, 0);
  std::vector<bool> seen(blocks, false);
  for (StateId s = 0; s < n; ++s) {
    if (!seen[block[s]]) {
      seen[block[s]] = true;
      representative[block[s]] = s;
    }
  }
  std::vector<bool> accepting(blocks);
  std::vector<std::vector<Transition>> delta(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const StateId r = representative[b];
    accepting[b] = a.is_accepting(r);
    for (const Transition& t : a.transitions(r)) {
      delta[b].push_back(Transition{t.cube, block[t.target]});
    }
  }
  return make_dfa(a.tracks(), block[a.initial()], std::move(accepting),
                  std::move(delta));
}

}  // namespace ws1s
