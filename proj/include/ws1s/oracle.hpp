#pragma once

// Brute-force semantics by enumerating models. Shares nothing with the
// automata code; tests use it as the reference for every language claim.
//
// A model of size k has positions 0..k-1. First-order variables denote a
// position, second-order variables a subset (bit p = position p), and both
// quantifiers range over the model only.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ws1s/syntax.hpp"

namespace ws1s::oracle {

inline constexpr double kEnumerationLimit = 1e7;
inline constexpr std::size_t kMaxModelSize = 62;

struct Interpretation {
  std::size_t length = 0;
  std::map<std::string, std::size_t> positions;
  std::map<std::string, std::uint64_t> sets;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// Throws kUnassignedVariable if a free variable has no value, and
/// kInvalidArgument if a value lies outside the model.
bool eval(const Formula& f, const Interpretation& model);

/// Smallest model size first, then the first assignment in enumeration
/// order (variables in free_vars order, positions ascending, subsets by
/// ascending bitmask). Throws BudgetExceeded(kEnumerationBudgetExceeded)
/// when (k_max+1) * 2^(k_max * #second-order) exceeds kEnumerationLimit.
std::optional<Interpretation> sat_bounded(const Formula& f, std::size_t k_max);

/// Reads an interpretation off a word whose columns belong to `vars`
/// (column i carries vars[i]). A first-order column must hold exactly one 1.
std::optional<Interpretation> decode(const std::vector<VarId>& vars,
                                     const std::vector<std::vector<std::uint8_t>>& word);

std::string to_string(const Interpretation& model);

}  // namespace ws1s::oracle
