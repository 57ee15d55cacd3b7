#pragma once

// Formula -> minimal Dfa, bottom up. Atoms get small fixed automata, Not is
// complement, And is product, and a quantifier is projection followed by
// determinization. Everything is minimized after each step.
//
// Inner automata are exact only on well-formed words (each first-order track
// carries a single 1). The "exactly once" restriction is conjoined where the
// variable stops being live: at its quantifier when bound, at the top when free.

#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ws1s/automaton.hpp"
#include "ws1s/syntax.hpp"

namespace ws1s {

/// kFiniteString: the model is the word; quantifiers range over its
/// positions. kWeak: classical WS1S, languages closed under trailing zero
/// padding (re-established after each projection).
enum class Semantics { kFiniteString, kWeak };

struct CompileOptions {
  bool memo = true;
  Semantics semantics = Semantics::kFiniteString;
  std::size_t subset_budget = kDefaultSubsetBudget;
};

/// Variable name -> track. Free variables take consecutive indices in
/// registration order and keep them for the registry's lifetime; bound
/// variables borrow scratch tracks above that range while being compiled.
class TrackRegistry {
 public:
  /// Returns the existing track or allocates the next one. Throws kKind if
  /// the name was registered with the other kind.
  Track register_free(const VarId& var);
  void register_free_vars(const Formula& f);

  std::optional<Track> lookup(std::string_view name) const;
  const VarId& var_of(TrackIndex index) const;
  std::size_t size() const { return vars_.size(); }
  const std::vector<VarId>& vars() const { return vars_; }

  Track acquire_scratch(VarKind kind);
  void release_scratch();
  std::size_t scratch_in_use() const { return scratch_depth_; }

 private:
  std::vector<VarId> vars_;
  std::unordered_map<std::string, TrackIndex> by_name_;
  std::size_t scratch_depth_ = 0;
};

class DfaCache {
 public:
  virtual ~DfaCache() = default;
  virtual std::shared_ptr<const Dfa> find(const std::string& key) = 0;
  virtual void store(const std::string& key, std::shared_ptr<const Dfa> dfa) = 0;
};

/// Session-private memo table. Not thread-safe.
class MemoCache final : public DfaCache {
 public:
  std::shared_ptr<const Dfa> find(const std::string& key) override;
  void store(const std::string& key, std::shared_ptr<const Dfa> dfa) override;

  std::size_t size() const { return table_.size(); }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  void clear() { table_.clear(); }

 private:
  std::unordered_map<std::string, std::shared_ptr<const Dfa>> table_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// A memo table several sessions may share; lookups take a shared lock,
/// stores an exclusive one.
class SharedMemoCache final : public DfaCache {
 public:
  std::shared_ptr<const Dfa> find(const std::string& key) override;
  void store(const std::string& key, std::shared_ptr<const Dfa> dfa) override;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Dfa>> table_;
};

/// Exactly-one-1 language on a single first-order track (3 states).
Dfa restriction_automaton(Track track);

/// Unrestricted automaton for one atom over the given argument tracks.
Dfa atom_automaton(AtomKind kind, Track lhs, Track rhs);

class Compiler {
 public:
  Compiler(TrackRegistry& registry, DfaCache* cache, CompileOptions options = {});

  /// Minimal automaton whose language is the set of models of `f` over its
  /// free-variable tracks. Free variables must already be registered
  /// (kUnboundTrack otherwise).
  Dfa compile(const Formula& f);
  Dfa compile_atom(const Atom& atom);

  const CompileOptions& options() const { return options_; }

 private:
  struct Scope;

  std::shared_ptr<const Dfa> build(const Formula& f, Scope& scope);
  std::shared_ptr<const Dfa> build_uncached(const Formula& f, Scope& scope);
  Track resolve(const VarId& var, const Scope& scope) const;
  std::string key_of(const Formula& f, const Scope& scope) const;

  TrackRegistry& registry_;
  DfaCache* cache_;
  CompileOptions options_;
};

/// Registers the free variables of `f` and compiles it.
Dfa compile(const Formula& f, TrackRegistry& registry, DfaCache* cache = nullptr,
            const CompileOptions& options = {});

}  // namespace ws1s
