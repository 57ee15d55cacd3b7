#include "ws1s/compiler.hpp"

#include <sstream>

#include "ws1s/error.hpp"

namespace ws1s {

// ---------------------------------------------------------------------------
// TrackRegistry

Track TrackRegistry::register_free(const VarId& var) {
  if (auto found = lookup(var.name)) {
    if (found->kind != var.kind) {
      throw Error(ErrorCode::kKind, "variable '" + var.name +
                                        "' was already registered with the other kind");
    }
    return *found;
  }
  if (scratch_depth_ != 0) {
    throw Error(ErrorCode::kInternal,
                "free variables cannot be registered during compilation");
  }
  const auto index = static_cast<TrackIndex>(vars_.size());
  vars_.push_back(var);
  by_name_.emplace(var.name, index);
  return Track{index, var.kind};
}

void TrackRegistry::register_free_vars(const Formula& f) {
  for (const VarId& v : free_vars(f)) register_free(v);
}

std::optional<Track> TrackRegistry::lookup(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return Track{it->second, vars_[it->second].kind};
}

const VarId& TrackRegistry::var_of(TrackIndex index) const {
  if (index >= vars_.size()) {
    throw Error(ErrorCode::kUnknownTrack,
                "track " + std::to_string(index) + " has no free variable");
  }
  return vars_[index];
}

Track TrackRegistry::acquire_scratch(VarKind kind) {
  const auto index = static_cast<TrackIndex>(vars_.size() + scratch_depth_);
  ++scratch_depth_;
  return Track{index, kind};
}

void TrackRegistry::release_scratch() {
  if (scratch_depth_ == 0) {
    throw Error(ErrorCode::kInternal, "scratch track released twice");
  }
  --scratch_depth_;
}

// ---------------------------------------------------------------------------
// Caches

std::shared_ptr<const Dfa> MemoCache::find(const std::string& key) {
  auto it = table_.find(key);
  if (it == table_.end()) {
    ++misses_;
    return nullptr;
  }
  ++hits_;
  return it->second;
}

void MemoCache::store(const std::string& key, std::shared_ptr<const Dfa> dfa) {
  table_.insert_or_assign(key, std::move(dfa));
}

std::shared_ptr<const Dfa> SharedMemoCache::find(const std::string& key) {
  std::shared_lock lock(mutex_);
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : it->second;
}

void SharedMemoCache::store(const std::string& key,
                            std::shared_ptr<const Dfa> dfa) {
  std::unique_lock lock(mutex_);
  table_.insert_or_assign(key, std::move(dfa));
}

std::size_t SharedMemoCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

// ---------------------------------------------------------------------------
// Base automata

namespace {

// One row of an atom table: pattern over (lhs bit, rhs bit).
struct AtomEdge {
  StateId from;
  const char* pattern;
  StateId to;
};

Dfa table_automaton(Track lhs, Track rhs, std::size_t states,
                    std::vector<StateId> accepting_states,
                    std::initializer_list<AtomEdge> edges) {
  TrackSet tracks({lhs, rhs});
  std::vector<bool> accepting(states, false);
  for (StateId s : accepting_states) accepting[s] = true;
  std::vector<std::vector<Transition>> delta(states);
  for (const AtomEdge& e : edges) {
    const char a = e.pattern[0];
    const char b = e.pattern[1];
    std::string bits;
    if (lhs.index == rhs.index) {
      if (a != Cube::kAny && b != Cube::kAny && a != b) continue;
      bits.push_back(a == Cube::kAny ? b : a);
    } else if (lhs.index < rhs.index) {
      bits = {a, b};
    } else {
      bits = {b, a};
    }
    delta[e.from].push_back(Transition{Cube::parse(bits), e.to});
  }
  return make_dfa(std::move(tracks), 0, std::move(accepting), std::move(delta));
}

}  // namespace

Dfa restriction_automaton(Track track) {
  if (track.kind != VarKind::kFirstOrder) {
    throw Error(ErrorCode::kKind, "restriction applies to first-order tracks only");
  }
  std::vector<std::vector<Transition>> delta(2);
  delta[0].push_back(Transition{Cube::parse("0"), 0});
  delta[0].push_back(Transition{Cube::parse("1"), 1});
  delta[1].push_back(Transition{Cube::parse("0"), 1});
  return make_dfa(TrackSet({track}), 0, {false, true}, std::move(delta));
}

Dfa atom_automaton(AtomKind kind, Track lhs, Track rhs) {
  const VarKind want_lhs =
      kind == AtomKind::kSub ? VarKind::kSecondOrder : VarKind::kFirstOrder;
  const VarKind want_rhs =
      kind == AtomKind::kIn || kind == AtomKind::kSub ? VarKind::kSecondOrder
                                                      : VarKind::kFirstOrder;
  if (lhs.kind != want_lhs || rhs.kind != want_rhs) {
    throw Error(ErrorCode::kKind, "atom applied to tracks of the wrong kind");
  }
  switch (kind) {
    case AtomKind::kIn:
    case AtomKind::kSub:
      // Pointwise implication lhs -> rhs.
      return table_automaton(lhs, rhs, 1, {0}, {{0, "0X", 0}, {0, "11", 0}});
    case AtomKind::kLess:
      return table_automaton(lhs, rhs, 3, {2},
                             {{0, "00", 0},
                              {0, "10", 1},
                              {1, "X0", 1},
                              {1, "X1", 2},
                              {2, "XX", 2}});
    case AtomKind::kSucc:
      // lhs sits right after rhs.
      return table_automaton(lhs, rhs, 3, {2},
                             {{0, "00", 0},
                              {0, "01", 1},
                              {1, "10", 2},
                              {2, "XX", 2}});
    case AtomKind::kEqFo:
      return table_automaton(lhs, rhs, 2, {1},
                             {{0, "00", 0}, {0, "11", 1}, {1, "XX", 1}});
  }
  throw Error(ErrorCode::kInternal, "unknown atom kind");
}

// ---------------------------------------------------------------------------
// Compiler

struct Compiler::Scope {
  std::vector<std::pair<std::string, Track>> bound;
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class ScratchGuard {
 public:
  explicit ScratchGuard(TrackRegistry& registry) : registry_(registry) {}
  ~ScratchGuard() { registry_.release_scratch(); }
  ScratchGuard(const ScratchGuard&) = delete;
  ScratchGuard& operator=(const ScratchGuard&) = delete;

 private:
  TrackRegistry& registry_;
};

}  // namespace

Compiler::Compiler(TrackRegistry& registry, DfaCache* cache,
                   CompileOptions options)
    : registry_(registry), cache_(cache), options_(options) {}

Track Compiler::resolve(const VarId& var, const Scope& scope) const {
  for (auto it = scope.bound.rbegin(); it != scope.bound.rend(); ++it) {
    if (it->first == var.name) return it->second;
  }
  auto track = registry_.lookup(var.name);
  if (!track) {
    throw Error(ErrorCode::kUnboundTrack,
                "variable '" + var.name + "' has no registered track");
  }
  if (track->kind != var.kind) {
    throw Error(ErrorCode::kKind,
                "variable '" + var.name + "' is registered with the other kind");
  }
  return *track;
}

// Prefix rendering of the (normalized) formula with every variable shown as
// name@track.
std::string Compiler::key_of(const Formula& f, const Scope& scope) const {
  std::ostringstream os;
  auto var = [&](const VarId& v) {
    os << v.name << '@' << resolve(v, scope).index;
  };
  std::visit(Overloaded{
                 [&](const Atom& a) {
                   os << "A" << static_cast<int>(a.kind) << '(';
                   var(a.lhs);
                   os << ',';
                   var(a.rhs);
                   os << ')';
                 },
                 [&](const Not& n) { os << "N(" << key_of(n.operand, scope) << ')'; },
                 [&](const And& n) {
                   os << "C(" << key_of(n.lhs, scope) << ','
                      << key_of(n.rhs, scope) << ')';
                 },
                 [&](const Exists& n) {
                   Scope inner = scope;
                   const auto index =
                       static_cast<TrackIndex>(registry_.size() + scope.bound.size());
                   inner.bound.emplace_back(n.var.name, Track{index, n.var.kind});
                   os << (n.var.kind == VarKind::kFirstOrder ? "E1(" : "E2(")
                      << n.var.name << '@' << index << ','
                      << key_of(n.body, inner) << ')';
                 },
                 [&](const auto&) {
                   throw Error(ErrorCode::kInternal,
                               "formula must be normalized before compilation");
                 },
             },
             f.node());
  return os.str();
}

std::shared_ptr<const Dfa> Compiler::build(const Formula& f, Scope& scope) {
  const bool memo = options_.memo && cache_ != nullptr;
  std::string key;
  if (memo) {
    key = (options_.semantics == Semantics::kWeak ? "w:" : "f:") + key_of(f, scope);
    if (auto hit = cache_->find(key)) return hit;
  }
  auto result = build_uncached(f, scope);
  if (memo) cache_->store(key, result);
  return result;
}

std::shared_ptr<const Dfa> Compiler::build_uncached(const Formula& f,
                                                    Scope& scope) {
  return std::visit(
      Overloaded{
          [&](const Atom& a) {
            return std::make_shared<const Dfa>(atom_automaton(
                a.kind, resolve(a.lhs, scope), resolve(a.rhs, scope)));
          },
          [&](const Not& n) {
            return std::make_shared<const Dfa>(complement(*build(n.operand, scope)));
          },
          [&](const And& n) {
            auto lhs = build(n.lhs, scope);
            auto rhs = build(n.rhs, scope);
            return std::make_shared<const Dfa>(minimize(intersect(*lhs, *rhs)));
          },
          [&](const Exists& n) {
            const Track track = registry_.acquire_scratch(n.var.kind);
            ScratchGuard guard(registry_);
            if (track.index != registry_.size() + scope.bound.size()) {
              throw Error(ErrorCode::kInternal, "scratch tracks out of step");
            }
            scope.bound.emplace_back(n.var.name, track);
            std::shared_ptr<const Dfa> body;
            try {
              body = build(n.body, scope);
            } catch (...) {
              scope.bound.pop_back();
              throw;
            }
            scope.bound.pop_back();

            Dfa inner = *body;
            if (!inner.tracks().contains(track.index)) {
              inner = cylindrify(inner, TrackSet({track}));
            }
            if (track.kind == VarKind::kFirstOrder) {
              inner = minimize(intersect(inner, restriction_automaton(track)));
            }
            const PaddingClosure closure = options_.semantics == Semantics::kWeak
                                               ? PaddingClosure::kTrailingZeros
                                               : PaddingClosure::kNone;
            Nfa projected = project(inner, track.index, closure);
            return std::make_shared<const Dfa>(
                minimize(determinize(projected, options_.subset_budget)));
          },
          [&](const auto&) -> std::shared_ptr<const Dfa> {
            throw Error(ErrorCode::kInternal,
                        "formula must be normalized before compilation");
          },
      },
      f.node());
}

Dfa Compiler::compile_atom(const Atom& atom) {
  Scope scope;
  return atom_automaton(atom.kind, resolve(atom.lhs, scope),
                        resolve(atom.rhs, scope));
}

Dfa Compiler::compile(const Formula& input) {
  validate(input);
  const Formula f = normalize(input);
  Scope scope;
  const std::vector<VarId> free = free_vars(f);
  std::vector<Track> free_tracks;
  for (const VarId& v : free) free_tracks.push_back(resolve(v, scope));

  const bool memo = options_.memo && cache_ != nullptr;
  std::string key;
  if (memo) {
    key = (options_.semantics == Semantics::kWeak ? "wt:" : "ft:") + key_of(f, scope);
    if (auto hit = cache_->find(key)) return *hit;
  }

  Dfa result = *build(f, scope);
  for (const Track& t : free_tracks) {
    if (t.kind == VarKind::kFirstOrder) {
      result = minimize(intersect(result, restriction_automaton(t)));
    }
  }
  if (memo) cache_->store(key, std::make_shared<const Dfa>(result));
  return result;
}

Dfa compile(const Formula& f, TrackRegistry& registry, DfaCache* cache,
            const CompileOptions& options) {
  registry.register_free_vars(f);
  return Compiler(registry, cache, options).compile(f);
}

}  // namespace ws1s
