#pragma once

// WS1S abstract syntax, the concrete keyword grammar, and the normal form the
// compiler consumes.
//
//   formula := quant | implies
//   quant   := ("ex1" | "ex2" | "all1" | "all2") ident ":" formula
//   implies := or ("->" implies)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | quant | atom
//   atom    := ident "in" ident | ident "sub" ident | ident "<" ident
//            | ident "=" ident "+" "1" | ident "=" ident | "(" formula ")"
//
// Free variables take their kind from the initial letter: lowercase names are
// first-order positions, uppercase names are second-order sets.

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ws1s/kind.hpp"

namespace ws1s {

struct VarId {
  std::string name;
  VarKind kind = VarKind::kFirstOrder;

  friend bool operator==(const VarId&, const VarId&) = default;
};

/// Kind a free variable gets from its spelling.
VarKind lexical_kind(std::string_view name);
bool is_valid_identifier(std::string_view name);

enum class AtomKind {
  kIn,    // x in Y
  kLess,  // x < y
  kSucc,  // x = y + 1
  kEqFo,  // x = y
  kSub,   // Y sub Z
};

struct Atom {
  AtomKind kind;
  VarId lhs;
  VarId rhs;

  friend bool operator==(const Atom&, const Atom&) = default;
};

class Formula;

struct Not;
struct And;
struct Or;
struct Implies;
struct Exists;
struct Forall;

// Immutable formula tree. Copies share structure.
class Formula {
 public:
  using Node = std::variant<Atom, Not, And, Or, Implies, Exists, Forall>;

  Formula(Atom atom);  // NOLINT(google-explicit-constructor)

  static Formula atom(AtomKind kind, VarId lhs, VarId rhs);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula exists(VarId var, Formula body);
  static Formula forall(VarId var, Formula body);

  const Node& node() const;

  template <typename T>
  const T* as() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Not {
  Formula operand;
};
struct And {
  Formula lhs, rhs;
};
struct Or {
  Formula lhs, rhs;
};
struct Implies {
  Formula lhs, rhs;
};
struct Exists {
  VarId var;
  Formula body;
};
struct Forall {
  VarId var;
  Formula body;
};

inline const Formula::Node& Formula::node() const { return *node_; }

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(node_.get());
}

bool operator==(const Not&, const Not&);
bool operator==(const And&, const And&);
bool operator==(const Or&, const Or&);
bool operator==(const Implies&, const Implies&);
bool operator==(const Exists&, const Exists&);
bool operator==(const Forall&, const Forall&);

struct ParseOptions {
  bool allow_free_vars = true;
};

/// Throws SyntaxError, Error(kKind) for ill-kinded atoms, Error(kBinding) for
/// shadowing or a name used both free and bound, and Error(kUnboundVariable)
/// when free variables are disallowed.
Formula parse(std::string_view text, const ParseOptions& options = {});

/// Checks the binding and kind invariants of a programmatically built tree.
void validate(const Formula& f, const ParseOptions& options = {});

/// Canonical concrete syntax; parse(print(f)) == f.
std::string print(const Formula& f);

/// Rewrites Or, Implies and Forall into Not/And/Exists.
Formula normalize(const Formula& f);
bool is_normalized(const Formula& f);

/// Free variables in first-occurrence preorder.
std::vector<VarId> free_vars(const Formula& f);

}  // namespace ws1s
