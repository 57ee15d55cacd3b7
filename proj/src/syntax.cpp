#include "ws1s/syntax.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "ws1s/error.hpp"

namespace ws1s {

VarKind lexical_kind(std::string_view name) {
  return (!name.empty() && std::isupper(static_cast<unsigned char>(name[0])))
             ? VarKind::kSecondOrder
             : VarKind::kFirstOrder;
}

namespace {

bool is_keyword(std::string_view word) {
  return word == "ex1" || word == "ex2" || word == "all1" || word == "all2" ||
         word == "in" || word == "sub";
}

}  // namespace

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return !is_keyword(name);
}

// ---------------------------------------------------------------------------
// Formula construction and equality

Formula::Formula(Atom atom)
    : node_(std::make_shared<const Node>(std::move(atom))) {}

Formula Formula::atom(AtomKind kind, VarId lhs, VarId rhs) {
  return Formula(Atom{kind, std::move(lhs), std::move(rhs)});
}
Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Not{std::move(operand)}));
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(And{std::move(lhs), std::move(rhs)}));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Or{std::move(lhs), std::move(rhs)}));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Implies{std::move(lhs), std::move(rhs)}));
}
Formula Formula::exists(VarId var, Formula body) {
  return Formula(
      std::make_shared<const Node>(Exists{std::move(var), std::move(body)}));
}
Formula Formula::forall(VarId var, Formula body) {
  return Formula(
      std::make_shared<const Node>(Forall{std::move(var), std::move(body)}));
}

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}
bool operator==(const Not& a, const Not& b) { return a.operand == b.operand; }
bool operator==(const And& a, const And& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const Or& a, const Or& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const Implies& a, const Implies& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const Exists& a, const Exists& b) {
  return a.var == b.var && a.body == b.body;
}
bool operator==(const Forall& a, const Forall& b) {
  return a.var == b.var && a.body == b.body;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const char* kind_word(VarKind kind) {
  return kind == VarKind::kFirstOrder ? "first-order" : "second-order";
}

const char* atom_operator(AtomKind kind) {
  switch (kind) {
    case AtomKind::kIn: return "in";
    case AtomKind::kLess: return "<";
    case AtomKind::kSucc: return "= +1";
    case AtomKind::kEqFo: return "=";
    case AtomKind::kSub: return "sub";
  }
  return "?";
}

std::pair<VarKind, VarKind> atom_signature(AtomKind kind) {
  switch (kind) {
    case AtomKind::kIn: return {VarKind::kFirstOrder, VarKind::kSecondOrder};
    case AtomKind::kSub: return {VarKind::kSecondOrder, VarKind::kSecondOrder};
    default: return {VarKind::kFirstOrder, VarKind::kFirstOrder};
  }
}

std::string kind_mismatch(const Atom& atom, const VarId& var, VarKind wanted) {
  std::ostringstream os;
  os << "'" << var.name << "' is " << kind_word(var.kind) << " but '"
     << atom_operator(atom.kind) << "' needs a " << kind_word(wanted)
     << " operand there";
  return os.str();
}

void check_atom_kinds(const Atom& atom) {
  auto [lhs_kind, rhs_kind] = atom_signature(atom.kind);
  if (atom.lhs.kind != lhs_kind) {
    throw Error(ErrorCode::kKind, kind_mismatch(atom, atom.lhs, lhs_kind));
  }
  if (atom.rhs.kind != rhs_kind) {
    throw Error(ErrorCode::kKind, kind_mismatch(atom, atom.rhs, rhs_kind));
  }
}

// Tracks scopes while walking or parsing, enforcing the binding invariants.
class BindingChecker {
 public:
  explicit BindingChecker(const ParseOptions& options) : options_(options) {}

  void bind(const VarId& var) {
    if (!is_valid_identifier(var.name)) {
      throw Error(ErrorCode::kBinding,
                  "invalid variable name '" + var.name + "'");
    }
    for (const VarId& v : scope_) {
      if (v.name == var.name) {
        throw Error(ErrorCode::kBinding,
                    "'" + var.name + "' is already bound in this scope");
      }
    }
    scope_.push_back(var);
    bound_.insert(var.name);
  }

  void unbind() { scope_.pop_back(); }

  // Kind the occurrence resolves to; records free uses.
  VarKind resolve(const std::string& name, VarKind free_kind) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == name) return it->kind;
    }
    if (!options_.allow_free_vars) {
      throw Error(ErrorCode::kUnboundVariable,
                  "free variable '" + name + "' is not allowed");
    }
    auto [it, inserted] = free_.emplace(name, free_kind);
    if (!inserted && it->second != free_kind) {
      throw Error(ErrorCode::kKind,
                  "free variable '" + name + "' is used with both kinds");
    }
    return it->second;
  }

  void finish() const {
    for (const auto& [name, kind] : free_) {
      if (bound_.count(name) != 0) {
        throw Error(ErrorCode::kBinding,
                    "'" + name + "' occurs both free and bound");
      }
    }
  }

 private:
  const ParseOptions& options_;
  std::vector<VarId> scope_;
  std::map<std::string, VarKind> free_;
  std::set<std::string> bound_;
};

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  kIdent,
  kNumber,
  kEx1,
  kEx2,
  kAll1,
  kAll2,
  kIn,
  kSub,
  kColon,
  kLParen,
  kRParen,
  kAmp,
  kBar,
  kTilde,
  kArrow,
  kLess,
  kEq,
  kPlus,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::kEnd, {}, line, column};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_')) {
        ++j;
      }
      tok.text = std::string(text.substr(i, j - i));
      if (tok.text == "ex1") tok.kind = Tok::kEx1;
      else if (tok.text == "ex2") tok.kind = Tok::kEx2;
      else if (tok.text == "all1") tok.kind = Tok::kAll1;
      else if (tok.text == "all2") tok.kind = Tok::kAll2;
      else if (tok.text == "in") tok.kind = Tok::kIn;
      else if (tok.text == "sub") tok.kind = Tok::kSub;
      else tok.kind = Tok::kIdent;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Tok::kNumber;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tok.kind = Tok::kArrow;
      tok.text = "->";
      advance(2);
    } else {
      switch (c) {
        case ':': tok.kind = Tok::kColon; break;
        case '(': tok.kind = Tok::kLParen; break;
        case ')': tok.kind = Tok::kRParen; break;
        case '&': tok.kind = Tok::kAmp; break;
        case '|': tok.kind = Tok::kBar; break;
        case '~': tok.kind = Tok::kTilde; break;
        case '<': tok.kind = Tok::kLess; break;
        case '=': tok.kind = Tok::kEq; break;
        case '+': tok.kind = Tok::kPlus; break;
        default:
          throw SyntaxError(line, column, "a formula token");
      }
      tok.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Tok::kEnd, {}, line, column});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : tokens_(tokenize(text)), bindings_(options) {}

  Formula parse_all() {
    Formula f = parse_formula();
    expect(Tok::kEnd, "end of input");
    bindings_.finish();
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(what);
    return next();
  }

  [[noreturn]] void fail(const char* what) const {
    throw SyntaxError(peek().line, peek().column, what);
  }

  static bool is_quantifier(Tok t) {
    return t == Tok::kEx1 || t == Tok::kEx2 || t == Tok::kAll1 ||
           t == Tok::kAll2;
  }

  Formula parse_formula() {
    if (is_quantifier(peek().kind)) return parse_quantifier();
    return parse_implies();
  }

  Formula parse_quantifier() {
    const Tok q = next().kind;
    const Token& name = expect(Tok::kIdent, "identifier");
    expect(Tok::kColon, "':'");
    const VarKind kind = (q == Tok::kEx1 || q == Tok::kAll1)
                             ? VarKind::kFirstOrder
                             : VarKind::kSecondOrder;
    VarId var{name.text, kind};
    with_position(name, [&] { bindings_.bind(var); });
    Formula body = parse_formula();
    bindings_.unbind();
    if (q == Tok::kEx1 || q == Tok::kEx2) {
      return Formula::exists(std::move(var), std::move(body));
    }
    return Formula::forall(std::move(var), std::move(body));
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::kArrow) {
      next();
      Formula rhs = parse_implies_rhs();
      return Formula::implication(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_implies_rhs() {
    if (is_quantifier(peek().kind)) return parse_quantifier();
    return parse_implies();
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::kBar) {
      next();
      lhs = Formula::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::kAmp) {
      next();
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::kTilde) {
      next();
      return Formula::negation(parse_unary());
    }
    if (is_quantifier(peek().kind)) return parse_quantifier();
    return parse_atom();
  }

  Formula parse_atom() {
    if (peek().kind == Tok::kLParen) {
      next();
      Formula inner = parse_formula();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    const Token& lhs = expect(Tok::kIdent, "identifier");
    AtomKind kind;
    switch (peek().kind) {
      case Tok::kIn: kind = AtomKind::kIn; break;
      case Tok::kSub: kind = AtomKind::kSub; break;
      case Tok::kLess: kind = AtomKind::kLess; break;
      case Tok::kEq: kind = AtomKind::kEqFo; break;
      default: fail("'in', 'sub', '<' or '='");
    }
    next();
    const Token& rhs = expect(Tok::kIdent, "identifier");
    if (kind == AtomKind::kEqFo && peek().kind == Tok::kPlus) {
      next();
      const Token& one = peek();
      if (one.kind != Tok::kNumber || one.text != "1") fail("'1'");
      next();
      kind = AtomKind::kSucc;
    }
    Atom atom{kind, resolve(lhs), resolve(rhs)};
    with_position(lhs, [&] { check_atom_kinds(atom); });
    return Formula(std::move(atom));
  }

  VarId resolve(const Token& tok) {
    VarId var{tok.text, VarKind::kFirstOrder};
    with_position(tok, [&] {
      var.kind = bindings_.resolve(tok.text, lexical_kind(tok.text));
    });
    return var;
  }

  // Prefixes semantic errors with the offending token's position.
  template <typename Fn>
  static void with_position(const Token& tok, Fn&& fn) {
    try {
      fn();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      std::ostringstream os;
      os << tok.line << ':' << tok.column << ": " << e.what();
      throw Error(e.code(), os.str());
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  BindingChecker bindings_;
};

void validate_node(const Formula& f, BindingChecker& bindings) {
  std::visit(
      Overloaded{
          [&](const Atom& a) {
            for (const VarId* v : {&a.lhs, &a.rhs}) {
              if (!is_valid_identifier(v->name)) {
                throw Error(ErrorCode::kBinding,
                            "invalid variable name '" + v->name + "'");
              }
              if (bindings.resolve(v->name, v->kind) != v->kind) {
                throw Error(ErrorCode::kKind,
                            "'" + v->name + "' disagrees with its binder's kind");
              }
            }
            check_atom_kinds(a);
          },
          [&](const Not& n) { validate_node(n.operand, bindings); },
          [&](const And& n) {
            validate_node(n.lhs, bindings);
            validate_node(n.rhs, bindings);
          },
          [&](const Or& n) {
            validate_node(n.lhs, bindings);
            validate_node(n.rhs, bindings);
          },
          [&](const Implies& n) {
            validate_node(n.lhs, bindings);
            validate_node(n.rhs, bindings);
          },
          [&](const Exists& n) {
            bindings.bind(n.var);
            validate_node(n.body, bindings);
            bindings.unbind();
          },
          [&](const Forall& n) {
            bindings.bind(n.var);
            validate_node(n.body, bindings);
            bindings.unbind();
          },
      },
      f.node());
}

// ---------------------------------------------------------------------------
// Printer

enum Precedence { kPrecImplies = 1, kPrecOr, kPrecAnd, kPrecUnary };

void print_to(std::ostream& os, const Formula& f, int min_prec);

void print_atom(std::ostream& os, const Atom& a) {
  switch (a.kind) {
    case AtomKind::kIn: os << a.lhs.name << " in " << a.rhs.name; break;
    case AtomKind::kSub: os << a.lhs.name << " sub " << a.rhs.name; break;
    case AtomKind::kLess: os << a.lhs.name << " < " << a.rhs.name; break;
    case AtomKind::kEqFo: os << a.lhs.name << " = " << a.rhs.name; break;
    case AtomKind::kSucc:
      os << a.lhs.name << " = " << a.rhs.name << " + 1";
      break;
  }
}

void print_binary(std::ostream& os, const Formula& lhs, const Formula& rhs,
                  const char* op, int prec, bool right_assoc, int min_prec) {
  const bool parens = prec < min_prec;
  if (parens) os << '(';
  print_to(os, lhs, right_assoc ? prec + 1 : prec);
  os << ' ' << op << ' ';
  print_to(os, rhs, right_assoc ? prec : prec + 1);
  if (parens) os << ')';
}

void print_quantifier(std::ostream& os, const char* q, const VarId& v,
                      const Formula& body, int min_prec) {
  const bool parens = min_prec > 0;
  if (parens) os << '(';
  os << q << ' ' << v.name << ": ";
  print_to(os, body, 0);
  if (parens) os << ')';
}

void print_to(std::ostream& os, const Formula& f, int min_prec) {
  std::visit(
      Overloaded{
          [&](const Atom& a) { print_atom(os, a); },
          [&](const Not& n) {
            os << '~';
            print_to(os, n.operand, kPrecUnary);
          },
          [&](const And& n) {
            print_binary(os, n.lhs, n.rhs, "&", kPrecAnd, false, min_prec);
          },
          [&](const Or& n) {
            print_binary(os, n.lhs, n.rhs, "|", kPrecOr, false, min_prec);
          },
          [&](const Implies& n) {
            print_binary(os, n.lhs, n.rhs, "->", kPrecImplies, true, min_prec);
          },
          [&](const Exists& n) {
            print_quantifier(os,
                             n.var.kind == VarKind::kFirstOrder ? "ex1" : "ex2",
                             n.var, n.body, min_prec);
          },
          [&](const Forall& n) {
            print_quantifier(
                os, n.var.kind == VarKind::kFirstOrder ? "all1" : "all2", n.var,
                n.body, min_prec);
          },
      },
      f.node());
}

void collect_free(const Formula& f, std::vector<VarId>& bound,
                  std::vector<VarId>& out) {
  auto note = [&](const VarId& v) {
    for (const VarId& b : bound) {
      if (b.name == v.name) return;
    }
    for (const VarId& o : out) {
      if (o.name == v.name) return;
    }
    out.push_back(v);
  };
  std::visit(Overloaded{
                 [&](const Atom& a) {
                   note(a.lhs);
                   note(a.rhs);
                 },
                 [&](const Not& n) { collect_free(n.operand, bound, out); },
                 [&](const And& n) {
                   collect_free(n.lhs, bound, out);
                   collect_free(n.rhs, bound, out);
                 },
                 [&](const Or& n) {
                   collect_free(n.lhs, bound, out);
                   collect_free(n.rhs, bound, out);
                 },
                 [&](const Implies& n) {
                   collect_free(n.lhs, bound, out);
                   collect_free(n.rhs, bound, out);
                 },
                 [&](const Exists& n) {
                   bound.push_back(n.var);
                   collect_free(n.body, bound, out);
                   bound.pop_back();
                 },
                 [&](const Forall& n) {
                   bound.push_back(n.var);
                   collect_free(n.body, bound, out);
                   bound.pop_back();
                 },
             },
             f.node());
}

}  // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse_all();
}

void validate(const Formula& f, const ParseOptions& options) {
  BindingChecker bindings(options);
  validate_node(f, bindings);
  bindings.finish();
}

std::string print(const Formula& f) {
  std::ostringstream os;
  print_to(os, f, 0);
  return os.str();
}

Formula normalize(const Formula& f) {
  return std::visit(
      Overloaded{
          [&](const Atom&) { return f; },
          [&](const Not& n) { return Formula::negation(normalize(n.operand)); },
          [&](const And& n) {
            return Formula::conjunction(normalize(n.lhs), normalize(n.rhs));
          },
          [&](const Or& n) {
            return Formula::negation(
                Formula::conjunction(Formula::negation(normalize(n.lhs)),
                                     Formula::negation(normalize(n.rhs))));
          },
          [&](const Implies& n) {
            return Formula::negation(Formula::conjunction(
                normalize(n.lhs), Formula::negation(normalize(n.rhs))));
          },
          [&](const Exists& n) {
            return Formula::exists(n.var, normalize(n.body));
          },
          [&](const Forall& n) {
            return Formula::negation(
                Formula::exists(n.var, Formula::negation(normalize(n.body))));
          },
      },
      f.node());
}

bool is_normalized(const Formula& f) {
  return std::visit(Overloaded{
                        [](const Atom&) { return true; },
                        [](const Not& n) { return is_normalized(n.operand); },
                        [](const And& n) {
                          return is_normalized(n.lhs) && is_normalized(n.rhs);
                        },
                        [](const Exists& n) { return is_normalized(n.body); },
                        [](const auto&) { return false; },
                    },
                    f.node());
}

std::vector<VarId> free_vars(const Formula& f) {
  std::vector<VarId> bound;
  std::vector<VarId> out;
  collect_free(f, bound, out);
  return out;
}

}  // namespace ws1s
