#include "ws1s/oracle.hpp"

#include <cmath>
#include <sstream>

#include "ws1s/error.hpp"

namespace ws1s::oracle {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t position(const Interpretation& m, const VarId& v) {
  auto it = m.positions.find(v.name);
  if (it == m.positions.end()) {
    throw Error(ErrorCode::kUnassignedVariable,
                "no position for '" + v.name + "'");
  }
  return it->second;
}

std::uint64_t set(const Interpretation& m, const VarId& v) {
  auto it = m.sets.find(v.name);
  if (it == m.sets.end()) {
    throw Error(ErrorCode::kUnassignedVariable, "no set for '" + v.name + "'");
  }
  return it->second;
}

bool holds(const Atom& a, const Interpretation& m) {
  switch (a.kind) {
    case AtomKind::kIn:
      return (set(m, a.rhs) >> position(m, a.lhs)) & 1U;
    case AtomKind::kSub:
      return (set(m, a.lhs) & ~set(m, a.rhs)) == 0;
    case AtomKind::kLess:
      return position(m, a.lhs) < position(m, a.rhs);
    case AtomKind::kSucc:
      return position(m, a.lhs) == position(m, a.rhs) + 1;
    case AtomKind::kEqFo:
      return position(m, a.lhs) == position(m, a.rhs);
  }
  return false;
}

// Evaluates with `m` mutated in place for bound variables.
bool eval_in(const Formula& f, Interpretation& m);

bool quantify(const VarId& v, const Formula& body, Interpretation& m,
              bool universal) {
  const std::size_t k = m.length;
  bool result = universal;
  if (v.kind == VarKind::kFirstOrder) {
    auto saved = m.positions.find(v.name) != m.positions.end()
                     ? std::optional<std::size_t>(m.positions[v.name])
                     : std::nullopt;
    for (std::size_t p = 0; p < k; ++p) {
      m.positions[v.name] = p;
      if (eval_in(body, m) != universal) {
        result = !universal;
        break;
      }
    }
    if (saved) m.positions[v.name] = *saved;
    else m.positions.erase(v.name);
  } else {
    auto saved = m.sets.find(v.name) != m.sets.end()
                     ? std::optional<std::uint64_t>(m.sets[v.name])
                     : std::nullopt;
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t s = 0; s < count; ++s) {
      m.sets[v.name] = s;
      if (eval_in(body, m) != universal) {
        result = !universal;
        break;
      }
    }
    if (saved) m.sets[v.name] = *saved;
    else m.sets.erase(v.name);
  }
  return result;
}

bool eval_in(const Formula& f, Interpretation& m) {
  return std::visit(
      Overloaded{
          [&](const Atom& a) { return holds(a, m); },
          [&](const Not& n) { return !eval_in(n.operand, m); },
          [&](const And& n) { return eval_in(n.lhs, m) && eval_in(n.rhs, m); },
          [&](const Or& n) { return eval_in(n.lhs, m) || eval_in(n.rhs, m); },
          [&](const Implies& n) { return !eval_in(n.lhs, m) || eval_in(n.rhs, m); },
          [&](const Exists& n) { return quantify(n.var, n.body, m, false); },
          [&](const Forall& n) { return quantify(n.var, n.body, m, true); },
      },
      f.node());
}

void check_ranges(const Interpretation& m) {
  if (m.length > kMaxModelSize) {
    throw Error(ErrorCode::kInvalidArgument, "model too large to enumerate");
  }
  for (const auto& [name, p] : m.positions) {
    if (p >= m.length) {
      throw Error(ErrorCode::kInvalidArgument,
                  "position of '" + name + "' lies outside the model");
    }
  }
  const std::uint64_t mask =
      m.length == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.length) - 1;
  for (const auto& [name, s] : m.sets) {
    if ((s & ~mask) != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "set '" + name + "' lies outside the model");
    }
  }
}

// Odometer over the free variables; the first variable is most significant.
bool search(const std::vector<VarId>& vars, std::size_t i, const Formula& f,
            Interpretation& m) {
  if (i == vars.size()) return eval_in(f, m);
  const VarId& v = vars[i];
  if (v.kind == VarKind::kFirstOrder) {
    for (std::size_t p = 0; p < m.length; ++p) {
      m.positions[v.name] = p;
      if (search(vars, i + 1, f, m)) return true;
    }
    m.positions.erase(v.name);
  } else {
    const std::uint64_t count = std::uint64_t{1} << m.length;
    for (std::uint64_t s = 0; s < count; ++s) {
      m.sets[v.name] = s;
      if (search(vars, i + 1, f, m)) return true;
    }
    m.sets.erase(v.name);
  }
  return false;
}

}  // namespace

bool eval(const Formula& f, const Interpretation& model) {
  check_ranges(model);
  Interpretation m = model;
  return eval_in(f, m);
}

std::optional<Interpretation> sat_bounded(const Formula& f, std::size_t k_max) {
  const std::vector<VarId> vars = free_vars(f);
  std::size_t second_order = 0;
  for (const VarId& v : vars) second_order += v.kind == VarKind::kSecondOrder;
  const double configurations =
      static_cast<double>(k_max + 1) *
      std::pow(2.0, static_cast<double>(k_max * second_order));
  if (configurations > kEnumerationLimit || k_max > kMaxModelSize) {
    throw BudgetExceeded(ErrorCode::kEnumerationBudgetExceeded,
                         static_cast<std::size_t>(kEnumerationLimit),
                         "model enumeration");
  }
  for (std::size_t k = 0; k <= k_max; ++k) {
    Interpretation m;
    m.length = k;
    if (search(vars, 0, f, m)) return m;
  }
  return std::nullopt;
}

std::optional<Interpretation> decode(
    const std::vector<VarId>& vars,
    const std::vector<std::vector<std::uint8_t>>& word) {
  Interpretation m;
  m.length = word.size();
  if (m.length > kMaxModelSize) {
    throw Error(ErrorCode::kInvalidArgument, "word too long to decode");
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::uint64_t column = 0;
    std::size_t ones = 0;
    std::size_t last = 0;
    for (std::size_t p = 0; p < word.size(); ++p) {
      if (word[p].size() != vars.size()) {
        throw Error(ErrorCode::kArityMismatch, "symbol width differs from variables");
      }
      if (word[p][i]) {
        column |= std::uint64_t{1} << p;
        ++ones;
        last = p;
      }
    }
    if (vars[i].kind == VarKind::kFirstOrder) {
      if (ones != 1) return std::nullopt;
      m.positions[vars[i].name] = last;
    } else {
      m.sets[vars[i].name] = column;
    }
  }
  return m;
}

std::string to_string(const Interpretation& model) {
  std::ostringstream os;
  os << "k=" << model.length;
  for (const auto& [name, p] : model.positions) os << ' ' << name << '=' << p;
  for (const auto& [name, s] : model.sets) {
    os << ' ' << name << "={";
    bool first = true;
    for (std::size_t p = 0; p < model.length; ++p) {
      if ((s >> p) & 1U) {
        if (!first) os << ',';
        os << p;
        first = false;
      }
    }
    os << '}';
  }
  return os.str();
}

}  // namespace ws1s::oracle
