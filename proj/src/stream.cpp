#include "ws1s/stream.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ws1s/error.hpp"

namespace ws1s {

const char* mode_name(Mode mode) {
  return mode == Mode::kIncremental ? "incremental" : "from_scratch";
}

double to_ms(Nanoseconds d) { return static_cast<double>(d.count()) / 1e6; }

std::string StepVerdict::witness_string() const {
  if (!sat || !witness) return "";
  if (witness->empty()) return "eps";
  std::ostringstream os;
  for (const Symbol& symbol : *witness) {
    os << '[';
    for (std::size_t i = 0; i < symbol.size(); ++i) {
      if (i) os << ',';
      os << (i < vars.size() ? vars[i].name : std::to_string(tracks[i].index))
         << '=' << static_cast<int>(symbol[i]);
    }
    os << ']';
  }
  return os.str();
}

namespace detail {

using NodeId = std::uint32_t;
using Tuple = std::vector<StateId>;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = t.size();
    for (StateId s : t) h = (h ^ s) * 0x100000001B3ULL;
    return h;
  }
};

struct Edge {
  Cube cube;
  NodeId target;
};

struct Node {
  Tuple states;
  std::vector<Edge> edges;
  bool expanded = false;
  std::uint32_t depth = 0;
  NodeId parent = kNoNode;
  std::uint32_t parent_edge = 0;
  NodeId origin = kNoNode;  // same prefix in the previous step's graph
};

class ProductGraph {
 public:
  std::vector<Node> nodes;
  std::unordered_map<Tuple, NodeId, TupleHash> index;
  std::size_t width = 0;

  NodeId find(const Tuple& t) const {
    auto it = index.find(t);
    return it == index.end() ? kNoNode : it->second;
  }
};

struct SearchOutcome {
  std::optional<Witness> witness;
  std::uint64_t created = 0;
  std::int64_t max_expanded_depth = -1;
};

// One breadth-first search over the product of `components`. When
// `previous` holds the graph for all but the last component, states it
// expanded are re-expanded by splitting their stored edges against the last
// component only, and states whose prefix it already held are extended in
// place rather than counted as new.
class ProductSearch {
 public:
  ProductSearch(const std::vector<const Dfa*>& components,
                const TrackSet& tracks, ProductGraph* previous,
                std::uint64_t budget_left, std::uint64_t budget_limit)
      : components_(components),
        width_(tracks.size()),
        previous_(previous),
        budget_left_(budget_left),
        budget_limit_(budget_limit) {
    rows_.resize(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const Dfa& d = *components_[i];
      const auto map = d.tracks().positions_in(tracks);
      rows_[i].resize(d.num_states());
      for (StateId s = 0; s < d.num_states(); ++s) {
        for (const Transition& t : d.transitions(s)) {
          if (d.is_dead(t.target)) continue;
          rows_[i][s].push_back(Transition{t.cube.widen(map, width_), t.target});
        }
      }
    }
    if (previous_) {
      if (previous_->width > width_) {
        throw Error(ErrorCode::kInternal, "product track set shrank");
      }
      claimed_.assign(previous_->nodes.size(), false);
      old_positions_.resize(previous_->width);
      for (std::size_t i = 0; i < old_positions_.size(); ++i) old_positions_[i] = i;
    }
  }

  SearchOutcome run(ProductGraph& out) {
    out.width = width_;
    graph_ = &out;
    SearchOutcome result;

    Tuple init;
    for (const Dfa* d : components_) {
      if (d->is_dead(d->initial())) return result;
      init.push_back(d->initial());
    }
    const NodeId root = create(std::move(init), kNoNode, 0, result);
    if (accepting(root)) {
      result.witness = Witness{};
      return result;
    }

    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      result.max_expanded_depth = std::max<std::int64_t>(
          result.max_expanded_depth, graph_->nodes[u].depth);
      std::optional<NodeId> goal = expand(u, queue, result);
      if (goal) {
        result.witness = reconstruct(*goal);
        return result;
      }
    }
    return result;
  }

 private:
  bool accepting(NodeId id) const {
    const Tuple& t = graph_->nodes[id].states;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (!components_[i]->is_accepting(t[i])) return false;
    }
    return true;
  }

  // `origin_hint` is the previous-graph node for the prefix when the caller
  // already knows it.
  NodeId create(Tuple states, NodeId parent, std::uint32_t parent_edge,
                SearchOutcome& result, NodeId origin_hint = kNoNode) {
    NodeId origin = origin_hint;
    bool fresh = true;
    if (previous_) {
      if (origin == kNoNode) {
        Tuple prefix(states.begin(), states.end() - 1);
        origin = previous_->find(prefix);
      }
      if (origin != kNoNode && !claimed_[origin]) {
        claimed_[origin] = true;
        fresh = false;
      }
    }
    if (fresh) {
      if (result.created >= budget_left_) {
        throw BudgetExceeded(ErrorCode::kStateBudgetExceeded,
                             static_cast<std::size_t>(budget_limit_),
                             "product exploration");
      }
      ++result.created;
    }
    const auto id = static_cast<NodeId>(graph_->nodes.size());
    Node node;
    node.states = states;
    node.origin = origin;
    node.parent = parent;
    node.parent_edge = parent_edge;
    node.depth = parent == kNoNode ? 0 : graph_->nodes[parent].depth + 1;
    graph_->nodes.push_back(std::move(node));
    graph_->index.emplace(std::move(states), id);
    return id;
  }

  struct Candidate {
    Cube cube;
    Tuple states;
    NodeId origin = kNoNode;
  };

  void replay(const Node& node, const Node& old,
              std::vector<Candidate>& out) const {
    const std::size_t last = components_.size() - 1;
    const auto& row = rows_[last][node.states.back()];
    for (const Edge& e : old.edges) {
      const Cube widened = previous_->width < width_ ? e.cube.widen(old_positions_, width_)
                                                     : e.cube;
      const Tuple& base = previous_->nodes[e.target].states;
      for (const Transition& t : row) {
        if (auto c = widened.intersect(t.cube)) {
          Tuple states = base;
          states.push_back(t.target);
          out.push_back(Candidate{std::move(*c), std::move(states), e.target});
        }
      }
    }
  }

  void combine(const Tuple& from, std::size_t i, const Cube& acc, Tuple& states,
               std::vector<Candidate>& out) const {
    if (i == components_.size()) {
      out.push_back(Candidate{acc, states});
      return;
    }
    for (const Transition& t : rows_[i][from[i]]) {
      if (auto c = acc.intersect(t.cube)) {
        states.push_back(t.target);
        combine(from, i + 1, *c, states, out);
        states.pop_back();
      }
    }
  }

  std::optional<NodeId> expand(NodeId u, std::deque<NodeId>& queue,
                               SearchOutcome& result) {
    std::vector<Candidate> candidates;
    {
      const Node& node = graph_->nodes[u];
      if (previous_ && node.origin != kNoNode &&
          previous_->nodes[node.origin].expanded) {
        replay(node, previous_->nodes[node.origin], candidates);
      } else {
        Tuple states;
        states.reserve(components_.size());
        combine(node.states, 0, Cube(width_), states, candidates);
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return cube_min_less(a.cube, b.cube);
              });

    std::optional<NodeId> goal;
    std::vector<Edge> edges;
    edges.reserve(candidates.size());
    for (Candidate& c : candidates) {
      NodeId v = graph_->find(c.states);
      if (v == kNoNode) {
        v = create(std::move(c.states), u, static_cast<std::uint32_t>(edges.size()),
                   result, c.origin);
        if (!goal && accepting(v)) goal = v;
        queue.push_back(v);
      }
      edges.push_back(Edge{std::move(c.cube), v});
    }
    Node& node = graph_->nodes[u];
    node.edges = std::move(edges);
    node.expanded = true;
    return goal;
  }

  Witness reconstruct(NodeId goal) const {
    Witness word;
    for (NodeId v = goal; graph_->nodes[v].parent != kNoNode;
         v = graph_->nodes[v].parent) {
      const Node& n = graph_->nodes[v];
      word.push_back(graph_->nodes[n.parent].edges[n.parent_edge].cube.min_symbol());
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  std::vector<const Dfa*> components_;
  std::size_t width_;
  ProductGraph* previous_;
  std::uint64_t budget_left_;
  std::uint64_t budget_limit_;
  std::vector<std::vector<std::vector<Transition>>> rows_;
  std::vector<bool> claimed_;
  std::vector<std::size_t> old_positions_;
  ProductGraph* graph_ = nullptr;
};

}  // namespace detail

namespace {

using Clock = std::chrono::steady_clock;

CompileOptions compile_options(const SessionConfig& config) {
  CompileOptions options;
  options.memo = config.memo;
  options.semantics = config.semantics;
  options.subset_budget = config.subset_budget;
  return options;
}

// A name keeps one kind for the whole stream, bound occurrences included.
void record_kind(const VarId& v, KindTable& kinds) {
  auto [it, inserted] = kinds.emplace(v.name, v.kind);
  if (!inserted && it->second != v.kind) {
    throw Error(ErrorCode::kKind, "'" + v.name + "' was used as " +
                                      (it->second == VarKind::kFirstOrder ? "first" : "second") +
                                      "-order earlier in the stream");
  }
}

void record_kinds(const Formula& f, KindTable& kinds) {
  if (const auto* a = f.as<Atom>()) {
    record_kind(a->lhs, kinds);
    return record_kind(a->rhs, kinds);
  }
  if (const auto* n = f.as<Not>()) return record_kinds(n->operand, kinds);
  if (const auto* n = f.as<And>()) {
    record_kinds(n->lhs, kinds);
    return record_kinds(n->rhs, kinds);
  }
  if (const auto* n = f.as<Or>()) {
    record_kinds(n->lhs, kinds);
    return record_kinds(n->rhs, kinds);
  }
  if (const auto* n = f.as<Implies>()) {
    record_kinds(n->lhs, kinds);
    return record_kinds(n->rhs, kinds);
  }
  if (const auto* n = f.as<Exists>()) {
    record_kind(n->var, kinds);
    return record_kinds(n->body, kinds);
  }
  if (const auto* n = f.as<Forall>()) {
    record_kind(n->var, kinds);
    return record_kinds(n->body, kinds);
  }
}

TrackSet union_tracks(const std::vector<Dfa>& components) {
  TrackSet tracks;
  for (const Dfa& d : components) tracks = tracks.unite(d.tracks());
  return tracks;
}

StepVerdict make_verdict(std::size_t step, const TrackSet& tracks,
                         const TrackRegistry& registry,
                         std::optional<Witness> witness) {
  StepVerdict v;
  v.step = step;
  v.sat = witness.has_value();
  v.witness = std::move(witness);
  v.tracks = tracks;
  for (const Track& t : tracks) v.vars.push_back(registry.var_of(t.index));
  return v;
}

void check_budget(const SessionConfig& config) {
  if (config.state_budget == 0 || config.subset_budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "budgets must be positive");
  }
}

}  // namespace

StreamSession::StreamSession(SessionConfig config)
    : config_(config), graph_(std::make_unique<detail::ProductGraph>()) {
  check_budget(config_);
  verdict_.witness = Witness{};
}

StreamSession::~StreamSession() = default;
StreamSession::StreamSession(StreamSession&&) noexcept = default;
StreamSession& StreamSession::operator=(StreamSession&&) noexcept = default;

std::size_t StreamSession::retained_states() const {
  return graph_->nodes.size();
}

StepReport StreamSession::push(const Formula& f) {
  const auto t0 = Clock::now();
  validate(f, ParseOptions{config_.allow_free_vars});
  KindTable kinds = kinds_;
  record_kinds(f, kinds);
  TrackRegistry registry = registry_;
  registry.register_free_vars(f);
  Dfa component = Compiler(registry, config_.memo ? &cache_ : nullptr,
                           compile_options(config_))
                      .compile(f);
  const auto t1 = Clock::now();

  TrackSet tracks = tracks_.unite(component.tracks());
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (!(tracks[i] == tracks_[i])) {
      throw Error(ErrorCode::kInternal, "new tracks must follow existing ones");
    }
  }

  const std::size_t step = components_.size() + 1;
  auto graph = std::make_unique<detail::ProductGraph>();
  detail::SearchOutcome outcome;
  const bool short_circuit = !verdict_.sat;
  if (!short_circuit) {
    std::vector<const Dfa*> all;
    for (const Dfa& d : components_) all.push_back(&d);
    all.push_back(&component);
    const std::uint64_t left =
        config_.state_budget > explored_total_ ? config_.state_budget - explored_total_ : 0;
    detail::ProductSearch search(all, tracks, components_.empty() ? nullptr : graph_.get(),
                                 left, config_.state_budget);
    outcome = search.run(*graph);
  }
  const auto t2 = Clock::now();

  components_.push_back(std::move(component));
  tracks_ = std::move(tracks);
  registry_ = std::move(registry);
  kinds_ = std::move(kinds);
  if (!short_circuit) graph_ = std::move(graph);
  explored_total_ += outcome.created;
  verdict_ = make_verdict(step, tracks_, registry_,
                          short_circuit ? std::nullopt : std::move(outcome.witness));

  StepReport report;
  report.step = step;
  report.mode = Mode::kIncremental;
  report.compile_time = std::chrono::duration_cast<Nanoseconds>(t1 - t0);
  report.process_time = std::chrono::duration_cast<Nanoseconds>(t2 - t1);
  report.explored_step = outcome.created;
  report.explored_total = explored_total_;
  report.max_expanded_depth = outcome.max_expanded_depth;
  report.verdict = verdict_;
  reports_.push_back(report);
  return report;
}

FromScratchSession::FromScratchSession(SessionConfig config)
    : config_(std::move(config)) {
  check_budget(config_);
  verdict_.witness = Witness{};
}

StepReport FromScratchSession::push(const Formula& f) {
  validate(f, ParseOptions{config_.allow_free_vars});
  KindTable kinds = kinds_;
  record_kinds(f, kinds);
  const std::size_t n = formulas_.size() + 1;
  const auto t0 = Clock::now();
  TrackRegistry registry;
  MemoCache cache;
  std::vector<Dfa> components;
  for (std::size_t i = 0; i < n; ++i) {
    const Formula& g = i < formulas_.size() ? formulas_[i] : f;
    registry.register_free_vars(g);
    components.push_back(
        Compiler(registry, config_.memo ? &cache : nullptr, compile_options(config_))
            .compile(g));
  }
  const auto t1 = Clock::now();

  const TrackSet tracks = union_tracks(components);
  std::vector<const Dfa*> all;
  for (const Dfa& d : components) all.push_back(&d);
  detail::ProductGraph graph;
  const std::uint64_t left =
      config_.state_budget > explored_total_ ? config_.state_budget - explored_total_ : 0;
  detail::SearchOutcome outcome =
      detail::ProductSearch(all, tracks, nullptr, left, config_.state_budget).run(graph);
  const auto t2 = Clock::now();

  StepReport report;
  report.step = n;
  report.mode = Mode::kFromScratch;
  report.compile_time = std::chrono::duration_cast<Nanoseconds>(t1 - t0);
  report.process_time = std::chrono::duration_cast<Nanoseconds>(t2 - t1);
  report.explored_step = outcome.created;
  report.explored_total = explored_total_ + outcome.created;
  report.max_expanded_depth = outcome.max_expanded_depth;
  report.verdict = make_verdict(n, tracks, registry, std::move(outcome.witness));

  formulas_.push_back(f);
  kinds_ = std::move(kinds);
  explored_total_ = report.explored_total;
  verdict_ = report.verdict;
  reports_.push_back(report);
  return report;
}

FromScratchResult from_scratch_check(std::span<const Formula> formulas,
                                     const SessionConfig& config) {
  FromScratchSession session(config);
  for (const Formula& f : formulas) session.push(f);
  return FromScratchResult{session.verdict(), session.reports()};
}

SessionStats session_stats(std::span<const StepReport> reports) {
  SessionStats stats;
  Nanoseconds running{0};
  Nanoseconds processing{0};
  for (const StepReport& r : reports) {
    running += r.compile_time + r.process_time;
    processing += r.process_time;
    stats.steps.push_back(StepCost{r.step, r.compile_time, r.process_time, running,
                                   r.explored_step, r.explored_total});
    stats.explored_total = r.explored_total;
  }
  stats.measured_total = running;
  stats.incremental_estimate =
      (reports.empty() ? Nanoseconds{0} : reports.front().compile_time) + processing;
  return stats;
}

}  // namespace ws1s
