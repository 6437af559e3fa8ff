#include "pera/semantics.hh"

#include <deque>
#include <sstream>
#include <unordered_map>

namespace pera {

namespace {

bool holds_at_zero(const GuardAtom& atom)
{
  const std::int64_t c = atom.offset;
  switch (atom.rel) {
  case Relation::Less: return 0 < c;
  case Relation::LessEq: return 0 <= c;
  case Relation::Equal: return 0 == c;
  case Relation::GreaterEq: return 0 >= c;
  case Relation::Greater: return 0 > c;
  }
  return false;
}

/// {w | w[clock := 0] satisfies invariant}
Dbm reset_preimage(const Guard& invariant, const std::string& clock, const ActionAlphabet& alphabet)
{
  Guard rest;
  for (const auto& atom : invariant.atoms) {
    if (atom.clock != clock)
      rest.atoms.push_back(atom);
    else if (!holds_at_zero(atom))
      return Dbm::empty(alphabet.size());
  }
  return intersect(Dbm(alphabet.size()), rest, alphabet);
}

/// Interval of rationals with optional strict endpoints; lower end starts at 0.
class Interval {
 public:
  void at_least(const Rational& v, bool strict)
  {
    if (v > lo_ || (v == lo_ && strict)) {
      lo_strict_ = v == lo_ ? (lo_strict_ || strict) : strict;
      lo_ = v;
    }
  }

  void at_most(const Rational& v, bool strict)
  {
    if (!hi_finite_ || v < hi_ || (v == hi_ && strict)) {
      hi_strict_ = (hi_finite_ && v == hi_) ? (hi_strict_ || strict) : strict;
      hi_ = v;
      hi_finite_ = true;
    }
  }

  std::optional<Rational> pick() const
  {
    if (!hi_finite_)
      return lo_strict_ ? lo_ + 1 : lo_;
    if (lo_ > hi_ || (lo_ == hi_ && (lo_strict_ || hi_strict_)))
      return std::nullopt;
    if (!lo_strict_)
      return lo_;
    if (!hi_strict_)
      return hi_;
    return (lo_ + hi_) / 2;
  }

 private:
  Rational lo_{0}, hi_{0};
  bool lo_strict_ = false, hi_strict_ = false, hi_finite_ = false;
};

struct NodeKey {
  std::size_t location;
  Dbm zone;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& key) const { return key.zone.hash() * 31u + key.location; }
};

}  // namespace

Era::Era(Pera valuated) : automaton_(std::move(valuated))
{
  if (!automaton_.params.empty())
    throw std::invalid_argument("automaton still declares parameters; valuate first");
  if (auto issues = validate(automaton_); !issues.empty())
    throw std::invalid_argument("malformed automaton: " + issues.front());

  const auto& alphabet = automaton_.alphabet;
  const std::size_t n = alphabet.size();
  for (const auto& loc : automaton_.locations) {
    invariants_.push_back(intersect(Dbm(n), loc.invariant, alphabet));
    accepting_.push_back(automaton_.is_accepting(loc.name));
  }
  initial_ = location_index(automaton_.initial);
  outgoing_.resize(locations());

  for (std::size_t i = 0; i < automaton_.edges.size(); ++i) {
    const auto& edge = automaton_.edges[i];
    CompiledEdge compiled{i,
                          location_index(edge.from),
                          location_index(edge.to),
                          *alphabet.action_index(edge.action),
                          *alphabet.clock_index(alphabet.clock_of(edge.action)) + 1,
                          intersect(Dbm(n), edge.guard, alphabet),
                          Dbm(n)};
    compiled.reset_feasible =
        reset_preimage(automaton_.locations[compiled.to].invariant, alphabet.clock_of(edge.action), alphabet);
    outgoing_[compiled.from].push_back(edges_.size());
    edges_.push_back(std::move(compiled));
  }

  for (std::size_t loc = 0; loc < locations(); ++loc) {
    Federation fed(n);
    for (std::size_t e : outgoing_[loc]) {
      const auto& edge = edges_[e];
      Dbm fireable = intersect(intersect(invariants_[loc], edge.guard), edge.reset_feasible);
      if (!fireable.is_empty())
        fed.add(time_pred(fireable, invariants_[loc]));
    }
    enabling_.push_back(std::move(fed));
  }
  max_constant_ = pera::max_constant(automaton_);
}

std::size_t Era::location_index(std::string_view name) const
{
  for (std::size_t i = 0; i < automaton_.locations.size(); ++i)
    if (automaton_.locations[i].name == name)
      return i;
  throw std::out_of_range("unknown location '" + std::string(name) + "'");
}

SymbolicState initial_symbolic(const Era& era)
{
  Dbm zone = intersect(Dbm::zero(era.clocks()), era.invariant(era.initial()));
  if (zone.is_empty())
    throw SemanticsError("the initial invariant excludes the origin");
  return {era.initial(), std::move(zone)};
}

std::optional<SymbolicState> discrete_successor(const Era& era, const SymbolicState& s, std::size_t edge)
{
  const auto& e = era.edges().at(edge);
  if (e.from != s.location)
    throw std::invalid_argument("edge does not leave the state's location");
  Dbm fired = intersect(intersect(up(s.zone), era.invariant(e.from)), e.guard);
  if (fired.is_empty())
    return std::nullopt;
  Dbm next = intersect(reset(fired, e.reset), era.invariant(e.to));
  if (next.is_empty())
    return std::nullopt;
  return SymbolicState{e.to, std::move(next)};
}

Federation blocking_subset(const Era& era, const SymbolicState& s)
{
  return subtract(Federation(s.zone), era.enabling(s.location));
}

ZoneGraph zone_graph(const Era& era, const ExplorationConfig& cfg)
{
  const std::int64_t bound = cfg.max_constant.value_or(era.max_constant());
  if (bound < era.max_constant())
    throw std::invalid_argument("maximal constant " + std::to_string(bound) + " is below the automaton's " +
                                std::to_string(era.max_constant()));

  auto normalize = [&](SymbolicState s) {
    if (cfg.extrapolate)
      s.zone = intersect(extrapolate(s.zone, bound), era.invariant(s.location));
    return s;
  };

  ZoneGraph graph;
  std::unordered_map<NodeKey, std::size_t, NodeKeyHash> index;
  std::deque<std::size_t> frontier;

  auto insert = [&](SymbolicState s, int depth) {
    NodeKey key{s.location, s.zone};
    if (auto it = index.find(key); it != index.end())
      return it->second;
    if (graph.nodes.size() >= cfg.node_limit)
      throw ResourceExhausted("zone graph exceeds " + std::to_string(cfg.node_limit) + " nodes");
    bool blocking = !blocking_subset(era, s).is_empty();
    std::size_t id = graph.nodes.size();
    graph.nodes.push_back({s.location, std::move(s.zone), blocking, depth});
    graph.arcs.emplace_back();
    index.emplace(std::move(key), id);
    frontier.push_back(id);
    return id;
  };

  insert(normalize(initial_symbolic(era)), 0);
  while (!frontier.empty()) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    SymbolicState s{graph.nodes[id].location, graph.nodes[id].zone};
    const int depth = graph.nodes[id].depth;
    for (std::size_t e : era.outgoing(s.location)) {
      auto next = discrete_successor(era, s, e);
      if (!next)
        continue;
      if (cfg.depth && depth >= *cfg.depth) {
        graph.complete = false;
        break;
      }
      std::size_t target = insert(normalize(std::move(*next)), depth + 1);
      graph.arcs[id].push_back({e, era.edges()[e].action, target});
    }
  }
  return graph;
}

std::string ZoneGraph::to_dot(const Era& era) const
{
  std::ostringstream out;
  out << "digraph zone_graph {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    std::string zone = to_string(node.zone, era.alphabet().clocks());
    std::string label;
    for (char c : zone)
      label += c == '\n' ? std::string("\\l") : std::string(1, c);
    out << "  n" << i << " [label=\"" << i << ": " << era.location_name(node.location) << "\\l" << label
        << "\", blocking=" << (node.blocking ? "true" : "false") << (node.blocking ? ", shape=box" : "") << "];\n";
  }
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (const auto& arc : arcs[i])
      out << "  n" << i << " -> n" << arc.target << " [label=\"" << era.alphabet().actions()[arc.action]
          << "\"];\n";
  out << "}\n";
  return out.str();
}

std::vector<std::pair<std::string, Rational>> Run::timed_word(const Era& era) const
{
  std::vector<std::pair<std::string, Rational>> word;
  for (std::size_t i = 0; i < steps.size(); ++i)
    word.emplace_back(era.automaton().edges[steps[i].edge].action, states[i + 1].time);
  return word;
}

std::vector<std::string> Run::untimed_word(const Era& era) const
{
  std::vector<std::string> word;
  for (const auto& step : steps)
    word.push_back(era.automaton().edges[step.edge].action);
  return word;
}

Run concrete_simulate(const Era& era, const std::vector<ScriptStep>& script)
{
  using Reason = SimulationError::Reason;
  Run run;
  ConcreteState state{era.initial(), ClockValuation(era.clocks() + 1, Rational(0)), Rational(0)};
  if (!contains(era.invariant(state.location), state.clocks))
    throw SimulationError(0, Reason::InvariantViolated, "the initial invariant excludes the origin");
  run.states.push_back(state);

  for (std::size_t i = 0; i < script.size(); ++i) {
    const auto& step = script[i];
    if (step.delay < 0)
      throw SimulationError(i, Reason::NegativeDelay, "negative delay");
    if (step.edge >= era.edges().size())
      throw SimulationError(i, Reason::UnknownEdge, "unknown edge #" + std::to_string(step.edge));
    const auto& edge = era.edges()[step.edge];
    if (edge.from != state.location)
      throw SimulationError(i, Reason::WrongSource,
                            "edge #" + std::to_string(step.edge) + " does not leave " + era.location_name(state.location));

    ClockValuation delayed = state.clocks;
    for (std::size_t c = 1; c < delayed.size(); ++c)
      delayed[c] += step.delay;
    // Invariants are convex, so checking both ends covers the whole delay.
    if (!contains(era.invariant(state.location), delayed))
      throw SimulationError(i, Reason::InvariantViolated,
                            "invariant of " + era.location_name(state.location) + " violated during delay");
    if (!contains(edge.guard, delayed))
      throw SimulationError(i, Reason::GuardUnsatisfied,
                            "guard of edge #" + std::to_string(step.edge) + " unsatisfied");
    delayed[edge.reset] = 0;
    if (!contains(era.invariant(edge.to), delayed))
      throw SimulationError(i, Reason::TargetInvariant, "invariant of " + era.location_name(edge.to) + " violated");

    state = {edge.to, std::move(delayed), state.time + step.delay};
    run.steps.push_back(step);
    run.states.push_back(state);
  }
  return run;
}

std::optional<std::vector<ScriptStep>> witness_script(const Era& era, const std::vector<std::size_t>& path)
{
  std::vector<SymbolicState> forward{initial_symbolic(era)};
  for (std::size_t e : path) {
    if (era.edges().at(e).from != forward.back().location)
      return std::nullopt;
    auto next = discrete_successor(era, forward.back(), e);
    if (!next)
      return std::nullopt;
    forward.push_back(std::move(*next));
  }

  auto point = pick_point(forward.back().zone);
  if (!point)
    return std::nullopt;
  ClockValuation target = std::move(*point);
  std::vector<ScriptStep> script(path.size());

  for (std::size_t i = path.size(); i-- > 0;) {
    const auto& edge = era.edges()[path[i]];
    const SymbolicState& source = forward[i];
    Dbm fired = intersect(intersect(up(source.zone), era.invariant(edge.from)), edge.guard);

    // The reset clock is the only coordinate not pinned down by `target`.
    std::vector<bool> known(fired.dim(), true);
    known[edge.reset] = false;
    ClockValuation before_reset = target;
    auto value = pick_coordinate(fired, before_reset, edge.reset, known);
    if (!value)
      return std::nullopt;
    before_reset[edge.reset] = *value;
    if (!contains(fired, before_reset))
      return std::nullopt;

    Interval delay;
    for (std::size_t j = 1; j < source.zone.dim(); ++j) {
      if (Bound b = source.zone(j, 0); !b.is_infinite())
        delay.at_least(before_reset[j] - b.value(), b.strict());
      if (Bound b = source.zone(0, j); !b.is_infinite())
        delay.at_most(before_reset[j] + b.value(), b.strict());
    }
    auto d = delay.pick();
    if (!d)
      return std::nullopt;
    ClockValuation start = before_reset;
    for (std::size_t j = 1; j < start.size(); ++j)
      start[j] -= *d;
    if (!contains(source.zone, start))
      return std::nullopt;
    script[i] = {*d, path[i]};
    target = std::move(start);
  }
  return script;
}

}  // namespace pera
