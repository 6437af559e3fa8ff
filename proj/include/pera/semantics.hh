// Symbolic and concrete semantics of a valuated event-recording automaton.

#ifndef PERA_SEMANTICS_HH
#define PERA_SEMANTICS_HH

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pera/core.hh"
#include "pera/zones.hh"

namespace pera {

/// A valuated PERA with guards and invariants compiled to zones.
class Era {
 public:
  struct CompiledEdge {
    std::size_t index;   // position in automaton().edges
    std::size_t from;
    std::size_t to;
    std::size_t action;
    std::size_t reset;   // Dbm row of the action's clock
    Dbm guard;
    /// Valuations whose reset image satisfies the target invariant.
    Dbm reset_feasible;
  };

  /// Throws std::invalid_argument when `valuated` is malformed or parametric.
  explicit Era(Pera valuated);

  const Pera& automaton() const { return automaton_; }
  const ActionAlphabet& alphabet() const { return automaton_.alphabet; }
  std::size_t clocks() const { return automaton_.alphabet.size(); }
  std::size_t locations() const { return automaton_.locations.size(); }
  std::size_t initial() const { return initial_; }
  std::size_t location_index(std::string_view name) const;
  const std::string& location_name(std::size_t loc) const { return automaton_.locations[loc].name; }
  bool accepting(std::size_t loc) const { return accepting_[loc]; }
  const Dbm& invariant(std::size_t loc) const { return invariants_[loc]; }
  const std::vector<CompiledEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& outgoing(std::size_t loc) const { return outgoing_[loc]; }
  /// Valuations at `loc` that can delay inside the invariant and then fire some edge.
  const Federation& enabling(std::size_t loc) const { return enabling_[loc]; }
  std::int64_t max_constant() const { return max_constant_; }

 private:
  Pera automaton_;
  std::size_t initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<Dbm> invariants_;
  std::vector<CompiledEdge> edges_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<Federation> enabling_;
  std::int64_t max_constant_ = 0;
};

struct SymbolicState {
  std::size_t location;
  Dbm zone;
};

class SemanticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws SemanticsError when the origin violates the initial invariant.
SymbolicState initial_symbolic(const Era& era);
/// Empty optional when the edge cannot fire from any point of `s`.
std::optional<SymbolicState> discrete_successor(const Era& era, const SymbolicState& s, std::size_t edge);
/// Points of s.zone from which no delay-then-discrete step exists.
Federation blocking_subset(const Era& era, const SymbolicState& s);

struct ExplorationConfig {
  std::optional<int> depth;                  // discrete steps; none = fixpoint
  std::optional<std::int64_t> max_constant;  // defaults to the automaton's
  bool extrapolate = true;
  std::size_t node_limit = 200000;
};

struct ZoneNode {
  std::size_t location;
  Dbm zone;
  bool blocking;
  int depth;
};

struct ZoneArc {
  std::size_t edge;
  std::size_t action;
  std::size_t target;
};

struct ZoneGraph {
  std::vector<ZoneNode> nodes;
  std::vector<std::vector<ZoneArc>> arcs;
  /// False when the depth bound cut exploration short.
  bool complete = true;

  std::string to_dot(const Era& era) const;
};

/// Breadth-first exploration; node 0 is the initial state. Throws
/// ResourceExhausted past cfg.node_limit nodes.
ZoneGraph zone_graph(const Era& era, const ExplorationConfig& cfg);

struct ScriptStep {
  Rational delay;
  std::size_t edge;
};

struct ConcreteState {
  std::size_t location;
  ClockValuation clocks;
  Rational time;
};

struct Run {
  std::vector<ConcreteState> states;  // states.size() == steps.size() + 1
  std::vector<ScriptStep> steps;

  std::vector<std::pair<std::string, Rational>> timed_word(const Era& era) const;
  std::vector<std::string> untimed_word(const Era& era) const;
};

class SimulationError : public std::runtime_error {
 public:
  enum class Reason { NegativeDelay, UnknownEdge, WrongSource, InvariantViolated, GuardUnsatisfied, TargetInvariant };

  SimulationError(std::size_t step, Reason reason, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step), reason_(reason) {}

  std::size_t step() const { return step_; }
  Reason reason() const { return reason_; }

 private:
  std::size_t step_;
  Reason reason_;
};

/// Replays `script` from the initial state; throws SimulationError at the
/// first step that is not a legal delay-then-edge move.
Run concrete_simulate(const Era& era, const std::vector<ScriptStep>& script);

/// A concrete script realising the edge sequence `path` from the initial
/// state, or nullopt when the path is infeasible.
std::optional<std::vector<ScriptStep>> witness_script(const Era& era, const std::vector<std::size_t>& path);

}  // namespace pera

#endif  // PERA_SEMANTICS_HH
