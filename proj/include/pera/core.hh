// Data model for parametric event-recording automata.
//
// A PERA owns one clock per action; every edge labelled with action `a`
// resets the clock of `a` and nothing else, so reset sets are never stored.
// Guards and invariants are conjunctions of atoms `clock REL rhs` where rhs
// is an integer constant or `param + offset`.

#ifndef PERA_CORE_HH
#define PERA_CORE_HH

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pera/rational.hh"

namespace pera {

enum class Relation { Less, LessEq, Equal, GreaterEq, Greater };

std::string_view to_string(Relation rel);

struct GuardAtom {
  std::string clock;
  Relation rel = Relation::LessEq;
  std::optional<std::string> param;
  std::int64_t offset = 0;

  bool parametric() const { return param.has_value(); }
  friend bool operator==(const GuardAtom&, const GuardAtom&) = default;
};

struct Guard {
  std::vector<GuardAtom> atoms;

  bool is_true() const { return atoms.empty(); }
  Guard operator&&(const Guard& other) const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

/// Parses `true` or atoms joined by `&&`; throws ParseError.
Guard parse_guard(std::string_view text);
std::string to_string(const GuardAtom& atom);
std::string to_string(const Guard& guard);

/// Ordered actions with their clocks; clocks[i] belongs to actions[i].
class ActionAlphabet {
 public:
  ActionAlphabet() = default;

  void add(std::string action, std::string clock);

  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<std::string>& clocks() const { return clocks_; }
  std::size_t size() const { return actions_.size(); }

  std::optional<std::size_t> action_index(std::string_view action) const;
  std::optional<std::size_t> clock_index(std::string_view clock) const;
  /// Clock reset by `action`; throws std::out_of_range for unknown actions.
  const std::string& clock_of(std::string_view action) const;

  friend bool operator==(const ActionAlphabet&, const ActionAlphabet&) = default;

 private:
  std::vector<std::string> actions_;
  std::vector<std::string> clocks_;
};

struct Location {
  std::string name;
  Guard invariant;
  friend bool operator==(const Location&, const Location&) = default;
};

struct Edge {
  std::string from;
  Guard guard;
  std::string action;
  std::string to;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Pera {
  ActionAlphabet alphabet;
  std::vector<Location> locations;
  std::string initial;
  std::vector<std::string> params;
  std::vector<Edge> edges;
  std::vector<std::string> accepting;

  const Location* find_location(std::string_view name) const;
  bool is_accepting(std::string_view name) const;
  friend bool operator==(const Pera&, const Pera&) = default;
};

using ParamValuation = std::map<std::string, Rational>;

class ValuationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Substitutes every parameter by its (integral) value. Atoms that become
/// unsatisfiable on non-negative clocks are reported through `warnings`.
Pera valuate(const Pera& automaton, const ParamValuation& valuation,
             std::vector<std::string>* warnings = nullptr);

struct Rescaled {
  Pera automaton;
  ParamValuation valuation;
  std::int64_t factor = 1;
};

/// Multiplies every constant and parameter value by the least common
/// denominator of the valuation, leaving untimed languages unchanged.
Rescaled rescale(const Pera& automaton, const ParamValuation& valuation);

struct Instantiated {
  Pera era;
  std::int64_t factor = 1;
  std::vector<std::string> warnings;
};

/// rescale followed by valuate; accepts rational valuations.
Instantiated instantiate(const Pera& automaton, const ParamValuation& valuation);

/// Structural problems of `automaton`; empty iff well-formed.
std::vector<std::string> validate(const Pera& automaton);

/// Largest absolute integer constant of a valuated automaton.
std::int64_t max_constant(const Pera& era);

/// Parses `NAME=VALUE` where VALUE is an integer or `A/B`.
std::pair<std::string, Rational> parse_assignment(std::string_view text);

}  // namespace pera

#endif  // PERA_CORE_HH
