// Deterministic two-counter (Minsky) machines and their interpreter.
//
// Source format, line oriented, `#` starts a comment:
//   init: STATE
//   halt: STATE
//   STATE: inc cK goto STATE
//   STATE: ifz cK goto STATE else dec goto STATE

#ifndef PERA_MINSKY_HH
#define PERA_MINSKY_HH

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pera/rational.hh"

namespace pera {

struct Increment {
  int counter;  // 1 or 2
  std::string next;
};

struct TestDecrement {
  int counter;
  std::string if_zero;
  std::string if_positive;  // taken after decrementing
};

using Instruction = std::variant<Increment, TestDecrement>;

struct TwoCounterMachine {
  std::vector<std::string> states;  // initial first, then in order of appearance
  std::string initial;
  std::string halt;
  std::map<std::string, Instruction> program;

  const Instruction* instruction(const std::string& state) const;
};

struct McConfig {
  std::string state;
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;

  std::uint64_t counter(int k) const { return k == 1 ? c1 : c2; }
  friend bool operator==(const McConfig&, const McConfig&) = default;
};

/// Throws ParseError carrying the offending line number.
TwoCounterMachine parse_2cm(std::string_view text);
TwoCounterMachine load_2cm(const std::string& path);

/// Successor configuration, or nullopt once `cfg` sits in the halt state.
std::optional<McConfig> step(const TwoCounterMachine& m, const McConfig& cfg);

struct McRun {
  std::vector<McConfig> trace;
  bool halted = false;
  std::size_t steps = 0;
};

/// Runs from (initial, 0, 0) for at most `max_steps` steps.
McRun run(const TwoCounterMachine& m, std::size_t max_steps);

std::string to_string(const McConfig& cfg);

}  // namespace pera

#endif  // PERA_MINSKY_HH
