// Two-counter machine to PERA reduction.
//
// Each machine state s yields a main location l_s and an intermediary
// location lbar_s. The tick clock t is reset every p time units, and at
// every tick x1, x2 hold the counter values while z holds the number of
// simulated steps. The wrapper, sink and language-variant constructions are
// layered on top of the core gadget.

#ifndef PERA_ENCODER_HH
#define PERA_ENCODER_HH

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pera/core.hh"
#include "pera/minsky.hh"
#include "pera/semantics.hh"

namespace pera {

namespace naming {
inline constexpr std::string_view kParam = "p";
inline constexpr std::string_view kTick = "a_t";
inline constexpr std::string_view kCounter1 = "a_1";
inline constexpr std::string_view kCounter2 = "a_2";
inline constexpr std::string_view kStep = "a_z";
inline constexpr std::string_view kFresh = "a_3";
inline constexpr std::string_view kTickClock = "t";
inline constexpr std::string_view kCounter1Clock = "x1";
inline constexpr std::string_view kCounter2Clock = "x2";
inline constexpr std::string_view kStepClock = "z";
inline constexpr std::string_view kFreshClock = "x_a3";
inline constexpr std::string_view kStart = "l_start";
inline constexpr std::string_view kAcc1 = "l_acc1";
inline constexpr std::string_view kAcc2 = "l_acc2";
inline constexpr std::string_view kSink = "l_sink";

std::string main_location(std::string_view state);
std::string intermediary_location(std::string_view state);
/// Action owning counter k's clock.
std::string_view counter_action(int k);
}  // namespace naming

class EncoderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Encoding {
  Pera automaton;
  std::vector<std::string> main_locations;          // in machine state order
  std::vector<std::string> intermediary_locations;  // in machine state order
  std::string machine_initial;                      // l_0
  std::string machine_halt;                         // l_halt
  bool wrapped = false;
  bool has_sink = false;
  bool has_fresh_action = false;
};

Encoding encode_core(const TwoCounterMachine& m);
Encoding wrap_preservation(Encoding gadget);
Encoding add_sink(Encoding gadget);
Encoding buchi_variant(Encoding automaton);
Encoding safety_variant(Encoding automaton);

enum class Variant { Plain, Wrapped, Sink, Buchi, Safety };

Variant parse_variant(std::string_view text);
std::string_view to_string(Variant variant);
Encoding encode(const TwoCounterMachine& m, Variant variant);

struct Schedule {
  std::vector<ScriptStep> script;
  std::size_t machine_steps = 0;  // instructions simulated
};

/// The deterministic schedule that simulates min(p-1, halting time) steps of
/// `m` on `era` = encoding valuated at the integer p, ending at the tick that
/// follows the last simulated step. Throws EncoderError when the encoding
/// leaves no legal continuation.
Schedule simulation_schedule(const TwoCounterMachine& m, const Encoding& encoding, const Era& era, std::int64_t p);

}  // namespace pera

#endif  // PERA_ENCODER_HH
