#include "pera/encoder.hh"

#include <algorithm>
#include <array>

namespace pera {

namespace naming {

std::string main_location(std::string_view state) { return "l_" + std::string(state); }
std::string intermediary_location(std::string_view state) { return "lbar_" + std::string(state); }

std::string_view counter_action(int k) { return k == 1 ? kCounter1 : kCounter2; }

}  // namespace naming

namespace {

using namespace naming;

const std::array<std::string_view, 4> kSigma{kTick, kCounter1, kCounter2, kStep};

GuardAtom constant_atom(std::string_view clock, Relation rel, std::int64_t c)
{
  return {std::string(clock), rel, std::nullopt, c};
}

GuardAtom param_atom(std::string_view clock, Relation rel, std::int64_t offset = 0)
{
  return {std::string(clock), rel, std::string(kParam), offset};
}

std::string_view counter_clock(int k) { return k == 1 ? kCounter1Clock : kCounter2Clock; }

void add_location(Pera& a, std::string name, Guard invariant = {})
{
  a.locations.push_back({std::move(name), std::move(invariant)});
}

void add_edge(Pera& a, std::string from, Guard guard, std::string_view action, std::string to)
{
  a.edges.push_back({std::move(from), std::move(guard), std::string(action), std::move(to)});
}

}  // namespace

Encoding encode_core(const TwoCounterMachine& m)
{
  for (const auto& state : m.states)
    for (auto reserved : {kStart, kAcc1, kAcc2, kSink})
      if (main_location(state) == reserved)
        throw EncoderError("machine state '" + state + "' clashes with reserved location '" + std::string(reserved) + "'");

  Encoding enc;
  Pera& a = enc.automaton;
  a.alphabet.add(std::string(kTick), std::string(kTickClock));
  a.alphabet.add(std::string(kCounter1), std::string(kCounter1Clock));
  a.alphabet.add(std::string(kCounter2), std::string(kCounter2Clock));
  a.alphabet.add(std::string(kStep), std::string(kStepClock));
  a.params = {std::string(kParam)};

  Guard invariant;
  for (auto clock : {kTickClock, kCounter1Clock, kCounter2Clock, kStepClock})
    invariant.atoms.push_back(param_atom(clock, Relation::LessEq));

  for (const auto& state : m.states) {
    enc.main_locations.push_back(main_location(state));
    enc.intermediary_locations.push_back(intermediary_location(state));
  }
  for (const auto& name : enc.main_locations)
    add_location(a, name, invariant);
  for (const auto& name : enc.intermediary_locations)
    add_location(a, name, invariant);
  enc.machine_initial = main_location(m.initial);
  enc.machine_halt = main_location(m.halt);
  a.initial = enc.machine_initial;

  // Ticks: each of t, x1, x2 is reset by its own action when it reaches p.
  for (const auto& loc : a.locations) {
    add_edge(a, loc.name, Guard{{param_atom(kTickClock, Relation::Equal)}}, kTick, loc.name);
    add_edge(a, loc.name, Guard{{param_atom(kCounter1Clock, Relation::Equal)}}, kCounter1, loc.name);
    add_edge(a, loc.name, Guard{{param_atom(kCounter2Clock, Relation::Equal)}}, kCounter2, loc.name);
  }

  for (const auto& state : m.states) {
    const Instruction* instr = m.instruction(state);
    if (!instr)
      continue;
    const std::string from = main_location(state);
    if (const auto* inc = std::get_if<Increment>(instr)) {
      add_edge(a, from, Guard{{param_atom(counter_clock(inc->counter), Relation::Equal, -1)}},
               counter_action(inc->counter), intermediary_location(inc->next));
    } else {
      const auto& test = std::get<TestDecrement>(*instr);
      const auto clock = counter_clock(test.counter);
      add_edge(a, from,
               Guard{{constant_atom(kTickClock, Relation::Equal, 0), constant_atom(clock, Relation::Equal, 0)}}, kTick,
               intermediary_location(test.if_zero));
      // t != 1 is split into t < 1 and t > 1.
      add_edge(a, from,
               Guard{{constant_atom(kTickClock, Relation::Less, 1), constant_atom(clock, Relation::Equal, 1)}},
               counter_action(test.counter), intermediary_location(test.if_positive));
      add_edge(a, from,
               Guard{{constant_atom(kTickClock, Relation::Greater, 1), constant_atom(clock, Relation::Equal, 1)}},
               counter_action(test.counter), intermediary_location(test.if_positive));
    }
  }

  for (const auto& state : m.states)
    add_edge(a, intermediary_location(state),
             Guard{{param_atom(kStepClock, Relation::Equal, -1), constant_atom(kTickClock, Relation::Greater, 0),
                    param_atom(kTickClock, Relation::Less)}},
             kStep, main_location(state));
  return enc;
}

Encoding wrap_preservation(Encoding gadget)
{
  Pera& a = gadget.automaton;
  if (gadget.wrapped)
    throw EncoderError("automaton is already wrapped");
  if (!a.find_location(gadget.machine_halt) || !a.find_location(gadget.machine_initial))
    throw EncoderError("gadget lacks its halt location '" + gadget.machine_halt + "'");

  a.locations.insert(a.locations.begin(), Location{std::string(kStart), {}});
  add_location(a, std::string(kAcc1));
  add_location(a, std::string(kAcc2));
  a.initial = std::string(kStart);

  auto sigma_group = [&](const std::string& from, const std::string& to, auto guard_for) {
    for (auto action : kSigma)
      add_edge(a, from, guard_for(a.alphabet.clock_of(action)), action, to);
  };
  auto always = [](const std::string&) { return Guard{}; };

  sigma_group(std::string(kStart), gadget.machine_initial, [](const std::string& clock) {
    return Guard{{param_atom(clock, Relation::Less), constant_atom(clock, Relation::Equal, 0)}};
  });
  sigma_group(std::string(kStart), std::string(kAcc1), always);
  sigma_group(std::string(kStart), std::string(kAcc2), [](const std::string& clock) {
    return Guard{{param_atom(clock, Relation::Equal), constant_atom(clock, Relation::Equal, 0)}};
  });
  sigma_group(gadget.machine_halt, std::string(kAcc2), always);
  sigma_group(std::string(kAcc1), std::string(kAcc1), always);
  sigma_group(std::string(kAcc2), std::string(kAcc2), always);
  gadget.wrapped = true;
  return gadget;
}

Encoding add_sink(Encoding gadget)
{
  if (gadget.has_sink)
    throw EncoderError("automaton already has a sink");
  Pera& a = gadget.automaton;
  add_location(a, std::string(kSink));
  for (const auto& bar : gadget.intermediary_locations)
    for (auto action : kSigma)
      add_edge(a, bar,
               Guard{{param_atom(kTickClock, Relation::Equal), param_atom(kStepClock, Relation::Equal, -1)}}, action,
               std::string(kSink));
  gadget.has_sink = true;
  return gadget;
}

namespace {

void require_wrapped_with_sink(const Encoding& enc, std::string_view what)
{
  if (!enc.wrapped || !enc.has_sink)
    throw EncoderError(std::string(what) + " needs the wrapped automaton with a sink");
  if (enc.has_fresh_action)
    throw EncoderError(std::string(what) + ": the fresh action is already present");
}

}  // namespace

Encoding buchi_variant(Encoding enc)
{
  require_wrapped_with_sink(enc, "buchi_variant");
  Pera& a = enc.automaton;
  a.alphabet.add(std::string(kFresh), std::string(kFreshClock));
  add_edge(a, std::string(kSink), {}, kFresh, std::string(kSink));
  a.accepting = {std::string(kAcc1), std::string(kAcc2), std::string(kSink)};
  enc.has_fresh_action = true;
  return enc;
}

Encoding safety_variant(Encoding enc)
{
  require_wrapped_with_sink(enc, "safety_variant");
  Pera& a = enc.automaton;
  a.alphabet.add(std::string(kFresh), std::string(kFreshClock));
  std::vector<Edge> edges;
  for (auto edge : a.edges) {
    if (edge.to == kSink)
      edge.action = std::string(kFresh);
    if (std::find(edges.begin(), edges.end(), edge) == edges.end())
      edges.push_back(std::move(edge));
  }
  a.edges = std::move(edges);
  enc.has_fresh_action = true;
  return enc;
}

Variant parse_variant(std::string_view text)
{
  if (text == "plain") return Variant::Plain;
  if (text == "wrapped") return Variant::Wrapped;
  if (text == "sink") return Variant::Sink;
  if (text == "buchi") return Variant::Buchi;
  if (text == "safety") return Variant::Safety;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

std::string_view to_string(Variant variant)
{
  switch (variant) {
  case Variant::Plain: return "plain";
  case Variant::Wrapped: return "wrapped";
  case Variant::Sink: return "sink";
  case Variant::Buchi: return "buchi";
  case Variant::Safety: return "safety";
  }
  return "?";
}

Encoding encode(const TwoCounterMachine& m, Variant variant)
{
  Encoding core = encode_core(m);
  switch (variant) {
  case Variant::Plain: return core;
  case Variant::Wrapped: return wrap_preservation(std::move(core));
  case Variant::Sink: return wrap_preservation(add_sink(std::move(core)));
  case Variant::Buchi: return buchi_variant(wrap_preservation(add_sink(std::move(core))));
  case Variant::Safety: return safety_variant(wrap_preservation(add_sink(std::move(core))));
  }
  throw std::invalid_argument("unknown variant");
}

}  // namespace pera
