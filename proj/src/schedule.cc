#include "pera/encoder.hh"

namespace pera {

namespace {

class Scheduler {
 public:
  explicit Scheduler(const Era& era)
      : era_(era), clocks_(era.clocks() + 1, Rational(0)), location_(era.initial())
  {
  }

  std::size_t location() const { return location_; }
  const std::string& location_name() const { return era_.location_name(location_); }

  Rational clock(std::string_view name) const { return clocks_[*era_.alphabet().clock_index(name) + 1]; }

  /// Fires the edge from the current location with the given action and
  /// target whose guard holds now; false when there is none.
  bool fire(std::string_view action, const std::string& to)
  {
    for (std::size_t e : era_.outgoing(location_)) {
      const auto& edge = era_.edges()[e];
      if (era_.alphabet().actions()[edge.action] != action || era_.location_name(edge.to) != to)
        continue;
      if (!contains(edge.guard, clocks_))
        continue;
      ClockValuation next = clocks_;
      next[edge.reset] = 0;
      if (!contains(era_.invariant(edge.to), next))
        continue;
      script_.push_back({pending_, e});
      pending_ = 0;
      clocks_ = std::move(next);
      location_ = edge.to;
      return true;
    }
    return false;
  }

  void advance()
  {
    ClockValuation next = clocks_;
    for (std::size_t c = 1; c < next.size(); ++c)
      next[c] += 1;
    if (!contains(era_.invariant(location_), next))
      throw EncoderError("schedule stuck at " + location_name() + ": time cannot pass");
    clocks_ = std::move(next);
    pending_ += 1;
  }

  std::vector<ScriptStep> take() { return std::move(script_); }

 private:
  const Era& era_;
  ClockValuation clocks_;
  std::size_t location_;
  Rational pending_{0};
  std::vector<ScriptStep> script_;
};

}  // namespace

Schedule simulation_schedule(const TwoCounterMachine& m, const Encoding& encoding, const Era& era, std::int64_t p)
{
  using namespace naming;
  if (p < 1)
    throw EncoderError("simulation needs p >= 1");

  const McRun trace = run(m, static_cast<std::size_t>(p - 1));
  const std::size_t target_steps = trace.steps;

  Scheduler sched(era);
  if (encoding.wrapped && !sched.fire(kTick, encoding.machine_initial))
    throw EncoderError("cannot enter the gadget from " + std::string(kStart));

  std::size_t instructions = 0, returns = 0;
  bool final_tick = false;
  const std::string tick_actions[] = {std::string(kTick), std::string(kCounter1), std::string(kCounter2)};
  const std::string tick_clocks[] = {std::string(kTickClock), std::string(kCounter1Clock),
                                     std::string(kCounter2Clock)};

  // Every event of the encoding happens at an integer instant.
  const std::int64_t horizon = 4 * p * static_cast<std::int64_t>(target_steps + 2);
  for (std::int64_t now = 0; now <= horizon; ++now) {
    for (bool progress = true; progress;) {
      progress = false;
      for (int c = 0; c < 3; ++c)
        if (sched.clock(tick_clocks[c]) == Rational(p) && sched.fire(tick_actions[c], sched.location_name())) {
          progress = true;
          if (c == 0 && returns == target_steps)
            final_tick = true;
        }
      if (progress)
        continue;
      if (final_tick)
        return {sched.take(), target_steps};

      const McConfig& cfg = trace.trace[instructions];
      if (instructions < target_steps && returns == instructions && sched.location_name() == main_location(cfg.state)) {
        const Instruction& instr = *m.instruction(cfg.state);
        bool fired = false;
        if (const auto* inc = std::get_if<Increment>(&instr)) {
          fired = sched.fire(counter_action(inc->counter), intermediary_location(inc->next));
        } else {
          const auto& test = std::get<TestDecrement>(instr);
          fired = cfg.counter(test.counter) == 0
                      ? sched.fire(kTick, intermediary_location(test.if_zero))
                      : sched.fire(counter_action(test.counter), intermediary_location(test.if_positive));
        }
        if (fired) {
          ++instructions;
          progress = true;
          continue;
        }
      }
      if (returns < instructions) {
        const std::string& state = trace.trace[instructions].state;
        if (sched.fire(kStep, main_location(state))) {
          ++returns;
          progress = true;
        }
      }
    }
    sched.advance();
  }
  throw EncoderError("schedule did not terminate within " + std::to_string(horizon) + " time units");
}

}  // namespace pera
