// Acceptance suite: one PASS/FAIL line per criterion, plus indented details.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "fidelity.hh"
#include "oracle.hh"
#include "pera/encoder.hh"
#include "pera/language.hh"

using namespace pera;

namespace {

const std::vector<std::string> kSigma{"a_t", "a_1", "a_2", "a_z"};

TwoCounterMachine machine(const std::string& name) { return load_2cm(std::string(PERA_MACHINES_DIR) + "/" + name); }

Era era_at(const TwoCounterMachine& m, Variant variant, std::int64_t p)
{
  return Era(instantiate(encode(m, variant).automaton, {{"p", Rational(p)}}).era);
}

LanguageSample sample(const Era& era, int k, LanguageKind kind)
{
  ExplorationConfig cfg;
  cfg.depth = k;
  return enumerate(era, cfg, kind);
}

/// Every word over `letters` of length <= k.
WordSet all_words(const std::vector<std::string>& letters, int k)
{
  WordSet out{Word{}};
  std::vector<Word> level{Word{}};
  for (int len = 1; len <= k; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (const auto& a : letters) {
        Word v = w;
        v.push_back(a);
        out.insert(v);
        next.push_back(std::move(v));
      }
    level = std::move(next);
  }
  return out;
}

bool mentions(const Word& w, const std::string& action) { return std::find(w.begin(), w.end(), action) != w.end(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what)
  {
    pass = pass && ok;
    details.push_back((ok ? "ok: " : "failed: ") + what);
  }
  void note(const std::string& what) { details.push_back("note: " + what); }
};

std::string count_line(const std::string& label, std::size_t actual, std::size_t expected)
{
  return label + " = " + std::to_string(actual) + " (expected " + std::to_string(expected) + ")";
}

Outcome criterion_v0_language()
{
  Outcome o;
  const WordSet sigma6 = all_words(kSigma, 6);
  for (const char* name : {"inc3.2cm", "loop.2cm", "halt0.2cm"}) {
    LanguageSample s = sample(era_at(machine(name), Variant::Wrapped, 0), 6, LanguageKind::Maximal);
    o.expect(s.prefix_words.size() == 5461 && s.prefix_words == sigma6,
             std::string(name) + ": " + count_line("prefix words", s.prefix_words.size(), 5461));
    o.expect(s.maximal_finite_words.empty(),
             std::string(name) + ": " + count_line("maximal finite words", s.maximal_finite_words.size(), 0));
  }
  return o;
}

Outcome criterion_fidelity()
{
  Outcome o;
  for (const char* name : {"inc3.2cm", "loop.2cm"})
    for (Variant variant : {Variant::Plain, Variant::Wrapped})
      for (std::int64_t p : {3, 4, 5}) {
        fidelity::Report r = fidelity::check(machine(name), variant, p);
        std::ostringstream what;
        what << name << " " << to_string(variant) << " p=" << p << ": " << r.instructions << "/"
             << r.expected_instructions << " steps, " << r.ticks_checked << " ticks checked";
        if (!r.ok)
          what << " (" << r.problem << ")";
        o.expect(r.ok, what.str());
      }
  return o;
}

void describe_verdict(Outcome& o, const std::string& label, const Verdict& v)
{
  o.note(label + ": " + format_verdict(v));
}

Outcome criterion_halting_side()
{
  Outcome o;
  TwoCounterMachine m = machine("inc3.2cm");
  LanguageSample v0 = sample(era_at(m, Variant::Wrapped, 0), 8, LanguageKind::Maximal);
  LanguageSample v5 = sample(era_at(m, Variant::Wrapped, 5), 8, LanguageKind::Maximal);
  const WordSet sigma8 = all_words(kSigma, 8);
  o.expect(v0.prefix_words == sigma8 && v5.prefix_words == sigma8, "both prefix sets equal all words of length <= 8");
  o.expect(v0.maximal_finite_words.empty(), count_line("p=0 maximal finite words", v0.maximal_finite_words.size(), 0));
  o.expect(v5.maximal_finite_words.empty(), count_line("p=5 maximal finite words", v5.maximal_finite_words.size(), 0));
  if (!v5.maximal_finite_words.empty())
    o.note("shortest p=5 maximal finite word: " + format_word(*v5.maximal_finite_words.begin()));
  Verdict v = compare(v0, v5);
  o.expect(v.equal, "compare p=0 vs p=5 at k=8 is equal up to bound");
  describe_verdict(o, "p=0 vs p=5", v);
  return o;
}

Outcome criterion_non_halting_side()
{
  Outcome o;
  TwoCounterMachine m = machine("loop.2cm");
  LanguageSample v0 = sample(era_at(m, Variant::Wrapped, 0), 8, LanguageKind::Maximal);
  o.expect(v0.maximal_finite_words.empty(), count_line("p=0 maximal finite words", v0.maximal_finite_words.size(), 0));
  for (std::int64_t p : {1, 2, 3, 4}) {
    LanguageSample vp = sample(era_at(m, Variant::Wrapped, p), 8, LanguageKind::Maximal);
    Verdict v = compare(vp, v0);
    bool witnessed = !v.equal && v.owner == Side::Left && v.word && vp.maximal_finite_words.contains(*v.word) &&
                     !v0.maximal_finite_words.contains(*v.word);
    o.expect(witnessed, "p=" + std::to_string(p) + ": " + format_verdict(v));
  }
  return o;
}

/// Least number of discrete steps needed to reach l_sink, if reachable.
std::optional<int> sink_depth(const Era& era)
{
  ZoneGraph g = zone_graph(era, {});
  std::optional<int> best;
  for (const auto& node : g.nodes)
    if (era.location_name(node.location) == naming::kSink && (!best || node.depth < *best))
      best = node.depth;
  return best;
}

void note_sink(Outcome& o, const TwoCounterMachine& m, Variant variant)
{
  for (std::int64_t p : {2, 3}) {
    auto depth = sink_depth(era_at(m, variant, p));
    o.note("p=" + std::to_string(p) + ": l_sink " +
           (depth ? "first reached after " + std::to_string(*depth) + " steps" : "unreachable"));
  }
}

Outcome criterion_safety()
{
  Outcome o;
  TwoCounterMachine m = machine("loop.2cm");
  LanguageSample v0 = sample(era_at(m, Variant::Safety, 0), 6, LanguageKind::Safety);
  LanguageSample v2 = sample(era_at(m, Variant::Safety, 2), 6, LanguageKind::Safety);
  o.expect(v0.accepted_words == all_words(kSigma, 6),
           count_line("p=0 accepted words over the original actions", v0.accepted_words.size(), 5461));
  const Word* with_fresh = nullptr;
  for (const auto& w : v2.accepted_words)
    if (mentions(w, "a_3")) {
      with_fresh = &w;
      break;
    }
  o.expect(with_fresh != nullptr,
           "p=2: some accepted word contains a_3" + (with_fresh ? " (" + format_word(*with_fresh) + ")" : std::string()));
  Verdict v = compare(v0, v2);
  o.expect(!v.equal, "compare p=0 vs p=2 differs");
  describe_verdict(o, "p=0 vs p=2", v);
  note_sink(o, m, Variant::Safety);
  return o;
}

Outcome criterion_buchi()
{
  Outcome o;
  TwoCounterMachine m = machine("loop.2cm");
  LanguageSample v2 = sample(era_at(m, Variant::Buchi, 2), 8, LanguageKind::Buchi);
  LanguageSample v0 = sample(era_at(m, Variant::Buchi, 0), 8, LanguageKind::Buchi);
  const Lasso* fresh_cycle = nullptr;
  for (const auto& l : v2.lassos)
    if (l.cycle == Word{"a_3"}) {
      fresh_cycle = &l;
      break;
    }
  o.expect(fresh_cycle != nullptr,
           "p=2: a lasso with cycle (a_3)" + (fresh_cycle ? " (" + format_lasso(*fresh_cycle) + ")" : std::string()) +
               ", " + std::to_string(v2.lassos.size()) + " lassos");
  bool clean = std::none_of(v0.lassos.begin(), v0.lassos.end(),
                            [](const Lasso& l) { return mentions(l.stem, "a_3") || mentions(l.cycle, "a_3"); });
  o.expect(clean, "p=0: no lasso mentions a_3, " + std::to_string(v0.lassos.size()) + " lassos");
  note_sink(o, m, Variant::Buchi);
  return o;
}

Outcome criterion_zone_oracle()
{
  Outcome o;
  std::mt19937 rng(2024);
  int instances = 0, mismatches = 0;
  std::map<std::string, int> by_op;
  auto check = [&](const std::string& op, std::size_t clocks, const std::function<bool(const ClockValuation&)>& mine,
                   const oracle::Set& reference) {
    ++instances;
    for (const auto& w : oracle::grid(clocks))
      if (mine(w) != reference(w)) {
        ++mismatches;
        ++by_op[op];
        return;
      }
  };
  auto in = [](const Dbm& z) { return [z](const ClockValuation& w) { return contains(z, w); }; };

  for (int round = 0; round < 180; ++round) {
    std::size_t clocks = 1 + round % 3;
    auto ca = oracle::random_constraints(rng, clocks), cb = oracle::random_constraints(rng, clocks);
    Dbm a = oracle::to_dbm(clocks, ca), b = oracle::to_dbm(clocks, cb);
    auto sa = oracle::of(ca), sb = oracle::of(cb);
    std::size_t clock = 1 + static_cast<std::size_t>(rng() % clocks);

    check("canonicalize", clocks, in(a), sa);
    check("intersect", clocks, in(intersect(a, b)), oracle::intersection(sa, sb));
    if (!a.is_empty())
      check("up", clocks, in(up(a)), oracle::up(sa));
    check("down", clocks, in(down(a)), oracle::down(sa));
    check("reset", clocks, in(reset(a, clock)), oracle::reset(sa, clock));
    Federation diff = subtract(a, b);
    check("subtract", clocks, [&](const ClockValuation& w) { return diff.contains(w); }, oracle::difference(sa, sb));
    // Invariants are upper bounds only, hence convex and downward closed in time.
    std::vector<oracle::Constraint> upper;
    for (const auto& k : cb)
      if (k.j == 0)
        upper.push_back(k);
    Dbm within = oracle::to_dbm(clocks, upper);
    check("time_pred", clocks, in(time_pred(a, within)), oracle::time_pred(sa, oracle::of(upper)));
  }
  o.expect(instances >= 1000, std::to_string(instances) + " instances");
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatching instances");
  for (const auto& [op, n] : by_op)
    o.note(op + ": " + std::to_string(n) + " mismatches");
  return o;
}

struct ExpectedCounts {
  std::size_t locations, edges;
};

/// Counts by construction: 2|S| gadget locations with 3 self-loops each, one
/// edge per increment, three per test (zero, t < 1, t > 1), one return per
/// state; each Σ macro stands for 4 edges.
std::map<Variant, ExpectedCounts> construction_counts(const TwoCounterMachine& m)
{
  const std::size_t states = m.states.size();
  std::size_t instruction_edges = 0;
  for (const auto& [state, instr] : m.program)
    instruction_edges += std::holds_alternative<Increment>(instr) ? 1 : 3;
  ExpectedCounts plain{2 * states, 3 * 2 * states + instruction_edges + states};
  ExpectedCounts wrapped{plain.locations + 3, plain.edges + 6 * 4};
  ExpectedCounts sink{wrapped.locations + 1, wrapped.edges + 4 * states};
  return {{Variant::Plain, plain},
          {Variant::Wrapped, wrapped},
          {Variant::Sink, sink},
          {Variant::Buchi, {sink.locations, sink.edges + 1}},
          {Variant::Safety, {sink.locations, sink.edges - 3 * states}}};
}

Outcome criterion_structure()
{
  Outcome o;
  for (const char* name : {"inc3.2cm", "loop.2cm", "halt0.2cm"}) {
    TwoCounterMachine m = machine(name);
    for (const auto& [variant, expected] : construction_counts(m)) {
      const Pera a = encode(m, variant).automaton;
      o.expect(a.locations.size() == expected.locations && a.edges.size() == expected.edges && validate(a).empty(),
               std::string(name) + " " + std::string(to_string(variant)) + ": " +
                   std::to_string(a.locations.size()) + " locations, " + std::to_string(a.edges.size()) +
                   " edges (expected " + std::to_string(expected.locations) + ", " +
                   std::to_string(expected.edges) + ")");
    }
  }
  return o;
}

}  // namespace

int main()
{
  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"v0 language is all words", criterion_v0_language},
      {"encoding fidelity against the interpreter", criterion_fidelity},
      {"halting machine: p=5 matches p=0", criterion_halting_side},
      {"non-halting machine: every p differs from p=0", criterion_non_halting_side},
      {"safety variant", criterion_safety},
      {"Buchi variant", criterion_buchi},
      {"zone engine against the grid oracle", criterion_zone_oracle},
      {"structural counts", criterion_structure},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
              << std::fixed << std::setprecision(2) << seconds << " s)\n";
    for (const auto& d : o.details)
      std::cout << "    " << d << '\n';
    failed += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
