#include "pera/cli.hh"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pera/core.hh"
#include "pera/encoder.hh"
#include "pera/language.hh"
#include "pera/minsky.hh"
#include "pera/semantics.hh"
#include "pera/serialize.hh"

namespace pera {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ParamValuation parse_valuation(const std::vector<std::string>& assignments)
{
  ParamValuation v;
  for (const auto& text : assignments) {
    auto [name, value] = parse_assignment(text);
    if (!v.emplace(name, value).second)
      throw InputError("parameter '" + name + "' assigned twice");
  }
  return v;
}

std::string format_valuation(const ParamValuation& v)
{
  if (v.empty())
    return "{}";
  std::string out;
  for (const auto& [name, value] : v) {
    if (!out.empty())
      out += ",";
    out += name + "=" + to_string(value);
  }
  return out;
}

Era instantiate_era(const Pera& automaton, const ParamValuation& v, std::ostream& err)
{
  Instantiated inst = instantiate(automaton, v);
  if (inst.factor != 1)
    err << "note: valuation " << format_valuation(v) << " rescaled by factor " << inst.factor << '\n';
  for (const auto& w : inst.warnings)
    err << "warning: " << w << '\n';
  return Era(std::move(inst.era));
}

ExplorationConfig exploration(int depth, std::size_t node_limit)
{
  if (depth < 0)
    throw InputError("depth must be non-negative");
  ExplorationConfig cfg;
  cfg.depth = depth;
  cfg.node_limit = node_limit;
  return cfg;
}

std::string sample_stats(const LanguageSample& s)
{
  std::ostringstream out;
  out << "prefix_words=" << s.prefix_words.size();
  switch (s.kind) {
  case LanguageKind::Maximal: out << " maximal_finite_words=" << s.maximal_finite_words.size(); break;
  case LanguageKind::Reach:
  case LanguageKind::Safety: out << " accepted_words=" << s.accepted_words.size(); break;
  case LanguageKind::Buchi: out << " lassos=" << s.lassos.size(); break;
  }
  return out.str();
}

Variant variant_for(LanguageKind kind)
{
  switch (kind) {
  case LanguageKind::Maximal: return Variant::Wrapped;
  case LanguageKind::Safety: return Variant::Safety;
  case LanguageKind::Buchi:
  case LanguageKind::Reach: return Variant::Buchi;
  }
  return Variant::Wrapped;
}

std::size_t halt_horizon = 10000;

struct Options {
  std::string input;
  std::string output;
  std::string variant = "wrapped";
  std::vector<std::string> left;
  std::vector<std::string> right;
  std::vector<std::string> values;
  std::string semantics = "maximal";
  int depth = 8;
  std::optional<int> graph_depth;
  std::size_t node_limit = 200000;
  std::size_t steps = 10;
};

int cmd_encode(const Options& o, std::ostream& out, std::ostream& err)
{
  const TwoCounterMachine m = load_2cm(o.input);
  const Encoding enc = encode(m, parse_variant(o.variant));
  if (auto problems = validate(enc.automaton); !problems.empty())
    throw InputError("generated automaton is malformed: " + problems.front());
  std::ostream& summary = o.output.empty() ? err : out;
  if (o.output.empty())
    out << print_pera(enc.automaton);
  else
    save_pera(o.output, enc.automaton);
  summary << "variant: " << to_string(parse_variant(o.variant)) << '\n'
          << "locations: " << enc.automaton.locations.size() << '\n'
          << "edges: " << enc.automaton.edges.size() << '\n';
  return exit_code::kOk;
}

int cmd_lang(const Options& o, std::ostream& out, std::ostream& err)
{
  const Pera automaton = load_pera(o.input);
  const Era era = instantiate_era(automaton, parse_valuation(o.left), err);
  out << format_sample(enumerate(era, exploration(o.depth, o.node_limit), parse_language_kind(o.semantics)));
  return exit_code::kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err)
{
  const Pera automaton = load_pera(o.input);
  const LanguageKind kind = parse_language_kind(o.semantics);
  const ExplorationConfig cfg = exploration(o.depth, o.node_limit);
  const ParamValuation lv = parse_valuation(o.left), rv = parse_valuation(o.right);
  const LanguageSample left = enumerate(instantiate_era(automaton, lv, err), cfg, kind);
  const LanguageSample right = enumerate(instantiate_era(automaton, rv, err), cfg, kind);
  const Verdict verdict = compare(left, right);
  out << "left: " << format_valuation(lv) << ' ' << sample_stats(left) << '\n'
      << "right: " << format_valuation(rv) << ' ' << sample_stats(right) << '\n'
      << format_verdict(verdict) << '\n';
  return exit_code::kOk;
}

int cmd_theorem_check(const Options& o, std::ostream& out, std::ostream& err)
{
  using Clock = std::chrono::steady_clock;
  const TwoCounterMachine m = load_2cm(o.input);
  const LanguageKind kind = parse_language_kind(o.semantics);
  const Variant variant = variant_for(kind);
  const Encoding enc = encode(m, variant);
  const ExplorationConfig cfg = exploration(o.depth, o.node_limit);
  const std::string param(naming::kParam);

  std::vector<Rational> values;
  for (const auto& text : o.values)
    values.push_back(parse_assignment(param + "=" + text).second);
  if (values.empty())
    throw InputError("no valuations given");

  const McRun oracle = run(m, halt_horizon);
  out << "== machine ==\n"
      << "file: " << o.input << '\n'
      << "states: " << m.states.size() << '\n'
      << "interpreter: "
      << (oracle.halted ? "halts after " + std::to_string(oracle.steps) + " steps"
                        : "no halt within " + std::to_string(halt_horizon) + " steps")
      << '\n'
      << "encoding: " << to_string(variant) << ", " << enc.automaton.locations.size() << " locations, "
      << enc.automaton.edges.size() << " edges\n"
      << "semantics: " << to_string(kind) << '\n'
      << "depth: " << o.depth << '\n';

  std::vector<std::pair<std::string, double>> timings;
  auto sample_at = [&](const Rational& value) -> std::optional<LanguageSample> {
    auto start = Clock::now();
    std::optional<LanguageSample> s;
    std::string label = param + "=" + to_string(value);
    try {
      s = enumerate(instantiate_era(enc.automaton, {{param, value}}, err), cfg, kind);
      out << label << ": " << sample_stats(*s) << '\n';
    } catch (const ResourceExhausted& e) {
      out << label << ": resource exhausted (" << e.what() << ")\n";
    }
    timings.emplace_back(label, std::chrono::duration<double>(Clock::now() - start).count());
    return s;
  };

  out << "== samples ==\n";
  const auto reference = sample_at(Rational(0));
  std::vector<std::optional<LanguageSample>> samples;
  for (const auto& v : values)
    samples.push_back(sample_at(v));

  out << "== verdicts vs " << param << "=0 ==\n";
  bool exhausted = !reference;
  bool any_equal = false, all_differ = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << param << "=" << to_string(values[i]) << ": ";
    if (!reference || !samples[i]) {
      out << "skipped (resource exhausted)\n";
      exhausted = true;
      all_differ = false;
      continue;
    }
    Verdict verdict = compare(*samples[i], *reference);
    out << format_verdict(verdict) << '\n';
    any_equal = any_equal || verdict.equal;
    all_differ = all_differ && !verdict.equal;
  }
  out << "== conclusion ==\n";
  if (any_equal)
    out << "consistent with halting\n";
  else if (all_differ)
    out << "consistent with non-halting\n";
  else
    out << "inconclusive\n";

  out << "-- timings --\n";
  for (const auto& [label, seconds] : timings)
    out << label << ": " << std::fixed << std::setprecision(3) << seconds << " s\n";
  out << "-- end timings --\n";
  return exhausted ? exit_code::kResourceExhausted : exit_code::kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream&)
{
  const TwoCounterMachine m = load_2cm(o.input);
  const McRun r = run(m, o.steps);
  for (const auto& cfg : r.trace)
    out << to_string(cfg) << '\n';
  out << (r.halted ? "halted after " + std::to_string(r.steps) + " steps"
                   : "not halted after " + std::to_string(r.steps) + " steps")
      << '\n';
  return exit_code::kOk;
}

int cmd_graph(const Options& o, std::ostream& out, std::ostream& err)
{
  const Pera automaton = load_pera(o.input);
  const Era era = instantiate_era(automaton, parse_valuation(o.left), err);
  ExplorationConfig cfg;
  cfg.depth = o.graph_depth;
  cfg.node_limit = o.node_limit;
  out << zone_graph(era, cfg).to_dot(era);
  return exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Parametric event-recording automata toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_depth = [&o](CLI::App* cmd) {
    cmd->add_option("-k,--depth", o.depth, "Word length bound")->capture_default_str();
    cmd->add_option("--node-limit", o.node_limit, "Zone graph node limit")->capture_default_str();
    cmd->add_option("--semantics", o.semantics, "maximal, buchi, reach or safety")->capture_default_str();
  };

  auto* encode_cmd = app.add_subcommand("encode", "Encode a two-counter machine as a PERA");
  encode_cmd->add_option("machine", o.input, "Machine file")->required();
  encode_cmd->add_option("--variant", o.variant, "plain, wrapped, sink, buchi or safety")->capture_default_str();
  encode_cmd->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* lang_cmd = app.add_subcommand("lang", "Print the bounded untimed language of a valuated PERA");
  lang_cmd->add_option("pera", o.input, "PERA file")->required();
  lang_cmd->add_option("-p,--param", o.left, "NAME=VALUE");
  add_depth(lang_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "Compare the bounded languages of two valuations");
  compare_cmd->add_option("pera", o.input, "PERA file")->required();
  compare_cmd->add_option("-p,--left", o.left, "NAME=VALUE for the left valuation");
  compare_cmd->add_option("-q,--right", o.right, "NAME=VALUE for the right valuation");
  add_depth(compare_cmd);

  auto* theorem_cmd = app.add_subcommand("theorem-check", "Compare encoded valuations against p=0");
  theorem_cmd->add_option("machine", o.input, "Machine file")->required();
  theorem_cmd->add_option("--values", o.values, "Values of p")->delimiter(',')->required();
  add_depth(theorem_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the two-counter machine interpreter");
  simulate_cmd->add_option("machine", o.input, "Machine file")->required();
  simulate_cmd->add_option("--steps", o.steps, "Step bound")->capture_default_str();

  auto* graph_cmd = app.add_subcommand("graph", "Export the zone graph in DOT format");
  graph_cmd->add_option("pera", o.input, "PERA file")->required();
  graph_cmd->add_option("-p,--param", o.left, "NAME=VALUE");
  graph_cmd->add_option("-k,--depth", o.graph_depth, "Depth bound (default: full exploration)");
  graph_cmd->add_option("--node-limit", o.node_limit, "Zone graph node limit")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kInputError;
  }

  try {
    if (*encode_cmd) return cmd_encode(o, out, err);
    if (*lang_cmd) return cmd_lang(o, out, err);
    if (*compare_cmd) return cmd_compare(o, out, err);
    if (*theorem_cmd) return cmd_theorem_check(o, out, err);
    if (*simulate_cmd) return cmd_simulate(o, out, err);
    if (*graph_cmd) return cmd_graph(o, out, err);
  } catch (const ResourceExhausted& e) {
    err << "error: resource exhausted: " << e.what() << '\n';
    return exit_code::kResourceExhausted;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInputError;
  }
  return exit_code::kInputError;
}

}  // namespace pera
