#include "pera/core.hh"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace pera {

namespace {

std::string_view trim(std::string_view text)
{
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::int64_t parse_int(std::string_view text)
{
  text = trim(text);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("expected an integer, got '" + std::string(text) + "'");
  return value;
}

bool is_identifier(std::string_view text)
{
  if (text.empty() || !is_ident_start(text.front()))
    return false;
  return std::all_of(text.begin(), text.end(), is_ident_char);
}

GuardAtom parse_atom(std::string_view text)
{
  std::string_view rest = trim(text);
  std::size_t i = 0;
  while (i < rest.size() && is_ident_char(rest[i]))
    ++i;
  GuardAtom atom;
  atom.clock = std::string(rest.substr(0, i));
  if (!is_identifier(atom.clock))
    throw ParseError("malformed guard atom '" + std::string(text) + "'");
  rest = trim(rest.substr(i));

  if (rest.starts_with("<=")) {
    atom.rel = Relation::LessEq;
    rest.remove_prefix(2);
  } else if (rest.starts_with(">=")) {
    atom.rel = Relation::GreaterEq;
    rest.remove_prefix(2);
  } else if (rest.starts_with("==")) {
    atom.rel = Relation::Equal;
    rest.remove_prefix(2);
  } else if (rest.starts_with("<")) {
    atom.rel = Relation::Less;
    rest.remove_prefix(1);
  } else if (rest.starts_with(">")) {
    atom.rel = Relation::Greater;
    rest.remove_prefix(1);
  } else if (rest.starts_with("=")) {
    atom.rel = Relation::Equal;
    rest.remove_prefix(1);
  } else {
    throw ParseError("missing relation in guard atom '" + std::string(text) + "'");
  }

  rest = trim(rest);
  if (rest.empty())
    throw ParseError("missing right-hand side in guard atom '" + std::string(text) + "'");
  if (is_ident_start(rest.front())) {
    std::size_t j = 0;
    while (j < rest.size() && is_ident_char(rest[j]))
      ++j;
    atom.param = std::string(rest.substr(0, j));
    std::string_view tail = trim(rest.substr(j));
    if (!tail.empty()) {
      if (tail.front() != '+' && tail.front() != '-')
        throw ParseError("malformed right-hand side in '" + std::string(text) + "'");
      bool negative = tail.front() == '-';
      std::int64_t amount = parse_int(tail.substr(1));
      if (amount < 0)
        throw ParseError("malformed offset in '" + std::string(text) + "'");
      atom.offset = negative ? -amount : amount;
    }
  } else {
    atom.offset = parse_int(rest);
  }
  return atom;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value)
{
  if (value.denominator() == 1)
    return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string_view to_string(Relation rel)
{
  switch (rel) {
  case Relation::Less: return "<";
  case Relation::LessEq: return "<=";
  case Relation::Equal: return "=";
  case Relation::GreaterEq: return ">=";
  case Relation::Greater: return ">";
  }
  return "?";
}

Guard Guard::operator&&(const Guard& other) const
{
  Guard result = *this;
  result.atoms.insert(result.atoms.end(), other.atoms.begin(), other.atoms.end());
  return result;
}

Guard parse_guard(std::string_view text)
{
  Guard guard;
  std::string_view rest = trim(text);
  if (rest == "true")
    return guard;
  if (rest.empty())
    throw ParseError("empty guard (use 'true')");
  while (true) {
    auto pos = rest.find("&&");
    guard.atoms.push_back(parse_atom(rest.substr(0, pos)));
    if (pos == std::string_view::npos)
      break;
    rest = rest.substr(pos + 2);
  }
  return guard;
}

std::string to_string(const GuardAtom& atom)
{
  std::ostringstream out;
  out << atom.clock << ' ' << to_string(atom.rel) << ' ';
  if (atom.param) {
    out << *atom.param;
    if (atom.offset > 0)
      out << '+' << atom.offset;
    else if (atom.offset < 0)
      out << '-' << -atom.offset;
  } else {
    out << atom.offset;
  }
  return out.str();
}

std::string to_string(const Guard& guard)
{
  if (guard.is_true())
    return "true";
  std::string out;
  for (std::size_t i = 0; i < guard.atoms.size(); ++i) {
    if (i > 0)
      out += " && ";
    out += to_string(guard.atoms[i]);
  }
  return out;
}

void ActionAlphabet::add(std::string action, std::string clock)
{
  actions_.push_back(std::move(action));
  clocks_.push_back(std::move(clock));
}

std::optional<std::size_t> ActionAlphabet::action_index(std::string_view action) const
{
  auto it = std::find(actions_.begin(), actions_.end(), action);
  if (it == actions_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - actions_.begin());
}

std::optional<std::size_t> ActionAlphabet::clock_index(std::string_view clock) const
{
  auto it = std::find(clocks_.begin(), clocks_.end(), clock);
  if (it == clocks_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - clocks_.begin());
}

const std::string& ActionAlphabet::clock_of(std::string_view action) const
{
  auto index = action_index(action);
  if (!index)
    throw std::out_of_range("unknown action '" + std::string(action) + "'");
  return clocks_[*index];
}

const Location* Pera::find_location(std::string_view name) const
{
  for (const auto& loc : locations)
    if (loc.name == name)
      return &loc;
  return nullptr;
}

bool Pera::is_accepting(std::string_view name) const
{
  return std::find(accepting.begin(), accepting.end(), name) != accepting.end();
}

namespace {

bool unsatisfiable_on_nonnegative(Relation rel, std::int64_t rhs)
{
  switch (rel) {
  case Relation::Less: return rhs <= 0;
  case Relation::LessEq:
  case Relation::Equal: return rhs < 0;
  default: return false;
  }
}

Guard valuate_guard(const Guard& guard, const ParamValuation& valuation, const std::string& where,
                    std::vector<std::string>* warnings)
{
  Guard out;
  for (const auto& atom : guard.atoms) {
    GuardAtom next = atom;
    if (atom.param) {
      auto it = valuation.find(*atom.param);
      if (it == valuation.end())
        throw ValuationError("missing value for parameter '" + *atom.param + "'");
      if (it->second.denominator() != 1)
        throw ValuationError("non-integral value " + to_string(it->second) + " for parameter '" +
                             *atom.param + "'; rescale first");
      next.param.reset();
      next.offset = it->second.numerator() + atom.offset;
      if (warnings && unsatisfiable_on_nonnegative(next.rel, next.offset))
        warnings->push_back("unsatisfiable atom '" + to_string(next) + "' (from '" + to_string(atom) +
                            "') in " + where);
    }
    out.atoms.push_back(std::move(next));
  }
  return out;
}

}  // namespace

Pera valuate(const Pera& automaton, const ParamValuation& valuation, std::vector<std::string>* warnings)
{
  for (const auto& param : automaton.params)
    if (!valuation.contains(param))
      throw ValuationError("missing value for parameter '" + param + "'");
  for (const auto& [name, value] : valuation)
    if (value < 0)
      throw ValuationError("negative value for parameter '" + name + "'");

  Pera out = automaton;
  out.params.clear();
  for (auto& loc : out.locations)
    loc.invariant = valuate_guard(loc.invariant, valuation, "invariant of " + loc.name, warnings);
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    auto& edge = out.edges[i];
    edge.guard = valuate_guard(edge.guard, valuation,
                               "edge #" + std::to_string(i) + " (" + edge.from + " -> " + edge.to + ")",
                               warnings);
  }
  return out;
}

Rescaled rescale(const Pera& automaton, const ParamValuation& valuation)
{
  std::int64_t factor = 1;
  for (const auto& [name, value] : valuation)
    factor = std::lcm(factor, value.denominator());

  Rescaled out{automaton, valuation, factor};
  if (factor == 1)
    return out;
  auto scale = [factor](Guard& guard) {
    for (auto& atom : guard.atoms)
      atom.offset *= factor;
  };
  for (auto& loc : out.automaton.locations)
    scale(loc.invariant);
  for (auto& edge : out.automaton.edges)
    scale(edge.guard);
  for (auto& [name, value] : out.valuation)
    value *= factor;
  return out;
}

Instantiated instantiate(const Pera& automaton, const ParamValuation& valuation)
{
  Rescaled scaled = rescale(automaton, valuation);
  Instantiated out;
  out.factor = scaled.factor;
  out.era = valuate(scaled.automaton, scaled.valuation, &out.warnings);
  return out;
}

std::vector<std::string> validate(const Pera& automaton)
{
  std::vector<std::string> issues;
  const auto& alphabet = automaton.alphabet;

  std::set<std::string> seen_actions, seen_clocks;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!seen_actions.insert(alphabet.actions()[i]).second)
      issues.push_back("duplicate action '" + alphabet.actions()[i] + "'");
    if (!seen_clocks.insert(alphabet.clocks()[i]).second)
      issues.push_back("clock '" + alphabet.clocks()[i] + "' is shared by several actions");
  }

  std::set<std::string> names;
  for (const auto& loc : automaton.locations)
    if (!names.insert(loc.name).second)
      issues.push_back("duplicate location '" + loc.name + "'");

  std::set<std::string> params(automaton.params.begin(), automaton.params.end());
  auto check_guard = [&](const Guard& guard, const std::string& where) {
    for (const auto& atom : guard.atoms) {
      if (!alphabet.clock_index(atom.clock))
        issues.push_back(where + ": atom '" + to_string(atom) + "' uses undeclared clock '" + atom.clock + "'");
      if (atom.param && !params.contains(*atom.param))
        issues.push_back(where + ": atom '" + to_string(atom) + "' uses undeclared parameter '" + *atom.param +
                         "'");
    }
  };

  if (!names.contains(automaton.initial))
    issues.push_back("initial location '" + automaton.initial + "' is not declared");
  for (const auto& acc : automaton.accepting)
    if (!names.contains(acc))
      issues.push_back("accepting location '" + acc + "' is not declared");
  for (const auto& loc : automaton.locations)
    check_guard(loc.invariant, "invariant of " + loc.name);
  for (std::size_t i = 0; i < automaton.edges.size(); ++i) {
    const auto& edge = automaton.edges[i];
    std::string where = "edge #" + std::to_string(i) + " (" + edge.from + " -" + edge.action + "-> " + edge.to + ")";
    if (!names.contains(edge.from))
      issues.push_back(where + ": unknown source location");
    if (!names.contains(edge.to))
      issues.push_back(where + ": unknown target location");
    if (!alphabet.action_index(edge.action))
      issues.push_back(where + ": action '" + edge.action + "' is not in the alphabet");
    check_guard(edge.guard, where);
  }
  return issues;
}

std::int64_t max_constant(const Pera& era)
{
  std::int64_t m = 0;
  auto visit = [&m](const Guard& guard) {
    for (const auto& atom : guard.atoms) {
      if (atom.param)
        throw ValuationError("max_constant on a parametric atom '" + to_string(atom) + "'");
      m = std::max(m, atom.offset < 0 ? -atom.offset : atom.offset);
    }
  };
  for (const auto& loc : era.locations)
    visit(loc.invariant);
  for (const auto& edge : era.edges)
    visit(edge.guard);
  return m;
}

std::pair<std::string, Rational> parse_assignment(std::string_view text)
{
  auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw ParseError("expected NAME=VALUE, got '" + std::string(text) + "'");
  std::string name(trim(text.substr(0, eq)));
  if (!is_identifier(name))
    throw ParseError("malformed parameter name '" + name + "'");
  Rational value = parse_rational(text.substr(eq + 1));
  if (value < 0)
    throw ParseError("parameter values must be non-negative");
  return {name, value};
}

}  // namespace pera
