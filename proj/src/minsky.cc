#include "pera/minsky.hh"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace pera {

namespace {

std::vector<std::string> split_words(std::string_view text)
{
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string word; in >> word;)
    words.push_back(word);
  return words;
}

bool valid_state_name(std::string_view name)
{
  if (name.empty())
    return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

int parse_counter(const std::string& word, int line)
{
  if (word == "c1")
    return 1;
  if (word == "c2")
    return 2;
  throw ParseError("unknown counter '" + word + "' (expected c1 or c2)", line);
}

}  // namespace

const Instruction* TwoCounterMachine::instruction(const std::string& state) const
{
  auto it = program.find(state);
  return it == program.end() ? nullptr : &it->second;
}

TwoCounterMachine parse_2cm(std::string_view text)
{
  TwoCounterMachine m;
  std::map<std::string, int> references;  // state -> first line mentioning it
  bool seen_init = false, seen_halt = false;

  auto mention = [&](const std::string& state, int line) {
    if (!valid_state_name(state))
      throw ParseError("malformed state name '" + state + "'", line);
    references.emplace(state, line);
    if (std::find(m.states.begin(), m.states.end(), state) == m.states.end())
      m.states.push_back(state);
  };

  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto colon = line.find(':');
    auto head = split_words(line.substr(0, colon == std::string::npos ? line.size() : colon));
    if (head.empty() && colon == std::string::npos)
      continue;
    if (colon == std::string::npos || head.size() != 1)
      throw ParseError("expected 'NAME: ...'", line_no);
    auto body = split_words(line.substr(colon + 1));
    const std::string& key = head.front();

    if (!seen_init && key != "init")
      throw ParseError("the first declaration must be 'init: STATE'", line_no);
    if (key == "init" || key == "halt") {
      if (body.size() != 1)
        throw ParseError("expected '" + key + ": STATE'", line_no);
      bool& seen = key == "init" ? seen_init : seen_halt;
      if (seen)
        throw ParseError("duplicate '" + key + "' declaration", line_no);
      seen = true;
      (key == "init" ? m.initial : m.halt) = body.front();
      mention(body.front(), line_no);
      continue;
    }

    if (!valid_state_name(key))
      throw ParseError("malformed state name '" + key + "'", line_no);
    if (m.program.contains(key))
      throw ParseError("state '" + key + "' already has an instruction", line_no);
    Instruction instr;
    if (body.size() == 4 && body[0] == "inc" && body[2] == "goto") {
      instr = Increment{parse_counter(body[1], line_no), body[3]};
      mention(key, line_no);
      mention(body[3], line_no);
    } else if (body.size() == 8 && body[0] == "ifz" && body[2] == "goto" && body[4] == "else" && body[5] == "dec" &&
               body[6] == "goto") {
      instr = TestDecrement{parse_counter(body[1], line_no), body[3], body[7]};
      mention(key, line_no);
      mention(body[3], line_no);
      mention(body[7], line_no);
    } else {
      throw ParseError("expected 'inc cK goto STATE' or 'ifz cK goto STATE else dec goto STATE'", line_no);
    }
    m.program.emplace(key, std::move(instr));
  }

  if (!seen_init)
    throw ParseError("missing 'init: STATE'");
  if (!seen_halt)
    throw ParseError("missing 'halt: STATE'");
  if (m.program.contains(m.halt))
    throw ParseError("halt state '" + m.halt + "' must not have an instruction");
  for (const auto& state : m.states)
    if (state != m.halt && !m.program.contains(state))
      throw ParseError("undeclared state '" + state + "'", references[state]);
  return m;
}

TwoCounterMachine load_2cm(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_2cm(buffer.str());
}

std::optional<McConfig> step(const TwoCounterMachine& m, const McConfig& cfg)
{
  if (cfg.state == m.halt)
    return std::nullopt;
  const Instruction* instr = m.instruction(cfg.state);
  if (!instr)
    throw std::out_of_range("state '" + cfg.state + "' has no instruction");
  McConfig next = cfg;
  if (const auto* inc = std::get_if<Increment>(instr)) {
    (inc->counter == 1 ? next.c1 : next.c2) += 1;
    next.state = inc->next;
  } else {
    const auto& test = std::get<TestDecrement>(*instr);
    auto& counter = test.counter == 1 ? next.c1 : next.c2;
    if (counter == 0) {
      next.state = test.if_zero;
    } else {
      --counter;
      next.state = test.if_positive;
    }
  }
  return next;
}

McRun run(const TwoCounterMachine& m, std::size_t max_steps)
{
  McRun result;
  result.trace.push_back({m.initial, 0, 0});
  while (result.steps < max_steps) {
    auto next = step(m, result.trace.back());
    if (!next)
      break;
    result.trace.push_back(std::move(*next));
    ++result.steps;
  }
  result.halted = result.trace.back().state == m.halt;
  return result;
}

std::string to_string(const McConfig& cfg)
{
  return "(" + cfg.state + ", " + std::to_string(cfg.c1) + ", " + std::to_string(cfg.c2) + ")";
}

}  // namespace pera
