#include "pera/serialize.hh"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pera {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key)
{
  auto it = doc.find(key);
  if (it == doc.end())
    throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

Guard guard_field(const json& obj, const char* key)
{
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null())
    return {};
  if (!it->is_string())
    throw ParseError(std::string("'") + key + "' must be a guard string");
  return parse_guard(it->get<std::string>());
}

}  // namespace

Pera parse_pera(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("document must be an object");

  Pera out;
  try {
    for (const auto& action : require(doc, "actions")) {
      if (action.is_string()) {
        auto name = action.get<std::string>();
        out.alphabet.add(name, "x_" + name);
      } else {
        out.alphabet.add(require(action, "name").get<std::string>(), require(action, "clock").get<std::string>());
      }
    }
    if (auto it = doc.find("parameters"); it != doc.end())
      out.params = it->get<std::vector<std::string>>();
    for (const auto& loc : require(doc, "locations"))
      out.locations.push_back({require(loc, "name").get<std::string>(), guard_field(loc, "invariant")});
    out.initial = require(doc, "initial").get<std::string>();
    if (auto it = doc.find("accepting"); it != doc.end())
      out.accepting = it->get<std::vector<std::string>>();
    for (const auto& edge : require(doc, "edges"))
      out.edges.push_back({require(edge, "from").get<std::string>(), guard_field(edge, "guard"),
                           require(edge, "action").get<std::string>(), require(edge, "to").get<std::string>()});
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  return out;
}

std::string print_pera(const Pera& automaton)
{
  json doc;
  doc["actions"] = json::array();
  for (std::size_t i = 0; i < automaton.alphabet.size(); ++i)
    doc["actions"].push_back({{"name", automaton.alphabet.actions()[i]}, {"clock", automaton.alphabet.clocks()[i]}});
  doc["parameters"] = automaton.params;
  doc["locations"] = json::array();
  for (const auto& loc : automaton.locations)
    doc["locations"].push_back({{"name", loc.name}, {"invariant", to_string(loc.invariant)}});
  doc["initial"] = automaton.initial;
  doc["accepting"] = automaton.accepting;
  doc["edges"] = json::array();
  for (const auto& edge : automaton.edges)
    doc["edges"].push_back(
        {{"from", edge.from}, {"guard", to_string(edge.guard)}, {"action", edge.action}, {"to", edge.to}});
  return doc.dump(2) + "\n";
}

Pera load_pera(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_pera(buffer.str());
}

void save_pera(const std::string& path, const Pera& automaton)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  out << print_pera(automaton);
}

}  // namespace pera
