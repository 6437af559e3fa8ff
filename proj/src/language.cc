#include "pera/language.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace pera {

LanguageKind parse_language_kind(std::string_view text)
{
  if (text == "maximal") return LanguageKind::Maximal;
  if (text == "buchi") return LanguageKind::Buchi;
  if (text == "reach") return LanguageKind::Reach;
  if (text == "safety") return LanguageKind::Safety;
  throw std::invalid_argument("unknown semantics '" + std::string(text) + "'");
}

std::string_view to_string(LanguageKind kind)
{
  switch (kind) {
  case LanguageKind::Maximal: return "maximal";
  case LanguageKind::Buchi: return "buchi";
  case LanguageKind::Reach: return "reach";
  case LanguageKind::Safety: return "safety";
  }
  return "?";
}

bool ShortLex::operator()(const Word& a, const Word& b) const
{
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

bool LassoOrder::operator()(const Lasso& a, const Lasso& b) const
{
  if (a.size() != b.size())
    return a.size() < b.size();
  if (a.stem != b.stem)
    return ShortLex{}(a.stem, b.stem);
  return ShortLex{}(a.cycle, b.cycle);
}

namespace {

Word primitive_root(const Word& w)
{
  const std::size_t n = w.size();
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period != 0)
      continue;
    bool periodic = true;
    for (std::size_t i = period; i < n && periodic; ++i)
      periodic = w[i] == w[i - period];
    if (periodic)
      return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(period));
  }
  return w;
}

}  // namespace

Lasso Lasso::canonical(Word stem, Word cycle)
{
  if (cycle.empty())
    throw std::invalid_argument("lasso with an empty cycle");
  cycle = primitive_root(cycle);
  // stem.x . (cycle'.x)^omega == stem . (x.cycle')^omega
  while (!stem.empty() && stem.back() == cycle.back()) {
    stem.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
  return {std::move(stem), std::move(cycle)};
}

namespace {

using IndexWord = std::vector<std::size_t>;
using NodeSet = std::vector<std::size_t>;

Word to_names(const IndexWord& w, const ActionAlphabet& alphabet)
{
  Word out;
  out.reserve(w.size());
  for (auto a : w)
    out.push_back(alphabet.actions()[a]);
  return out;
}

/// Successor node sets per action, skipping empty ones.
std::map<std::size_t, NodeSet> step_sets(const ZoneGraph& graph, const NodeSet& from)
{
  std::map<std::size_t, NodeSet> out;
  for (auto n : from)
    for (const auto& arc : graph.arcs[n])
      out[arc.action].push_back(arc.target);
  for (auto& [action, set] : out) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return out;
}

/// Strongly connected component index per node of a graph given by adjacency lists.
std::vector<int> components(const std::vector<std::vector<std::size_t>>& adj, int& count)
{
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0), component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  count = 0;

  // Iterative Tarjan.
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0)
      continue;
    std::vector<std::pair<std::size_t, std::size_t>> calls{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& [v, next] = calls.back();
      if (next < adj[v].size()) {
        std::size_t w = adj[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = count;
        } while (w != v);
        ++count;
      }
      std::size_t done = v;
      calls.pop_back();
      if (!calls.empty())
        low[calls.back().first] = std::min(low[calls.back().first], low[done]);
    }
  }
  return component;
}

/// A path reading the current cycle word: start node, current node, and
/// whether an accepting node was entered on the way.
struct Track {
  std::size_t start, current;
  bool accepting;
  auto operator<=>(const Track&) const = default;
};

/// Nodes from which reading the cycle word forever has an accepting run,
/// given every path reading the word once.
std::vector<bool> lasso_sources(std::size_t nodes, const std::vector<Track>& tracks)
{
  std::vector<std::vector<std::size_t>> adj(nodes), reverse(nodes);
  for (const auto& t : tracks) {
    adj[t.start].push_back(t.current);
    reverse[t.current].push_back(t.start);
  }
  int count = 0;
  std::vector<int> component = components(adj, count);
  std::vector<bool> good_component(count, false);
  for (const auto& t : tracks)
    if (t.accepting && component[t.start] == component[t.current])
      good_component[component[t.start]] = true;

  std::vector<bool> good(nodes, false);
  std::vector<std::size_t> todo;
  for (std::size_t n = 0; n < nodes; ++n)
    if (good_component[component[n]]) {
      good[n] = true;
      todo.push_back(n);
    }
  while (!todo.empty()) {
    std::size_t n = todo.back();
    todo.pop_back();
    for (auto m : reverse[n])
      if (!good[m]) {
        good[m] = true;
        todo.push_back(m);
      }
  }
  return good;
}

bool primitive(const IndexWord& w)
{
  for (std::size_t d = 1; d < w.size(); ++d)
    if (w.size() % d == 0 && std::equal(w.begin() + d, w.end(), w.begin()))
      return false;
  return true;
}

}  // namespace

LanguageSample enumerate(const Era& era, const ExplorationConfig& cfg, LanguageKind kind)
{
  if (!cfg.depth || *cfg.depth < 0)
    throw std::invalid_argument("language enumeration needs a depth bound");
  if ((kind == LanguageKind::Buchi || kind == LanguageKind::Reach) && era.automaton().accepting.empty())
    throw std::invalid_argument(std::string(to_string(kind)) + " semantics needs accepting locations");

  const std::size_t k = static_cast<std::size_t>(*cfg.depth);
  // Cycles may run past the word bound, so the lasso check needs the whole graph.
  ExplorationConfig graph_cfg = cfg;
  if (kind == LanguageKind::Buchi)
    graph_cfg.depth.reset();
  const ZoneGraph graph = zone_graph(era, graph_cfg);
  const auto& alphabet = era.alphabet();

  LanguageSample sample;
  sample.kind = kind;
  sample.depth = *cfg.depth;

  std::vector<std::pair<IndexWord, NodeSet>> level{{{}, {0}}};
  std::vector<std::pair<IndexWord, NodeSet>> all_levels;
  for (std::size_t len = 0; len <= k && !level.empty(); ++len) {
    std::vector<std::pair<IndexWord, NodeSet>> next_level;
    for (auto& [word, nodes] : level) {
      Word named = to_names(word, alphabet);
      bool blocking = false, accepting = false;
      for (auto n : nodes) {
        blocking = blocking || graph.nodes[n].blocking;
        accepting = accepting || era.accepting(graph.nodes[n].location);
      }
      sample.prefix_words.insert(named);
      switch (kind) {
      case LanguageKind::Maximal:
        if (blocking)
          sample.maximal_finite_words.insert(named);
        break;
      case LanguageKind::Safety: sample.accepted_words.insert(named); break;
      case LanguageKind::Reach:
        if (accepting)
          sample.accepted_words.insert(named);
        break;
      case LanguageKind::Buchi: break;
      }
      if (len < k)
        for (auto& [action, targets] : step_sets(graph, nodes)) {
          IndexWord extended = word;
          extended.push_back(action);
          next_level.emplace_back(std::move(extended), std::move(targets));
        }
      if (kind == LanguageKind::Buchi && len < k)
        all_levels.emplace_back(word, nodes);
    }
    level = std::move(next_level);
  }

  if (kind == LanguageKind::Buchi) {
    // Depth-first over cycle words v, tracking every path that reads v once.
    // A stem u qualifies when some node it reaches can read v forever
    // through accepting nodes.
    std::vector<std::pair<IndexWord, std::vector<Track>>> todo;
    std::vector<Track> initial;
    for (std::size_t n = 0; n < graph.nodes.size(); ++n)
      initial.push_back({n, n, false});
    todo.emplace_back(IndexWord{}, std::move(initial));
    while (!todo.empty()) {
      auto [cycle, tracks] = std::move(todo.back());
      todo.pop_back();
      if (!cycle.empty() && primitive(cycle)) {
        std::vector<bool> good = lasso_sources(graph.nodes.size(), tracks);
        Word named_cycle = to_names(cycle, alphabet);
        for (const auto& [stem, nodes] : all_levels) {
          if (stem.size() + cycle.size() > k)
            break;
          if (!stem.empty() && stem.back() == cycle.back())
            continue;
          if (std::any_of(nodes.begin(), nodes.end(), [&](std::size_t n) { return good[n]; }))
            sample.lassos.insert(Lasso{to_names(stem, alphabet), named_cycle});
        }
      }
      if (cycle.size() == k)
        continue;
      std::map<std::size_t, std::vector<Track>> by_action;
      for (const auto& t : tracks)
        for (const auto& arc : graph.arcs[t.current])
          by_action[arc.action].push_back(
              {t.start, arc.target, t.accepting || era.accepting(graph.nodes[arc.target].location)});
      for (auto& [action, next] : by_action) {
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        IndexWord extended = cycle;
        extended.push_back(action);
        todo.emplace_back(std::move(extended), std::move(next));
      }
    }
  }
  return sample;
}

namespace {

template <typename Set, typename Less>
std::optional<std::pair<typename Set::value_type, Side>> first_difference(const Set& left, const Set& right, Less less)
{
  std::optional<std::pair<typename Set::value_type, Side>> best;
  auto consider = [&](const Set& mine, const Set& other, Side side) {
    for (const auto& item : mine) {
      if (other.contains(item))
        continue;
      if (!best || less(item, best->first))
        best = {item, side};
      break;  // sets are ordered, so the first miss is the smallest
    }
  };
  consider(left, right, Side::Left);
  consider(right, left, Side::Right);
  return best;
}

}  // namespace

Verdict compare(const LanguageSample& left, const LanguageSample& right)
{
  if (left.kind != right.kind)
    throw std::invalid_argument("cannot compare samples of different semantics");
  if (left.depth != right.depth)
    throw std::invalid_argument("cannot compare samples of different depths");

  Verdict verdict;
  verdict.depth = left.depth;
  auto check_words = [&](const WordSet& l, const WordSet& r, const char* name) {
    auto diff = first_difference(l, r, ShortLex{});
    if (!diff)
      return;
    if (!verdict.equal && !ShortLex{}(diff->first, *verdict.word))
      return;
    verdict.equal = false;
    verdict.set = name;
    verdict.word = diff->first;
    verdict.owner = diff->second;
  };

  switch (left.kind) {
  case LanguageKind::Maximal:
    check_words(left.prefix_words, right.prefix_words, "prefix_words");
    check_words(left.maximal_finite_words, right.maximal_finite_words, "maximal_finite_words");
    break;
  case LanguageKind::Reach:
  case LanguageKind::Safety: check_words(left.accepted_words, right.accepted_words, "accepted_words"); break;
  case LanguageKind::Buchi:
    if (auto diff = first_difference(left.lassos, right.lassos, LassoOrder{})) {
      verdict.equal = false;
      verdict.set = "lassos";
      verdict.lasso = diff->first;
      verdict.owner = diff->second;
    }
    break;
  }
  return verdict;
}

std::string format_word(const Word& word)
{
  if (word.empty())
    return "<eps>";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0)
      out += ' ';
    out += word[i];
  }
  return out;
}

std::string format_lasso(const Lasso& lasso) { return format_word(lasso.stem) + " | " + format_word(lasso.cycle); }

std::string format_sample(const LanguageSample& sample)
{
  std::ostringstream out;
  out << "semantics: " << to_string(sample.kind) << '\n' << "depth: " << sample.depth << '\n';
  auto section = [&out](const char* name, const WordSet& words) {
    out << name << ": " << words.size() << '\n';
    for (const auto& w : words)
      out << format_word(w) << '\n';
  };
  switch (sample.kind) {
  case LanguageKind::Maximal:
    section("prefix_words", sample.prefix_words);
    section("maximal_finite_words", sample.maximal_finite_words);
    break;
  case LanguageKind::Reach:
  case LanguageKind::Safety: section("accepted_words", sample.accepted_words); break;
  case LanguageKind::Buchi:
    out << "lassos: " << sample.lassos.size() << '\n';
    for (const auto& lasso : sample.lassos)
      out << format_lasso(lasso) << '\n';
    break;
  }
  return out.str();
}

std::string format_verdict(const Verdict& verdict)
{
  if (verdict.equal)
    return "equal up to bound " + std::to_string(verdict.depth);
  std::string what = verdict.lasso ? format_lasso(*verdict.lasso) : format_word(*verdict.word);
  return "differs: " + verdict.set + " entry '" + what + "' only on the " +
         (verdict.owner == Side::Left ? "left" : "right") + " side";
}

}  // namespace pera
