// Depth-bounded untimed languages of valuated ERAs.
//
// Samples are computed on the zone graph: for every word of length <= k we
// track the set of graph nodes it can reach. Comparing two samples is a
// necessary condition for language equality, never a proof of it.

#ifndef PERA_LANGUAGE_HH
#define PERA_LANGUAGE_HH

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pera/semantics.hh"

namespace pera {

enum class LanguageKind { Maximal, Buchi, Reach, Safety };

LanguageKind parse_language_kind(std::string_view text);
std::string_view to_string(LanguageKind kind);

using Word = std::vector<std::string>;

/// Shorter words first, then lexicographic.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const;
};

using WordSet = std::set<Word, ShortLex>;

/// The ultimately periodic word stem . cycle^omega, kept in canonical form:
/// the cycle is primitive and the stem is as short as possible.
struct Lasso {
  Word stem;
  Word cycle;

  static Lasso canonical(Word stem, Word cycle);
  std::size_t size() const { return stem.size() + cycle.size(); }
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

struct LassoOrder {
  bool operator()(const Lasso& a, const Lasso& b) const;
};

using LassoSet = std::set<Lasso, LassoOrder>;

struct LanguageSample {
  LanguageKind kind = LanguageKind::Maximal;
  int depth = 0;
  WordSet prefix_words;
  WordSet maximal_finite_words;  // maximal semantics
  WordSet accepted_words;        // reach and safety semantics
  LassoSet lassos;               // Buchi semantics
};

/// cfg.depth is the bound k. Büchi lassos satisfy |stem| + |cycle| <= k.
LanguageSample enumerate(const Era& era, const ExplorationConfig& cfg, LanguageKind kind);

enum class Side { Left, Right };

struct Verdict {
  bool equal = true;
  int depth = 0;
  std::string set;  // which set differs
  Side owner = Side::Left;
  std::optional<Word> word;
  std::optional<Lasso> lasso;
};

/// Throws std::invalid_argument on mismatched semantics or depth.
Verdict compare(const LanguageSample& left, const LanguageSample& right);

std::string format_word(const Word& word);
std::string format_lasso(const Lasso& lasso);
std::string format_sample(const LanguageSample& sample);
std::string format_verdict(const Verdict& verdict);

}  // namespace pera

#endif  // PERA_LANGUAGE_HH
