// Set-theoretic reference semantics for zones, evaluated point by point.
//
// A zone is a list of raw constraints x_i - x_j < / <= c over non-negative
// clocks. Derived operations are membership predicates that search for
// witnesses explicitly. Sample points live on the half-integer grid; delays
// and erased coordinates are searched on the quarter grid, which is fine
// enough because every interval endpoint involved is a half-integer.

#ifndef PERA_TESTS_ORACLE_HH
#define PERA_TESTS_ORACLE_HH

#include <functional>
#include <random>
#include <vector>

#include "pera/zones.hh"

namespace oracle {

using pera::ClockValuation;
using pera::Rational;

struct Constraint {
  std::size_t i, j;
  bool strict;
  std::int64_t c;
};

using Set = std::function<bool(const ClockValuation&)>;

inline bool holds(const Constraint& k, const ClockValuation& w)
{
  Rational d = w[k.i] - w[k.j];
  return k.strict ? d < k.c : d <= k.c;
}

inline Set of(const std::vector<Constraint>& cs)
{
  return [cs](const ClockValuation& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i] < 0)
        return false;
    for (const auto& k : cs)
      if (!holds(k, w))
        return false;
    return true;
  };
}

inline pera::Dbm to_dbm(std::size_t clocks, const std::vector<Constraint>& cs)
{
  pera::Dbm z(clocks);
  for (const auto& k : cs)
    z.tighten(k.i, k.j, k.strict ? pera::Bound::lt(k.c) : pera::Bound::le(k.c));
  return canonicalize(z);
}

inline std::vector<Rational> quarter_steps(std::int64_t upto)
{
  std::vector<Rational> out;
  for (std::int64_t q = 0; q <= 4 * upto; ++q)
    out.emplace_back(q, 4);
  return out;
}

inline ClockValuation shifted(ClockValuation w, const Rational& d)
{
  for (std::size_t i = 1; i < w.size(); ++i)
    w[i] += d;
  return w;
}

inline Set up(Set z)
{
  return [z](const ClockValuation& w) {
    for (const auto& d : quarter_steps(6))
      if (z(shifted(w, -d)))
        return true;
    return false;
  };
}

inline Set down(Set z)
{
  return [z](const ClockValuation& w) {
    for (const auto& d : quarter_steps(12))
      if (z(shifted(w, d)))
        return true;
    return false;
  };
}

inline Set reset(Set z, std::size_t clock)
{
  return [z, clock](const ClockValuation& w) {
    if (w[clock] != Rational(0))
      return false;
    ClockValuation v = w;
    for (const auto& x : quarter_steps(12)) {
      v[clock] = x;
      if (z(v))
        return true;
    }
    return false;
  };
}

inline Set intersection(Set a, Set b)
{
  return [a, b](const ClockValuation& w) { return a(w) && b(w); };
}

inline Set difference(Set a, Set b)
{
  return [a, b](const ClockValuation& w) { return a(w) && !b(w); };
}

/// Points of `within` that can delay, staying in `within`, into `target`.
inline Set time_pred(Set target, Set within)
{
  return [target, within](const ClockValuation& w) {
    for (const auto& d : quarter_steps(12)) {
      ClockValuation v = shifted(w, d);
      if (!within(v))
        return false;
      if (target(v))
        return true;
    }
    return false;
  };
}

/// Every point of {0, 1/2, ..., 5}^clocks, slot 0 included.
inline std::vector<ClockValuation> grid(std::size_t clocks)
{
  std::vector<ClockValuation> out{ClockValuation{Rational(0)}};
  for (std::size_t c = 0; c < clocks; ++c) {
    std::vector<ClockValuation> next;
    for (const auto& w : out)
      for (std::int64_t h = 0; h <= 10; ++h) {
        ClockValuation v = w;
        v.emplace_back(h, 2);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Constraint> random_constraints(std::mt19937& rng, std::size_t clocks)
{
  std::uniform_int_distribution<int> count(1, 4), index(0, static_cast<int>(clocks)), constant(-4, 4),
      coin(0, 1);
  std::vector<Constraint> cs;
  for (int n = count(rng); n > 0; --n) {
    std::size_t i = index(rng), j = index(rng);
    if (i == j)
      continue;
    cs.push_back({i, j, coin(rng) == 1, constant(rng)});
  }
  return cs;
}

}  // namespace oracle

#endif  // PERA_TESTS_ORACLE_HH
