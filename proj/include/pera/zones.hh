// Difference-bound matrices and federations.
//
// A Dbm over n clocks is an (n+1)x(n+1) matrix; index 0 is the reference
// clock (constant 0) and clock k of the alphabet lives at index k+1. Entry
// (i, j) bounds x_i - x_j. Every public operation returns a canonical
// (shortest-path closed) matrix or the empty zone.

#ifndef PERA_ZONES_HH
#define PERA_ZONES_HH

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pera/core.hh"
#include "pera/rational.hh"

namespace pera {

/// Upper bound `(c, <)` or `(c, <=)` or +inf, ordered by tightness.
class Bound {
 public:
  static constexpr Bound le(std::int64_t c) { return Bound(2 * c + 1); }
  static constexpr Bound lt(std::int64_t c) { return Bound(2 * c); }
  static constexpr Bound infinity() { return Bound(kInfinite); }

  constexpr bool is_infinite() const { return raw_ == kInfinite; }
  constexpr std::int64_t value() const { return raw_ >> 1; }
  constexpr bool strict() const { return (raw_ & 1) == 0; }
  constexpr std::int64_t raw() const { return raw_; }

  constexpr Bound operator+(Bound other) const
  {
    if (is_infinite() || other.is_infinite())
      return infinity();
    return Bound(2 * (value() + other.value()) + (raw_ & other.raw_ & 1));
  }

  /// The bound on x_j - x_i equivalent to the negation of this bound on x_i - x_j.
  constexpr Bound complement() const { return Bound(2 * (-value()) + (strict() ? 1 : 0)); }

  constexpr auto operator<=>(const Bound&) const = default;

  /// Does `diff` (a value of x_i - x_j) satisfy this bound?
  bool admits(const Rational& diff) const;

 private:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();
  constexpr explicit Bound(std::int64_t raw) : raw_(raw) {}
  std::int64_t raw_;
};

/// Clock values indexed like Dbm rows: slot 0 is the reference clock and stays 0.
using ClockValuation = std::vector<Rational>;

class Dbm {
 public:
  /// All clocks non-negative, otherwise unconstrained.
  explicit Dbm(std::size_t clocks);
  static Dbm zero(std::size_t clocks);
  static Dbm empty(std::size_t clocks);

  std::size_t clocks() const { return dim_ - 1; }
  std::size_t dim() const { return dim_; }
  Bound operator()(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  bool is_empty() const { return empty_; }

  /// Sets x_i - x_j to min(current, b) without closing; call canonicalize after.
  void tighten(std::size_t i, std::size_t j, Bound b);
  /// Overwrites entry (i, j); for building matrices in tests and operations.
  void set(std::size_t i, std::size_t j, Bound b) { m_[i * dim_ + j] = b; }

  friend bool operator==(const Dbm& a, const Dbm& b);
  std::size_t hash() const;

  friend Dbm canonicalize(Dbm z);

 private:
  std::size_t dim_;
  std::vector<Bound> m_;
  bool empty_ = false;
};

Dbm canonicalize(Dbm z);
bool is_empty(const Dbm& z);
bool contains(const Dbm& z, const ClockValuation& w);
/// Is `inner` a subset of `outer`?
bool includes(const Dbm& outer, const Dbm& inner);

/// Time successors: upper bounds on single clocks are dropped.
Dbm up(const Dbm& z);
/// Time predecessors on the non-negative orthant.
Dbm down(const Dbm& z);
/// Image of z under x_clock := 0; `clock` is a row index in [1, dim).
Dbm reset(const Dbm& z, std::size_t clock);
Dbm constrain(const Dbm& z, std::size_t i, std::size_t j, Bound b);
Dbm intersect(const Dbm& a, const Dbm& b);
/// Throws std::logic_error when the guard still mentions a parameter.
Dbm intersect(const Dbm& z, const Guard& guard, const ActionAlphabet& alphabet);
/// Classic maximal-constant widening (Extra_M) with a uniform constant.
Dbm extrapolate(const Dbm& z, std::int64_t max_constant);
/// Points of `within` that can let time pass into `target` without leaving
/// `within`. Both arguments must be convex, which every Dbm is.
Dbm time_pred(const Dbm& target, const Dbm& within);

/// Chooses a value for coordinate `k` compatible with the entries of `z`
/// that relate it to coordinates marked in `known` (slot 0 is always known).
std::optional<Rational> pick_coordinate(const Dbm& z, const ClockValuation& w, std::size_t k,
                                        const std::vector<bool>& known);
/// Some rational point of `z`, or nullopt when it is empty.
std::optional<ClockValuation> pick_point(const Dbm& z);

/// Prints one `x_i - x_j < c` or `x_i - x_j <= c` line per finite entry.
/// `names` holds the clock names (without the reference clock).
std::string to_string(const Dbm& z, const std::vector<std::string>& names);

/// Finite union of non-empty canonical zones.
class Federation {
 public:
  explicit Federation(std::size_t clocks) : clocks_(clocks) {}
  explicit Federation(const Dbm& z);

  void add(const Dbm& z);
  void add(const Federation& other);

  bool is_empty() const { return members_.empty(); }
  std::size_t clocks() const { return clocks_; }
  const std::vector<Dbm>& members() const { return members_; }
  bool contains(const ClockValuation& w) const;

 private:
  std::size_t clocks_;
  std::vector<Dbm> members_;
};

Federation subtract(const Dbm& a, const Dbm& b);
Federation subtract(const Federation& a, const Federation& b);
Federation intersect(const Federation& a, const Dbm& b);

}  // namespace pera

#endif  // PERA_ZONES_HH
