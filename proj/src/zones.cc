#include "pera/zones.hh"

#include <sstream>
#include <stdexcept>

namespace pera {

namespace {

constexpr Bound kLeZero = Bound::le(0);

}  // namespace

bool Bound::admits(const Rational& diff) const
{
  if (is_infinite())
    return true;
  return strict() ? diff < value() : diff <= value();
}

Dbm::Dbm(std::size_t clocks) : dim_(clocks + 1), m_(dim_ * dim_, Bound::infinity())
{
  for (std::size_t i = 0; i < dim_; ++i) {
    set(i, i, kLeZero);
    set(0, i, kLeZero);
  }
}

Dbm Dbm::zero(std::size_t clocks)
{
  Dbm z(clocks);
  for (std::size_t i = 0; i < z.dim_; ++i)
    for (std::size_t j = 0; j < z.dim_; ++j)
      z.set(i, j, kLeZero);
  return z;
}

Dbm Dbm::empty(std::size_t clocks)
{
  Dbm z(clocks);
  z.empty_ = true;
  return z;
}

void Dbm::tighten(std::size_t i, std::size_t j, Bound b)
{
  if (b < (*this)(i, j))
    set(i, j, b);
}

bool operator==(const Dbm& a, const Dbm& b)
{
  if (a.dim_ != b.dim_)
    return false;
  if (a.empty_ || b.empty_)
    return a.empty_ && b.empty_;
  return a.m_ == b.m_;
}

std::size_t Dbm::hash() const
{
  if (empty_)
    return 0;
  std::size_t h = dim_;
  for (const auto& b : m_)
    h = h * 1000003u ^ static_cast<std::size_t>(b.raw());
  return h;
}

Dbm canonicalize(Dbm z)
{
  if (z.empty_)
    return z;
  const std::size_t n = z.dim_;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      Bound ik = z(i, k);
      if (ik.is_infinite())
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        Bound via = ik + z(k, j);
        if (via < z(i, j))
          z.set(i, j, via);
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    if (z(i, i) < kLeZero) {
      z.empty_ = true;
      return z;
    }
  return z;
}

bool is_empty(const Dbm& z) { return z.is_empty(); }

bool contains(const Dbm& z, const ClockValuation& w)
{
  if (z.is_empty())
    return false;
  if (w.size() != z.dim())
    throw std::invalid_argument("clock valuation dimension mismatch");
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t j = 0; j < z.dim(); ++j)
      if (i != j && !z(i, j).admits(w[i] - w[j]))
        return false;
  return true;
}

bool includes(const Dbm& outer, const Dbm& inner)
{
  if (inner.is_empty())
    return true;
  if (outer.is_empty())
    return false;
  for (std::size_t i = 0; i < outer.dim(); ++i)
    for (std::size_t j = 0; j < outer.dim(); ++j)
      if (outer(i, j) < inner(i, j))
        return false;
  return true;
}

Dbm up(const Dbm& z)
{
  if (z.is_empty())
    throw std::invalid_argument("up() of an empty zone");
  Dbm out = z;
  for (std::size_t i = 1; i < out.dim(); ++i)
    out.set(i, 0, Bound::infinity());
  return out;
}

Dbm down(const Dbm& z)
{
  if (z.is_empty())
    return z;
  Dbm out = z;
  for (std::size_t j = 1; j < out.dim(); ++j)
    out.set(0, j, kLeZero);
  return canonicalize(std::move(out));
}

Dbm reset(const Dbm& z, std::size_t clock)
{
  if (clock == 0 || clock >= z.dim())
    throw std::out_of_range("reset of unknown clock index " + std::to_string(clock));
  if (z.is_empty())
    return z;
  Dbm out = z;
  for (std::size_t j = 0; j < out.dim(); ++j) {
    out.set(clock, j, z(0, j));
    out.set(j, clock, z(j, 0));
  }
  out.set(clock, clock, kLeZero);
  return out;
}

Dbm constrain(const Dbm& z, std::size_t i, std::size_t j, Bound b)
{
  if (z.is_empty() || b >= z(i, j))
    return z;
  Dbm out = z;
  out.set(i, j, b);
  return canonicalize(std::move(out));
}

Dbm intersect(const Dbm& a, const Dbm& b)
{
  if (a.dim() != b.dim())
    throw std::invalid_argument("zone dimension mismatch");
  if (a.is_empty())
    return a;
  if (b.is_empty())
    return b;
  Dbm out = a;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      out.tighten(i, j, b(i, j));
  return canonicalize(std::move(out));
}

Dbm intersect(const Dbm& z, const Guard& guard, const ActionAlphabet& alphabet)
{
  if (z.is_empty() || guard.is_true())
    return z;
  Dbm out = z;
  for (const auto& atom : guard.atoms) {
    if (atom.param)
      throw std::logic_error("parametric atom '" + to_string(atom) + "' in zone intersection; valuate first");
    auto index = alphabet.clock_index(atom.clock);
    if (!index)
      throw std::out_of_range("unknown clock '" + atom.clock + "'");
    std::size_t i = *index + 1;
    std::int64_t c = atom.offset;
    switch (atom.rel) {
    case Relation::Less: out.tighten(i, 0, Bound::lt(c)); break;
    case Relation::LessEq: out.tighten(i, 0, Bound::le(c)); break;
    case Relation::Equal:
      out.tighten(i, 0, Bound::le(c));
      out.tighten(0, i, Bound::le(-c));
      break;
    case Relation::GreaterEq: out.tighten(0, i, Bound::le(-c)); break;
    case Relation::Greater: out.tighten(0, i, Bound::lt(-c)); break;
    }
  }
  return canonicalize(std::move(out));
}

Dbm extrapolate(const Dbm& z, std::int64_t max_constant)
{
  if (z.is_empty())
    return z;
  const Bound upper = Bound::le(max_constant);
  const Bound lower = Bound::le(-max_constant);
  Dbm out = z;
  bool changed = false;
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t j = 0; j < z.dim(); ++j) {
      if (i == j)
        continue;
      Bound b = z(i, j);
      if (i != 0 && !b.is_infinite() && b > upper) {
        out.set(i, j, Bound::infinity());
        changed = true;
      } else if (j != 0 && b < lower) {
        out.set(i, j, Bound::lt(-max_constant));
        changed = true;
      }
    }
  return changed ? canonicalize(std::move(out)) : out;
}

Dbm time_pred(const Dbm& target, const Dbm& within)
{
  // `within` is convex: if w and w+d both lie in it, so does the whole delay.
  return intersect(within, down(intersect(target, within)));
}

std::optional<Rational> pick_coordinate(const Dbm& z, const ClockValuation& w, std::size_t k,
                                        const std::vector<bool>& known)
{
  if (z.is_empty())
    return std::nullopt;
  Rational lo(0), hi(0);
  bool lo_strict = false, hi_strict = false, hi_finite = false;
  for (std::size_t j = 0; j < z.dim(); ++j) {
    if (j == k || (j != 0 && !known[j]))
      continue;
    Rational wj = j == 0 ? Rational(0) : w[j];
    if (Bound b = z(k, j); !b.is_infinite()) {
      Rational v = wj + b.value();
      if (!hi_finite || v < hi || (v == hi && b.strict())) {
        hi_strict = (hi_finite && v == hi) ? (hi_strict || b.strict()) : b.strict();
        hi = v;
        hi_finite = true;
      }
    }
    if (Bound b = z(j, k); !b.is_infinite()) {
      Rational v = wj - b.value();
      if (v > lo || (v == lo && b.strict())) {
        lo_strict = v == lo ? (lo_strict || b.strict()) : b.strict();
        lo = v;
      }
    }
  }
  if (!hi_finite)
    return lo_strict ? lo + 1 : lo;
  if (lo > hi || (lo == hi && (lo_strict || hi_strict)))
    return std::nullopt;
  if (!lo_strict)
    return lo;
  if (!hi_strict)
    return hi;
  return (lo + hi) / 2;
}

std::optional<ClockValuation> pick_point(const Dbm& z)
{
  if (z.is_empty())
    return std::nullopt;
  ClockValuation w(z.dim(), Rational(0));
  std::vector<bool> known(z.dim(), false);
  known[0] = true;
  for (std::size_t k = 1; k < z.dim(); ++k) {
    auto value = pick_coordinate(z, w, k, known);
    if (!value)
      return std::nullopt;
    w[k] = *value;
    known[k] = true;
  }
  return w;
}

std::string to_string(const Dbm& z, const std::vector<std::string>& names)
{
  if (z.is_empty())
    return "false\n";
  auto name = [&](std::size_t i) { return i == 0 ? std::string("0") : names.at(i - 1); };
  std::ostringstream out;
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t j = 0; j < z.dim(); ++j) {
      if (i == j || z(i, j).is_infinite())
        continue;
      out << name(i) << " - " << name(j) << (z(i, j).strict() ? " < " : " <= ") << z(i, j).value() << '\n';
    }
  return out.str();
}

Federation::Federation(const Dbm& z) : clocks_(z.clocks())
{
  add(z);
}

void Federation::add(const Dbm& z)
{
  if (z.clocks() != clocks_)
    throw std::invalid_argument("federation dimension mismatch");
  if (!z.is_empty())
    members_.push_back(z);
}

void Federation::add(const Federation& other)
{
  for (const auto& z : other.members_)
    add(z);
}

bool Federation::contains(const ClockValuation& w) const
{
  for (const auto& z : members_)
    if (pera::contains(z, w))
      return true;
  return false;
}

Federation subtract(const Dbm& a, const Dbm& b)
{
  Federation out(a.clocks());
  if (a.is_empty())
    return out;
  if (intersect(a, b).is_empty()) {
    out.add(a);
    return out;
  }
  // Peel off one constraint of b at a time: the part of the remainder that
  // violates it is outside b; the part that satisfies it carries on.
  Dbm rest = a;
  for (std::size_t i = 0; i < b.dim() && !rest.is_empty(); ++i)
    for (std::size_t j = 0; j < b.dim() && !rest.is_empty(); ++j) {
      if (i == j || b(i, j).is_infinite() || b(i, j) >= rest(i, j))
        continue;
      out.add(constrain(rest, j, i, b(i, j).complement()));
      rest = constrain(rest, i, j, b(i, j));
    }
  return out;
}

Federation subtract(const Federation& a, const Federation& b)
{
  Federation current = a;
  for (const auto& z : b.members()) {
    Federation next(a.clocks());
    for (const auto& piece : current.members())
      next.add(subtract(piece, z));
    current = std::move(next);
    if (current.is_empty())
      break;
  }
  return current;
}

Federation intersect(const Federation& a, const Dbm& b)
{
  Federation out(a.clocks());
  for (const auto& z : a.members())
    out.add(intersect(z, b));
  return out;
}

}  // namespace pera
