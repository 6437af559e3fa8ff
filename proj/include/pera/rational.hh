#ifndef PERA_RATIONAL_HH
#define PERA_RATIONAL_HH

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace pera {

using Rational = boost::rational<std::int64_t>;

// Under C++20 rewritten comparisons, boost's mixed rational/integer equality
// recurses forever. Deleting these makes such comparisons ambiguous, so they
// fail to compile; compare against Rational(n) instead.
template <std::integral T>
bool operator==(const Rational&, T) = delete;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Accepts `N`, `-N` and `N/D`.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

}  // namespace pera

#endif  // PERA_RATIONAL_HH
