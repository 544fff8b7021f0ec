#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>

#include "gaplab/error.hpp"

namespace gaplab {

__extension__ typedef __int128 int128;

/// Exact fraction kept in unreduced form, so an IDS value i/q remembers the
/// approximant size q it was counted at.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0) throw InvalidArgument("Rational: denominator must be positive");
  }

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  [[nodiscard]] Rational reduced() const {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
  }

  // Compares by value, not representation.
  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<int128>(a.num) * b.den == static_cast<int128>(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int128 lhs = static_cast<int128>(a.num) * b.den;
    const int128 rhs = static_cast<int128>(b.num) * a.den;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.num << '/' << r.den;
  }
};

}  // namespace gaplab
