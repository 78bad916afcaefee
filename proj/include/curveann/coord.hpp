#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "curveann/error.hpp"

#ifndef CURVEANN_COORD_LIMIT_BITS
#define CURVEANN_COORD_LIMIT_BITS 50
#endif

namespace curveann {

/// Fixed-point coordinate: an integer numerator over a scale that is global to
/// a data set (the scale itself lives with whoever parsed the data). All
/// arithmetic is exact and checked against kLimit.
class Coord {
 public:
  using rep = std::int64_t;
  static constexpr rep kLimit = rep{1} << CURVEANN_COORD_LIMIT_BITS;

  constexpr Coord() = default;
  constexpr explicit Coord(rep v) : v_(checked(v)) {}

  [[nodiscard]] constexpr rep raw() const { return v_; }

  constexpr auto operator<=>(const Coord&) const = default;

  friend constexpr Coord operator+(Coord a, Coord b) { return Coord(add(a.v_, b.v_)); }
  friend constexpr Coord operator-(Coord a, Coord b) { return Coord(add(a.v_, -b.v_)); }
  friend constexpr Coord operator-(Coord a) { return Coord(-a.v_); }
  friend constexpr Coord operator*(Coord a, rep f) { return Coord(mul(a.v_, f)); }
  friend constexpr Coord operator*(rep f, Coord a) { return Coord(mul(a.v_, f)); }

  constexpr Coord& operator+=(Coord o) { return *this = *this + o; }
  constexpr Coord& operator-=(Coord o) { return *this = *this - o; }

  friend std::ostream& operator<<(std::ostream& os, Coord c) { return os << c.v_; }

 private:
  static constexpr rep checked(rep v) {
    if (v > kLimit || v < -kLimit) {
      throw OverflowError("coordinate magnitude exceeds limit: " + std::to_string(v));
    }
    return v;
  }
  static constexpr rep add(rep a, rep b) {
    rep out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("coordinate addition overflow");
    return out;
  }
  static constexpr rep mul(rep a, rep b) {
    rep out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("coordinate multiplication overflow");
    return out;
  }

  rep v_ = 0;
};

inline constexpr Coord abs(Coord c) { return c < Coord{} ? -c : c; }

/// Distance between two 1D values.
inline constexpr Coord dist(Coord a, Coord b) { return abs(a - b); }

/// Exact floor(value / width) for width > 0.
inline constexpr std::int64_t floor_div(std::int64_t value, std::int64_t width) {
  std::int64_t q = value / width;
  if ((value % width != 0) && (value < 0)) --q;
  return q;
}

/// Small positive rational, used for approximation errors such as 1/4.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw InvalidParams("ratio with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  constexpr bool operator==(const Ratio&) const = default;
  constexpr auto operator<=>(const Ratio& o) const {
    return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
  }

  /// this * value / divisor, or throws InvalidParams if not an integer.
  [[nodiscard]] Coord scale_exact(Coord value, std::int64_t divisor = 1) const {
    const __int128 n = static_cast<__int128>(num) * value.raw();
    const __int128 d = static_cast<__int128>(den) * divisor;
    if (d == 0 || n % d != 0) {
      throw InvalidParams("eps*delta/" + std::to_string(divisor) +
                          " is not representable at the current fixed-point scale");
    }
    const __int128 q = n / d;
    if (q > Coord::kLimit || q < -Coord::kLimit) throw OverflowError("scaled value out of range");
    return Coord(static_cast<std::int64_t>(q));
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) {
    return os << r.num << '/' << r.den;
  }
};

}  // namespace curveann
