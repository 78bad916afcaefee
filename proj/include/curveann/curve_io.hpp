#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/error.hpp"

namespace curveann {

inline constexpr unsigned kMaxFractionDigits = 6;
inline constexpr unsigned kMaxScale = 12;

/// A decimal literal split into integer mantissa and fractional digit count:
/// value = mantissa / 10^digits.
struct Decimal {
  std::int64_t mantissa = 0;
  unsigned digits = 0;
};

inline Decimal parse_decimal(std::string_view text) {
  Decimal d;
  if (text.empty()) throw InvalidInput("empty number");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  bool any = false;
  bool frac = false;
  std::int64_t m = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !frac) {
      frac = true;
      continue;
    }
    if (c < '0' || c > '9') throw InvalidInput("malformed number '" + std::string(text) + "'");
    if (__builtin_mul_overflow(m, 10, &m) || __builtin_add_overflow(m, c - '0', &m)) {
      throw OverflowError("number too large: " + std::string(text));
    }
    any = true;
    if (frac) ++d.digits;
  }
  if (!any) throw InvalidInput("malformed number '" + std::string(text) + "'");
  if (d.digits > kMaxFractionDigits) {
    throw InvalidInput("more than 6 fractional digits in '" + std::string(text) + "'");
  }
  d.mantissa = neg ? -m : m;
  return d;
}

inline std::int64_t pow10(unsigned e) {
  std::int64_t p = 1;
  for (unsigned i = 0; i < e; ++i) p *= 10;
  return p;
}

/// Value of `d` at fixed-point scale 10^scale; throws if not representable.
inline Coord to_fixed(const Decimal& d, unsigned scale) {
  if (d.digits > scale) throw InvalidInput("number has more fractional digits than the scale");
  std::int64_t v = 0;
  if (__builtin_mul_overflow(d.mantissa, pow10(scale - d.digits), &v)) {
    throw OverflowError("number too large at this scale");
  }
  return Coord(v);
}

inline std::string format_fixed(std::int64_t raw, unsigned scale) {
  const bool neg = raw < 0;
  const std::uint64_t mag = neg ? 0 - static_cast<std::uint64_t>(raw) : static_cast<std::uint64_t>(raw);
  const auto p = static_cast<std::uint64_t>(pow10(scale));
  std::string out = (neg ? "-" : "") + std::to_string(mag / p);
  std::uint64_t rest = mag % p;
  if (rest != 0) {
    std::string f = std::to_string(rest);
    f.insert(0, scale - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

/// Parses an approximation error given as a decimal ("0.25") or fraction ("1/4").
inline Ratio parse_ratio(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const Decimal n = parse_decimal(text.substr(0, slash));
    const Decimal d = parse_decimal(text.substr(slash + 1));
    if (n.digits || d.digits) throw InvalidInput("fraction parts must be integers");
    return Ratio(n.mantissa, d.mantissa);
  }
  const Decimal d = parse_decimal(text);
  return Ratio(d.mantissa, pow10(d.digits));
}

/// Smallest decimal scale s >= min_digits (at most kMaxScale) at which delta
/// and eps * delta / divisor are whole numbers of units.
inline unsigned choose_scale(unsigned min_digits, const Decimal& delta, const Ratio& eps,
                             std::int64_t divisor) {
  for (unsigned s = std::max(min_digits, delta.digits); s <= kMaxScale; ++s) {
    try {
      (void)eps.scale_exact(to_fixed(delta, s), divisor);
      return s;
    } catch (const InvalidParams&) {
    }
  }
  throw InvalidParams("no decimal scale up to 10^12 represents eps * delta / " +
                      std::to_string(divisor) + " exactly");
}

/// One line of a curve file before scaling.
struct RawCurve {
  std::string id;
  int dim = 1;
  std::vector<Decimal> xs;
  std::vector<Decimal> ys;
  std::size_t line = 0;

  [[nodiscard]] unsigned max_digits() const {
    unsigned m = 0;
    for (const auto& d : xs) m = std::max(m, d.digits);
    for (const auto& d : ys) m = std::max(m, d.digits);
    return m;
  }

  [[nodiscard]] Curve to_curve(unsigned scale) const {
    std::vector<Coord> x;
    for (const auto& d : xs) x.push_back(to_fixed(d, scale));
    if (dim == 1) return Curve::line(std::move(x));
    std::vector<Point> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({x[i], to_fixed(ys[i], scale)});
    return Curve::plane(pts);
  }
};

/// Reads `id: x1 x2 ...` (1D) or `id: x1,y1 x2,y2 ...` (2D) lines. Blank lines
/// and lines starting with '#' are ignored.
inline std::vector<RawCurve> read_curve_file(std::istream& in) {
  std::vector<RawCurve> out;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    auto fail = [&](const std::string& msg) {
      throw InvalidInput("line " + std::to_string(lineno) + ": " + msg);
    };
    if (colon == std::string::npos) fail("missing ':' after curve id");
    RawCurve rc;
    rc.line = lineno;
    std::string id = line.substr(first, colon - first);
    while (!id.empty() && (id.back() == ' ' || id.back() == '\t')) id.pop_back();
    if (id.empty()) fail("empty curve id");
    rc.id = id;
    std::istringstream ss(line.substr(colon + 1));
    std::string tok;
    std::optional<int> dim;
    while (ss >> tok) {
      const auto comma = tok.find(',');
      const int this_dim = comma == std::string::npos ? 1 : 2;
      if (dim && *dim != this_dim) fail("mixed 1D and 2D vertices");
      dim = this_dim;
      try {
        if (this_dim == 1) {
          rc.xs.push_back(parse_decimal(tok));
        } else {
          rc.xs.push_back(parse_decimal(std::string_view(tok).substr(0, comma)));
          rc.ys.push_back(parse_decimal(std::string_view(tok).substr(comma + 1)));
        }
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (rc.xs.empty()) fail("curve without vertices");
    rc.dim = dim.value_or(1);
    for (const auto& s : seen) {
      if (s == rc.id) fail("duplicate curve id '" + rc.id + "'");
    }
    seen.push_back(rc.id);
    out.push_back(std::move(rc));
  }
  return out;
}

inline void write_curve(std::ostream& os, std::string_view id, const Curve& c, unsigned scale) {
  os << id << ':';
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << ' ' << format_fixed(c[i].raw(), scale);
    if (c.dim() == 2) os << ',' << format_fixed(c.point(i).y.raw(), scale);
  }
  os << '\n';
}

}  // namespace curveann
