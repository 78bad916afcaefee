#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/error.hpp"

namespace curveann {

namespace detail {

// Reachable or free part of one cell boundary, as parameters along an edge of
// length `len`. Parameters are exact integers in 1D: the signed offset of the
// point from the edge start, measured in the edge direction.
struct ParamInterval {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
  std::int64_t len = 0;

  [[nodiscard]] bool empty() const { return lo > hi; }
  [[nodiscard]] bool contains_start() const { return !empty() && lo == 0; }
  [[nodiscard]] bool reaches_end() const { return !empty() && hi == len; }
  [[nodiscard]] ParamInterval clip_from(const ParamInterval& o) const {
    ParamInterval r = *this;
    r.lo = std::max(lo, o.lo);
    return r;
  }
  static ParamInterval none() { return {}; }
};

// Points of the edge a->b within distance d of q.
inline ParamInterval free_interval_1d(std::int64_t a, std::int64_t b, std::int64_t q,
                                      std::int64_t d) {
  const std::int64_t lo_v = std::max(std::min(a, b), q - d);
  const std::int64_t hi_v = std::min(std::max(a, b), q + d);
  ParamInterval iv;
  if (lo_v > hi_v) {
    iv.len = b >= a ? b - a : a - b;
    return iv;
  }
  if (b >= a) return {lo_v - a, hi_v - a, b - a};
  return {a - hi_v, a - lo_v, a - b};
}

// Free-space reachability over the (m-1) x (k-1) cell grid, row by row.
// free_p(i, j): free part of P-edge i against Q-vertex j.
// free_q(i, j): free part of Q-edge j against P-vertex i.
template <class Iv, class FreeP, class FreeQ>
bool reach_corner(std::size_t m, std::size_t k, FreeP&& free_p, FreeQ&& free_q) {
  std::vector<Iv> bottom(k - 1);
  bool chain = true;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    Iv f = free_q(0, j);
    bottom[j] = (chain && f.contains_start()) ? f : Iv::none();
    chain = chain && f.contains_start() && f.reaches_end();
  }
  chain = true;
  Iv left = Iv::none();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Iv lf = free_p(i, 0);
    left = (chain && lf.contains_start()) ? lf : Iv::none();
    chain = chain && lf.contains_start() && lf.reaches_end();
    for (std::size_t j = 0; j + 1 < k; ++j) {
      Iv rf = free_p(i, j + 1);
      Iv tf = free_q(i + 1, j);
      Iv right = !bottom[j].empty() ? rf : (!left.empty() ? rf.clip_from(left) : Iv::none());
      Iv top = !left.empty() ? tf : (!bottom[j].empty() ? tf.clip_from(bottom[j]) : Iv::none());
      if (right.empty()) right = Iv::none();
      if (top.empty()) top = Iv::none();
      bottom[j] = std::move(top);
      left = std::move(right);
    }
  }
  return left.reaches_end();
}

// ---- 2D: boundary parameters are quadratic surds u + s*sqrt(D) --------------

template <class Int>
int sgn(const Int& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// sign(y + s*sqrt(z)), z >= 0, s in {-1, 0, 1}
template <class Int>
int sign_linear(const Int& y, int s, const Int& z) {
  const int sy = sgn(y);
  if (s == 0 || z == 0) return sy;
  if (sy == 0 || sy == s) return s;
  const Int y2 = y * y;
  const int c = y2 > z ? 1 : (y2 < z ? -1 : 0);
  return sy > 0 ? c : -c;
}

template <class Int>
struct Surd {
  Int u = 0;
  int s = 0;
  Int d = 0;

  static Surd of(const Int& v) { return {v, 0, Int(0)}; }
};

// sign(a - b)
template <class Int>
int compare(const Surd<Int>& a, const Surd<Int>& b) {
  const Int x = a.u - b.u;
  const int s1 = (a.d == 0) ? 0 : a.s;
  const int s2 = (b.d == 0) ? 0 : -b.s;  // sign of the term -b.s*sqrt(b.d)
  // sign(x + s1*sqrt(d1) + s2*sqrt(d2)) = sign(L - R), L = x + s1 sqrt d1, R = -s2 sqrt d2
  const int sl = sign_linear(x, s1, a.d);
  const int sr = s2 == 0 ? 0 : -s2;
  if (sl != sr) return sl > sr ? 1 : -1;
  if (sl == 0) return 0;
  const Int y = x * x + a.d - b.d;
  const int sz = s1 * sgn(x);
  const Int z = Int(4) * x * x * a.d;
  const int t = sign_linear(y, sz, z);
  return sl * t;
}

template <class Int>
struct SurdInterval {
  Surd<Int> lo;
  Surd<Int> hi;
  Int len = 0;
  bool is_empty = true;

  [[nodiscard]] bool empty() const { return is_empty; }
  [[nodiscard]] bool contains_start() const {
    return !is_empty && compare(lo, Surd<Int>::of(Int(0))) == 0;
  }
  [[nodiscard]] bool reaches_end() const {
    return !is_empty && compare(hi, Surd<Int>::of(len)) == 0;
  }
  [[nodiscard]] SurdInterval clip_from(const SurdInterval& o) const {
    SurdInterval r = *this;
    if (r.is_empty) return r;
    if (compare(o.lo, r.lo) > 0) r.lo = o.lo;
    if (compare(r.lo, r.hi) > 0) r.is_empty = true;
    return r;
  }
  static SurdInterval none() { return {}; }
};

// Points a + t(b-a), parameterised by tau = t*|b-a|^2, within distance delta of q.
template <class Int>
SurdInterval<Int> free_interval_2d(Point a, Point b, Point q, std::int64_t delta) {
  const Int dx = Int(b.x.raw()) - a.x.raw();
  const Int dy = Int(b.y.raw()) - a.y.raw();
  const Int ex = Int(a.x.raw()) - q.x.raw();
  const Int ey = Int(a.y.raw()) - q.y.raw();
  const Int len = dx * dx + dy * dy;
  const Int c = ex * ex + ey * ey - Int(delta) * delta;
  SurdInterval<Int> iv;
  iv.len = len;
  if (len == 0) {
    if (c <= 0) {
      iv.lo = Surd<Int>::of(Int(0));
      iv.hi = Surd<Int>::of(Int(0));
      iv.is_empty = false;
    }
    return iv;
  }
  const Int bp = dx * ex + dy * ey;
  const Int disc = bp * bp - len * c;
  if (disc < 0) return iv;
  Surd<Int> lo{-bp, -1, disc};
  Surd<Int> hi{-bp, 1, disc};
  const auto zero = Surd<Int>::of(Int(0));
  const auto end = Surd<Int>::of(len);
  if (compare(lo, zero) < 0) lo = zero;
  if (compare(hi, end) > 0) hi = end;
  if (compare(lo, hi) > 0) return iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.is_empty = false;
  return iv;
}

template <class Int>
bool within_2d(Point a, Point b, std::int64_t delta) {
  const Int dx = Int(a.x.raw()) - b.x.raw();
  const Int dy = Int(a.y.raw()) - b.y.raw();
  return dx * dx + dy * dy <= Int(delta) * delta;
}

template <class Int>
bool decide_2d(const Curve& p, const Curve& q, std::int64_t delta) {
  const std::size_t m = p.size();
  const std::size_t k = q.size();
  if (m == 1 || k == 1) {
    const Curve& pt = m == 1 ? p : q;
    const Curve& other = m == 1 ? q : p;
    for (std::size_t i = 0; i < other.size(); ++i) {
      if (!within_2d<Int>(pt.point(0), other.point(i), delta)) return false;
    }
    return true;
  }
  if (!within_2d<Int>(p.front(), q.front(), delta) || !within_2d<Int>(p.back(), q.back(), delta)) {
    return false;
  }
  return reach_corner<SurdInterval<Int>>(
      m, k,
      [&](std::size_t i, std::size_t j) {
        return free_interval_2d<Int>(p.point(i), p.point(i + 1), q.point(j), delta);
      },
      [&](std::size_t i, std::size_t j) {
        return free_interval_2d<Int>(q.point(j), q.point(j + 1), p.point(i), delta);
      });
}

inline bool small_magnitude(const Curve& c, std::int64_t bound) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Point pt = c.point(i);
    if (pt.x.raw() > bound || pt.x.raw() < -bound || pt.y.raw() > bound || pt.y.raw() < -bound) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exact decision d_F(P, Q) <= delta for 1D vertex sequences.
inline bool frechet_decide_1d(std::span<const Coord> p, std::span<const Coord> q, Coord delta) {
  if (p.empty() || q.empty()) throw InvalidInput("frechet_decide: empty curve");
  const std::int64_t d = delta.raw();
  if (p.size() == 1 || q.size() == 1) {
    const auto pt = p.size() == 1 ? p[0] : q[0];
    const auto other = p.size() == 1 ? q : p;
    return std::all_of(other.begin(), other.end(),
                       [&](Coord v) { return dist(v, pt).raw() <= d; });
  }
  if (dist(p.front(), q.front()).raw() > d || dist(p.back(), q.back()).raw() > d) return false;
  // keep the shorter curve as the inner dimension
  if (q.size() > p.size()) std::swap(p, q);
  return detail::reach_corner<detail::ParamInterval>(
      p.size(), q.size(),
      [&](std::size_t i, std::size_t j) {
        return detail::free_interval_1d(p[i].raw(), p[i + 1].raw(), q[j].raw(), d);
      },
      [&](std::size_t i, std::size_t j) {
        return detail::free_interval_1d(q[j].raw(), q[j + 1].raw(), p[i].raw(), d);
      });
}

/// Exact decision d_F(P, Q) <= delta. 2D decisions compare squared distances and
/// cell-boundary quadratic roots symbolically, so no rounding is involved.
inline bool frechet_decide(const Curve& p, const Curve& q, Coord delta) {
  if (p.dim() != q.dim()) throw InvalidInput("frechet_decide: dimension mismatch");
  if (delta < Coord{}) throw InvalidInput("frechet_decide: negative threshold");
  if (p.dim() == 1) return frechet_decide_1d(p.xs(), q.xs(), delta);
  if (p.empty() || q.empty()) throw InvalidInput("frechet_decide: empty curve");
  constexpr std::int64_t kFast = std::int64_t{1} << 23;
  if (delta.raw() <= kFast && detail::small_magnitude(p, kFast) &&
      detail::small_magnitude(q, kFast)) {
    return detail::decide_2d<boost::multiprecision::int256_t>(p, q, delta.raw());
  }
  return detail::decide_2d<boost::multiprecision::cpp_int>(p, q, delta.raw());
}

/// Frontier of a free-space traversal of a fixed 1D curve P against a query curve
/// that grows one vertex at a time: for every edge of P, the reachable part of the
/// boundary line belonging to the current last query vertex.
class ReachFrontier {
 public:
  /// Frontier for the one-vertex prefix (q0); empty() if (p0, q0) is not free.
  static ReachFrontier start(std::span<const Coord> p, Coord q0, Coord delta) {
    ReachFrontier f;
    f.p_ = p;
    f.delta_ = delta.raw();
    f.last_ = q0.raw();
    if (p.size() == 1) {
      f.point_ok_ = dist(p[0], q0) <= delta;
      return f;
    }
    f.column_.resize(p.size() - 1);
    bool chain = true;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      auto lf = detail::free_interval_1d(p[i].raw(), p[i + 1].raw(), f.last_, f.delta_);
      f.column_[i] = (chain && lf.contains_start()) ? lf : detail::ParamInterval::none();
      chain = chain && lf.contains_start() && lf.reaches_end();
    }
    return f;
  }

  /// Frontier after appending vertex `next` to the query prefix.
  [[nodiscard]] ReachFrontier extend(Coord next) const {
    ReachFrontier f;
    f.p_ = p_;
    f.delta_ = delta_;
    f.last_ = next.raw();
    if (p_.size() == 1) {
      f.point_ok_ = point_ok_ && std::abs(p_[0].raw() - f.last_) <= delta_;
      return f;
    }
    f.column_.resize(column_.size());
    // bottom border: P-vertex 0 against the new query edge
    detail::ParamInterval bottom = detail::ParamInterval::none();
    if (column_[0].contains_start()) {
      auto bf = detail::free_interval_1d(last_, f.last_, p_[0].raw(), delta_);
      if (bf.contains_start()) bottom = bf;
    }
    for (std::size_t i = 0; i < column_.size(); ++i) {
      const auto& left = column_[i];
      auto rf = detail::free_interval_1d(p_[i].raw(), p_[i + 1].raw(), f.last_, delta_);
      auto tf = detail::free_interval_1d(last_, f.last_, p_[i + 1].raw(), delta_);
      auto right = !bottom.empty() ? rf
                                   : (!left.empty() ? rf.clip_from(left)
                                                    : detail::ParamInterval::none());
      auto top = !left.empty() ? tf
                               : (!bottom.empty() ? tf.clip_from(bottom)
                                                  : detail::ParamInterval::none());
      f.column_[i] = right.empty() ? detail::ParamInterval::none() : right;
      bottom = top.empty() ? detail::ParamInterval::none() : top;
    }
    return f;
  }

  /// No extension of the current prefix can stay within delta of P.
  [[nodiscard]] bool dead() const {
    if (p_.size() == 1) return !point_ok_;
    return std::all_of(column_.begin(), column_.end(), [](const auto& iv) { return iv.empty(); });
  }

  /// Smallest vertex index j such that P[j..] lies after every point of P that
  /// is reachable together with the current query vertex.
  [[nodiscard]] std::size_t tail_vertex() const {
    for (std::size_t i = column_.size(); i-- > 0;) {
      if (!column_[i].empty()) return column_[i].hi == 0 ? i : i + 1;
    }
    return 0;
  }

  /// The current prefix, taken as a whole curve, is within delta of P.
  [[nodiscard]] bool complete() const {
    if (p_.size() == 1) return point_ok_;
    return column_.back().reaches_end();
  }

 private:
  std::span<const Coord> p_;
  std::int64_t delta_ = 0;
  std::int64_t last_ = 0;
  bool point_ok_ = false;
  std::vector<detail::ParamInterval> column_;
};

}  // namespace curveann
