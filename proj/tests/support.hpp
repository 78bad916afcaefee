#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curveann/curveann.hpp"

namespace testing_support {

using curveann::Coord;
using curveann::Curve;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return gen_() & 1; }

 private:
  std::mt19937_64 gen_;
};

/// Random normalized 1D curve with at most `max_m` raw vertices in [lo, hi].
inline Curve random_curve(Rng& rng, std::size_t min_m, std::size_t max_m, std::int64_t lo,
                          std::int64_t hi) {
  while (true) {
    const auto m = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(min_m),
                                                        static_cast<std::int64_t>(max_m)));
    std::vector<Coord> v;
    for (std::size_t i = 0; i < m; ++i) v.emplace_back(rng.uniform(lo, hi));
    Curve c = curveann::normalize(v);
    if (c.size() >= min_m) return c;
  }
}

/// Curve near `base`: every vertex perturbed by at most `jitter`, with
/// occasional extra wiggles inserted.
inline Curve perturb(Rng& rng, const Curve& base, std::int64_t jitter, std::size_t max_m) {
  while (true) {
    std::vector<Coord> v;
    for (std::size_t i = 0; i < base.size(); ++i) {
      v.emplace_back(base[i].raw() + rng.uniform(-jitter, jitter));
      if (i + 1 < base.size() && rng.uniform(0, 3) == 0) {
        const auto a = base[i].raw();
        const auto b = base[i + 1].raw();
        v.emplace_back((a + b) / 2 + rng.uniform(-jitter, jitter));
      }
    }
    Curve c = curveann::normalize(v);
    if (c.size() >= 2 && c.size() <= max_m) return c;
    if (base.size() <= max_m && base.size() >= 2) return base;
  }
}

/// Every coordinate multiplied by `factor` (1D or 2D).
inline Curve scaled(const Curve& c, std::int64_t factor) {
  if (c.dim() == 1) {
    std::vector<Coord> xs;
    for (Coord x : c.xs()) xs.push_back(x * factor);
    return Curve::line(std::move(xs));
  }
  std::vector<curveann::Point> pts;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto p = c.point(i);
    pts.push_back({p.x * factor, p.y * factor});
  }
  return Curve::plane(pts);
}

using Rational = boost::multiprecision::cpp_rational;

/// Independent 1D decision: full free-space table, parameters as fractions of
/// the edge in [0, 1], cell boundaries intersected explicitly.
inline bool reference_decide_1d(const Curve& p, const Curve& q, std::int64_t delta) {
  const auto m = p.size();
  const auto k = q.size();
  auto close = [&](std::int64_t a, std::int64_t b) { return (a > b ? a - b : b - a) <= delta; };
  if (m == 1 || k == 1) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!close(p[i].raw(), q[j].raw())) return false;
    return true;
  }
  struct Iv {
    bool ok = false;
    Rational lo, hi;
  };
  // free part of segment a->b against point x, as fractions of the segment
  auto free_iv = [&](std::int64_t a, std::int64_t b, std::int64_t x) {
    Iv r;
    if (a == b) {
      if (close(a, x)) r = {true, 0, 1};
      return r;
    }
    Rational t1 = Rational(x - delta - a) / (b - a);
    Rational t2 = Rational(x + delta - a) / (b - a);
    if (t1 > t2) std::swap(t1, t2);
    Rational lo = t1 < 0 ? Rational(0) : t1;
    Rational hi = t2 > 1 ? Rational(1) : t2;
    if (lo <= hi) r = {true, lo, hi};
    return r;
  };
  // LR[i][j]: reachable part of left boundary of cell (i,j) (on P-edge i at q_j)
  // BR[i][j]: reachable part of bottom boundary of cell (i,j) (on Q-edge j at p_i)
  std::vector<std::vector<Iv>> lr(m, std::vector<Iv>(k)), br(m, std::vector<Iv>(k));
  if (!close(p[0].raw(), q[0].raw())) return false;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Iv f = free_iv(p[i].raw(), p[i + 1].raw(), q[0].raw());
    bool prev = i == 0 ? true : (lr[i - 1][0].ok && lr[i - 1][0].hi == 1);
    if (prev && f.ok && f.lo == 0) lr[i][0] = f;
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    Iv f = free_iv(q[j].raw(), q[j + 1].raw(), p[0].raw());
    bool prev = j == 0 ? true : (br[0][j - 1].ok && br[0][j - 1].hi == 1);
    if (prev && f.ok && f.lo == 0) br[0][j] = f;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < k; ++j) {
      const Iv& l = lr[i][j];
      const Iv& b = br[i][j];
      Iv rf = free_iv(p[i].raw(), p[i + 1].raw(), q[j + 1].raw());
      Iv tf = free_iv(q[j].raw(), q[j + 1].raw(), p[i + 1].raw());
      Iv right, top;
      if (rf.ok) {
        if (b.ok) right = rf;
        else if (l.ok && std::max(l.lo, rf.lo) <= rf.hi) right = {true, std::max(l.lo, rf.lo), rf.hi};
      }
      if (tf.ok) {
        if (l.ok) top = tf;
        else if (b.ok && std::max(b.lo, tf.lo) <= tf.hi) top = {true, std::max(b.lo, tf.lo), tf.hi};
      }
      lr[i][j + 1] = right;
      br[i + 1][j] = top;
    }
  }
  if (!close(p[m - 1].raw(), q[k - 1].raw())) return false;
  const Iv& r = lr[m - 2][k - 1];
  const Iv& t = br[m - 1][k - 2];
  return (r.ok && r.hi == 1) || (t.ok && t.hi == 1);
}

}  // namespace testing_support
