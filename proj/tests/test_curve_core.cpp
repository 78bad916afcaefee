#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace curveann;
using testing_support::Rng;

namespace {

Curve L(std::initializer_list<std::int64_t> v) { return Curve::line(v); }

// Independent degenerate-vertex scan: repeatedly drop any vertex equal to its
// predecessor or lying between its neighbours until nothing changes.
std::vector<std::int64_t> collinearity_scan(std::vector<std::int64_t> v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] == v[i - 1]) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if ((v[i - 1] <= v[i] && v[i] <= v[i + 1]) || (v[i - 1] >= v[i] && v[i] >= v[i + 1])) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

std::vector<std::int64_t> raw(const Curve& c) {
  std::vector<std::int64_t> out;
  for (Coord x : c.xs()) out.push_back(x.raw());
  return out;
}

}  // namespace

TEST(Normalize, SpecExamples) {
  EXPECT_EQ(normalize(L({0, 1, 2})), L({0, 2}));
  EXPECT_EQ(normalize(L({0, 6, 2, 6})), L({0, 6, 2, 6}));
  EXPECT_EQ(normalize(L({0, 6, 0, 0, 6})), L({0, 6, 0, 6}));
  EXPECT_EQ(collinearity_scan({0, 6, 0, 0, 6}), (std::vector<std::int64_t>{0, 6, 0, 6}));
}

TEST(Normalize, EmptyIsInvalid) {
  std::vector<Coord> none;
  EXPECT_THROW(normalize(none), InvalidInput);
}

TEST(Normalize, MatchesCollinearityScanAndIsIdempotent) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Coord> v;
    const auto m = rng.uniform(1, 12);
    for (int i = 0; i < m; ++i) v.emplace_back(rng.uniform(-4, 4));
    const Curve n = normalize(v);
    std::vector<std::int64_t> r;
    for (auto x : v) r.push_back(x.raw());
    ASSERT_EQ(raw(n), collinearity_scan(r));
    ASSERT_EQ(normalize(n), n);
    // alternating extrema
    for (std::size_t i = 1; i + 1 < n.size(); ++i) {
      ASSERT_TRUE((n[i] > n[i - 1]) == (n[i] > n[i + 1]));
    }
  }
}

TEST(Normalize, PlanarDropsCollinearAndRepeated) {
  auto P = [](std::int64_t x, std::int64_t y) { return Point{Coord(x), Coord(y)}; };
  std::vector<Point> pts{P(0, 0), P(3, 0), P(3, 0), P(6, 0), P(6, 0), P(6, 2)};
  EXPECT_EQ(normalize_points(pts), Curve::plane({P(0, 0), P(6, 0), P(6, 2)}));
  std::vector<Point> back{P(0, 0), P(4, 4), P(2, 2)};
  EXPECT_EQ(normalize_points(back).size(), 3u);
}

TEST(SegmentFrechet, SpecExamples) {
  EXPECT_EQ(segment_frechet(Coord(0), Coord(6), Coord(1), Coord(5)), Coord(1));
  EXPECT_EQ(segment_frechet(Coord(0), Coord(6), Coord(0), Coord(6)), Coord(0));
  EXPECT_EQ(segment_frechet(Coord(0), Coord(6), Coord(2), Coord(9)), Coord(3));
}

TEST(SegmentFrechet, AgreesWithDecision) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const auto a = rng.uniform(-9, 9), b = rng.uniform(-9, 9), c = rng.uniform(-9, 9),
               d = rng.uniform(-9, 9);
    const auto f = segment_frechet(Coord(a), Coord(b), Coord(c), Coord(d));
    const Curve x = Curve::line({a, b});
    const Curve y = Curve::line({c, d});
    ASSERT_TRUE(frechet_decide(x, y, f));
    if (f > Coord(0)) {
      ASSERT_FALSE(frechet_decide(x, y, f - Coord(1)));
    }
  }
}

TEST(FrechetDecide, FigureTwoCaption) {
  const Curve p = L({0, 1, -1, 2});
  EXPECT_TRUE(frechet_decide(p, L({-1, 2}), Coord(1)));
  EXPECT_FALSE(frechet_decide(p, L({-1, -2, 2}), Coord(1)));
  EXPECT_TRUE(frechet_decide(p, L({-1, -2, 2}), Coord(2)));
}

TEST(FrechetDecide, GadgetDistanceTwo) {
  EXPECT_TRUE(frechet_decide(L({0, 6, 2, 6}), L({0, 6}), Coord(2)));
  EXPECT_FALSE(frechet_decide(L({0, 600, 200, 600}), L({0, 600}), Coord(199)));
}

TEST(FrechetDecide, RejectsMismatchedDimensions) {
  const Curve planar = Curve::plane({{Coord(0), Coord(0)}, {Coord(1), Coord(1)}});
  EXPECT_THROW(frechet_decide(L({0, 1}), planar, Coord(1)), InvalidInput);
  EXPECT_THROW(frechet_decide(L({0, 1}), L({0, 1}), Coord(-1)), InvalidInput);
}

TEST(FrechetDecide, PointCurves) {
  EXPECT_TRUE(frechet_decide(L({3}), L({2, 4, 3}), Coord(1)));
  EXPECT_FALSE(frechet_decide(L({3}), L({2, 5}), Coord(1)));
}

TEST(FrechetDecide, AgreesWithReferenceTable) {
  Rng rng(2024);
  int positives = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Curve p = testing_support::random_curve(rng, 1, 8, -10, 10);
    const Curve q = testing_support::random_curve(rng, 1, 8, -10, 10);
    const auto d = rng.uniform(0, 8);
    const bool got = frechet_decide(p, q, Coord(d));
    ASSERT_EQ(got, testing_support::reference_decide_1d(p, q, d)) << p << " " << q << " " << d;
    positives += got;
  }
  EXPECT_GT(positives, 200);
}

TEST(FrechetDecide, Symmetry) {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const Curve p = testing_support::random_curve(rng, 1, 8, -10, 10);
    const Curve q = testing_support::random_curve(rng, 1, 8, -10, 10);
    const Coord d(rng.uniform(0, 8));
    ASSERT_EQ(frechet_decide(p, q, d), frechet_decide(q, p, d));
  }
}

TEST(FrechetDecide, TriangleConsistency) {
  Rng rng(8);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const Curve x = testing_support::random_curve(rng, 2, 8, -10, 10);
    const Curve p = testing_support::perturb(rng, x, 3, 8);
    const Curve q = testing_support::perturb(rng, x, 3, 8);
    const Coord d1(rng.uniform(0, 5)), d2(rng.uniform(0, 5));
    if (frechet_decide(p, x, d1) && frechet_decide(x, q, d2)) {
      ++checked;
      ASSERT_TRUE(frechet_decide(p, q, d1 + d2));
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(FrechetDecide, ConcatenationBound) {
  Rng rng(9);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Curve p1 = testing_support::random_curve(rng, 2, 5, -10, 10);
    const Curve q1 = testing_support::perturb(rng, p1, 2, 6);
    Curve p2 = testing_support::random_curve(rng, 2, 5, -10, 10);
    Curve q2 = testing_support::perturb(rng, p2, 2, 6);
    // glue the pieces so the concatenations share junction vertices
    p2 = translate(p2, p1.back().x - p2.front().x);
    q2 = translate(q2, q1.back().x - q2.front().x);
    const Coord d(rng.uniform(1, 4));
    if (frechet_decide(p1, q1, d) && frechet_decide(p2, q2, d)) {
      ++checked;
      ASSERT_TRUE(frechet_decide(concat(p1, p2), concat(q1, q2), d));
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(FrechetDecide, ShortcutProperty) {
  Rng rng(10);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
    const Curve seg = L({a, b});
    const Curve p = testing_support::perturb(rng, seg, 3, 8);
    const Coord d(rng.uniform(1, 4));
    if (!frechet_decide(p, seg, d)) continue;
    ++checked;
    std::vector<Coord> sub{p.front().x};
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
      if (rng.coin()) sub.push_back(p[i]);
    sub.push_back(p.back().x);
    ASSERT_TRUE(frechet_decide(Curve::line(sub), seg, d));
  }
  EXPECT_GT(checked, 100);
}

TEST(FrechetDecide, SegmentCharacterization) {
  // d_F(P, ab) <= delta iff P is 2delta-monotone w.r.t. ab, endpoints are within
  // delta and P stays within the delta-range of the segment.
  Rng rng(12);
  int pos = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const auto a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
    const Curve seg = L({a, b});
    const Curve p = testing_support::perturb(rng, seg, 3, 8);
    const Coord d(rng.uniform(0, 4));
    const Direction dir = a <= b ? Direction::increasing : Direction::decreasing;
    bool in_range = true;
    for (Coord x : p.xs())
      in_range = in_range && x >= Coord(std::min(a, b)) - d && x <= Coord(std::max(a, b)) + d;
    const bool expected = is_delta_monotone(p, d * 2, dir) && dist(p.front().x, Coord(a)) <= d &&
                          dist(p.back().x, Coord(b)) <= d && in_range;
    const bool got = frechet_decide(p, seg, d);
    pos += got;
    ASSERT_EQ(got, expected) << p << " vs " << seg << " at " << d;
  }
  EXPECT_GT(pos, 300);
}

TEST(FrechetDecide, PlanarEmbeddingOfLineCurves) {
  Rng rng(13);
  for (int trial = 0; trial < 1500; ++trial) {
    const Curve p = testing_support::random_curve(rng, 1, 7, -10, 10);
    const Curve q = testing_support::random_curve(rng, 1, 7, -10, 10);
    const auto d = rng.uniform(0, 8);
    std::vector<Point> pp, qq;
    const auto y = rng.uniform(-5, 5);
    for (Coord x : p.xs()) pp.push_back({x, Coord(y)});
    for (Coord x : q.xs()) qq.push_back({x, Coord(y)});
    ASSERT_EQ(frechet_decide(Curve::plane(pp), Curve::plane(qq), Coord(d)),
              frechet_decide(p, q, Coord(d)));
  }
}

namespace {

// Floating-point 2D decision, used only where the answer is stable under a
// small perturbation of the threshold.
bool float_decide_2d(const Curve& p, const Curve& q, long double delta) {
  const auto m = p.size(), k = q.size();
  auto pt = [](const Curve& c, std::size_t i) {
    return std::pair<long double, long double>(c.point(i).x.raw(), c.point(i).y.raw());
  };
  auto close = [&](auto a, auto b) {
    return std::hypot(a.first - b.first, a.second - b.second) <= delta;
  };
  if (m == 1 || k == 1) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!close(pt(p, i), pt(q, j))) return false;
    return true;
  }
  struct Iv { bool ok = false; long double lo = 0, hi = 0; };
  auto free_iv = [&](auto a, auto b, auto c) {
    const long double dx = b.first - a.first, dy = b.second - a.second;
    const long double ex = a.first - c.first, ey = a.second - c.second;
    const long double A = dx * dx + dy * dy, B = 2 * (dx * ex + dy * ey),
                      C = ex * ex + ey * ey - delta * delta;
    Iv r;
    const long double disc = B * B - 4 * A * C;
    if (disc < 0) return r;
    long double lo = (-B - std::sqrt(disc)) / (2 * A), hi = (-B + std::sqrt(disc)) / (2 * A);
    lo = std::max<long double>(lo, 0);
    hi = std::min<long double>(hi, 1);
    if (lo <= hi) r = {true, lo, hi};
    return r;
  };
  if (!close(pt(p, 0), pt(q, 0)) || !close(pt(p, m - 1), pt(q, k - 1))) return false;
  std::vector<std::vector<Iv>> lr(m, std::vector<Iv>(k)), br(m, std::vector<Iv>(k));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    auto f = free_iv(pt(p, i), pt(p, i + 1), pt(q, 0));
    bool prev = i == 0 || (lr[i - 1][0].ok && lr[i - 1][0].hi >= 1);
    if (prev && f.ok && f.lo <= 0) lr[i][0] = f;
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    auto f = free_iv(pt(q, j), pt(q, j + 1), pt(p, 0));
    bool prev = j == 0 || (br[0][j - 1].ok && br[0][j - 1].hi >= 1);
    if (prev && f.ok && f.lo <= 0) br[0][j] = f;
  }
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = 0; j + 1 < k; ++j) {
      auto l = lr[i][j], b = br[i][j];
      auto rf = free_iv(pt(p, i), pt(p, i + 1), pt(q, j + 1));
      auto tf = free_iv(pt(q, j), pt(q, j + 1), pt(p, i + 1));
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
  return (lr[m - 2][k - 1].ok && lr[m - 2][k - 1].hi >= 1) ||
         (br[m - 1][k - 2].ok && br[m - 1][k - 2].hi >= 1);
}

Curve random_planar(Rng& rng, std::size_t max_m) {
  std::vector<Point> pts;
  const auto m = rng.uniform(2, static_cast<std::int64_t>(max_m));
  for (int i = 0; i < m; ++i) pts.push_back({Coord(rng.uniform(-8, 8)), Coord(rng.uniform(-8, 8))});
  return normalize_points(pts);
}

}  // namespace

TEST(FrechetDecide, PlanarAgreesWithStableFloatingPoint) {
  Rng rng(14);
  int compared = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Curve p = random_planar(rng, 6);
    const Curve q = random_planar(rng, 6);
    const auto d = rng.uniform(1, 10);
    const bool lo = float_decide_2d(p, q, d * (1 - 1e-9L));
    const bool hi = float_decide_2d(p, q, d * (1 + 1e-9L));
    if (lo != hi) continue;
    ++compared;
    ASSERT_EQ(frechet_decide(p, q, Coord(d)), lo) << p << " " << q << " " << d;
  }
  EXPECT_GT(compared, 2500);
}

TEST(FrechetDecide, PlanarLargeCoordinatesUseExactFallback) {
  const std::int64_t big = std::int64_t{1} << 40;
  auto P = [](std::int64_t x, std::int64_t y) { return Point{Coord(x), Coord(y)}; };
  const Curve p = Curve::plane({P(0, 0), P(4 * big, 0)});
  const Curve q = Curve::plane({P(0, 3 * big), P(4 * big, 3 * big)});
  EXPECT_TRUE(frechet_decide(p, q, Coord(3 * big)));
  EXPECT_FALSE(frechet_decide(p, q, Coord(3 * big - 1)));
  // distance 5*big along the diagonal: 3-4-5 triangle
  const Curve r = Curve::plane({P(0, 0), P(3 * big, 4 * big)});
  const Curve s = Curve::plane({P(0, 0), P(0, 0)});
  EXPECT_TRUE(frechet_decide(r, Curve::plane({P(0, 0)}), Coord(5 * big)));
  EXPECT_FALSE(frechet_decide(r, Curve::plane({P(0, 0)}), Coord(5 * big - 1)));
  (void)s;
}

TEST(DeltaMonotone, SpecExamples) {
  EXPECT_TRUE(is_delta_monotone(L({0, 6, 2, 6}), Coord(4), Direction::increasing));
  EXPECT_FALSE(is_delta_monotone(L({0, 6, 2, 6}), Coord(3), Direction::increasing));
  EXPECT_TRUE(is_delta_monotone(L({5, 0}), Coord(0), Direction::decreasing));
}

TEST(ConcatTranslate, SpecExamples) {
  EXPECT_EQ(concat(L({0, 6}), L({6, 12})), L({0, 12}));
  EXPECT_EQ(translate(L({0, 6}), Coord(6)), L({6, 12}));
  EXPECT_EQ(concat(L({0, 6}), L({6, 2, 6})), L({0, 6, 2, 6}));
  const Curve planar = Curve::plane({{Coord(0), Coord(0)}});
  EXPECT_THROW(concat(L({0, 6}), planar), InvalidInput);
  EXPECT_THROW(translate(planar, Coord(1)), InvalidInput);
  EXPECT_EQ(translate(L({0, 6}), Coord(6)).size(), 2u);
}

TEST(Coord, OverflowIsReported) {
  EXPECT_THROW(Coord(Coord::kLimit + 1), OverflowError);
  EXPECT_THROW(Coord(Coord::kLimit) + Coord(1), OverflowError);
  EXPECT_THROW(Coord(Coord::kLimit) * 4, OverflowError);
  EXPECT_EQ((Coord(-7) - Coord(3)).raw(), -10);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-8, 2), -4);
}

TEST(Ratio, ExactScaling) {
  EXPECT_EQ(Ratio(1, 4).scale_exact(Coord(8), 2), Coord(1));
  EXPECT_THROW((void)Ratio(1, 4).scale_exact(Coord(4), 2), InvalidParams);
  EXPECT_EQ(Ratio(2, 4), Ratio(1, 2));
  EXPECT_TRUE(Ratio(1, 3) < Ratio(1, 2));
}
