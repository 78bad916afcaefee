#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "curveann/coord.hpp"
#include "curveann/error.hpp"

namespace curveann {

struct Point {
  Coord x;
  Coord y;

  constexpr auto operator<=>(const Point&) const = default;
};

/// Polygonal curve in one or two dimensions. A Curve stores exactly the vertices
/// it was given; use normalize() to drop degenerate vertices.
class Curve {
 public:
  Curve() = default;

  static Curve line(std::vector<Coord> xs) {
    Curve c;
    c.dim_ = 1;
    c.xs_ = std::move(xs);
    return c;
  }

  static Curve line(std::initializer_list<Coord::rep> xs) {
    std::vector<Coord> v;
    v.reserve(xs.size());
    for (auto x : xs) v.emplace_back(x);
    return line(std::move(v));
  }

  static Curve plane(const std::vector<Point>& pts) {
    Curve c;
    c.dim_ = 2;
    c.xs_.reserve(pts.size());
    c.ys_.reserve(pts.size());
    for (const auto& p : pts) {
      c.xs_.push_back(p.x);
      c.ys_.push_back(p.y);
    }
    return c;
  }

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return xs_.size(); }
  [[nodiscard]] bool empty() const { return xs_.empty(); }

  /// First coordinate of every vertex; for 1D curves these are the vertices.
  [[nodiscard]] std::span<const Coord> xs() const { return xs_; }
  [[nodiscard]] std::span<const Coord> ys() const { return ys_; }

  [[nodiscard]] Coord operator[](std::size_t i) const { return xs_[i]; }
  [[nodiscard]] Point point(std::size_t i) const {
    return {xs_[i], dim_ == 2 ? ys_[i] : Coord{}};
  }
  [[nodiscard]] Point front() const { return point(0); }
  [[nodiscard]] Point back() const { return point(size() - 1); }

  [[nodiscard]] std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
  }

  bool operator==(const Curve&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const Curve& c) {
    os << '<';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      if (c.dim_ == 2) {
        os << '(' << c.xs_[i] << ' ' << c.ys_[i] << ')';
      } else {
        os << c.xs_[i];
      }
    }
    return os << '>';
  }

 private:
  int dim_ = 1;
  std::vector<Coord> xs_;
  std::vector<Coord> ys_;
};

namespace detail {

using wide = __int128;

// q lies on the closed segment pr (2D).
inline bool on_segment(Point p, Point q, Point r) {
  const wide ux = wide{r.x.raw()} - p.x.raw();
  const wide uy = wide{r.y.raw()} - p.y.raw();
  const wide vx = wide{q.x.raw()} - p.x.raw();
  const wide vy = wide{q.y.raw()} - p.y.raw();
  if (ux * vy - uy * vx != 0) return false;
  const wide wx = wide{r.x.raw()} - q.x.raw();
  const wide wy = wide{r.y.raw()} - q.y.raw();
  return vx * wx + vy * wy >= 0;
}

inline bool between(Coord a, Coord b, Coord c) {
  return (a <= b && b <= c) || (a >= b && b >= c);
}

}  // namespace detail

/// Removes repeated and degenerate vertices from a 1D vertex sequence. The
/// result alternates between local maxima and minima except at its endpoints.
inline std::vector<Coord> normalize_values(std::span<const Coord> raw) {
  if (raw.empty()) throw InvalidInput("cannot normalize an empty vertex sequence");
  std::vector<Coord> out;
  out.reserve(raw.size());
  for (Coord v : raw) {
    if (!out.empty() && out.back() == v) continue;
    while (out.size() >= 2 && detail::between(out[out.size() - 2], out.back(), v)) {
      out.pop_back();
    }
    if (!out.empty() && out.back() == v) continue;
    out.push_back(v);
  }
  return out;
}

inline Curve normalize(std::span<const Coord> raw) { return Curve::line(normalize_values(raw)); }

inline Curve normalize_points(std::span<const Point> raw) {
  if (raw.empty()) throw InvalidInput("cannot normalize an empty vertex sequence");
  std::vector<Point> out;
  out.reserve(raw.size());
  for (const Point& p : raw) {
    if (!out.empty() && out.back() == p) continue;
    while (out.size() >= 2 && detail::on_segment(out[out.size() - 2], out.back(), p)) {
      out.pop_back();
    }
    if (!out.empty() && out.back() == p) continue;
    out.push_back(p);
  }
  return Curve::plane(out);
}

inline Curve normalize(const Curve& c) {
  if (c.dim() == 1) return normalize(c.xs());
  const auto pts = c.points();
  return normalize_points(pts);
}

inline bool is_normalized(const Curve& c) { return !c.empty() && normalize(c) == c; }

/// P ∘ Q: all vertices of P followed by all vertices of Q, normalized.
inline Curve concat(const Curve& p, const Curve& q) {
  if (p.dim() != q.dim()) throw InvalidInput("concat: dimension mismatch");
  if (p.dim() == 1) {
    std::vector<Coord> v(p.xs().begin(), p.xs().end());
    v.insert(v.end(), q.xs().begin(), q.xs().end());
    return normalize(v);
  }
  auto v = p.points();
  const auto w = q.points();
  v.insert(v.end(), w.begin(), w.end());
  return normalize_points(v);
}

inline Curve translate(const Curve& c, Coord dx) {
  if (c.dim() != 1) throw InvalidInput("translate: 1D offset applied to a 2D curve");
  std::vector<Coord> v;
  v.reserve(c.size());
  for (Coord x : c.xs()) v.push_back(x + dx);
  return Curve::line(std::move(v));
}

inline Curve translate(const Curve& c, Point d) {
  if (c.dim() != 2) throw InvalidInput("translate: 2D offset applied to a 1D curve");
  auto pts = c.points();
  for (auto& p : pts) {
    p.x += d.x;
    p.y += d.y;
  }
  return Curve::plane(pts);
}

/// Exact Fréchet distance of the 1D segments a->b and c->d.
inline Coord segment_frechet(Coord a, Coord b, Coord c, Coord d) {
  return std::max(dist(a, c), dist(b, d));
}

enum class Direction { increasing, decreasing };

/// Whether no later vertex undercuts (increasing) or exceeds (decreasing) an
/// earlier one by more than delta. Vertices suffice for polygonal curves.
inline bool is_delta_monotone(std::span<const Coord> values, Coord delta, Direction dir) {
  if (values.empty()) return true;
  if (dir == Direction::increasing) {
    Coord run_max = values[0];
    for (Coord v : values) {
      if (v < run_max - delta) return false;
      run_max = std::max(run_max, v);
    }
  } else {
    Coord run_min = values[0];
    for (Coord v : values) {
      if (v > run_min + delta) return false;
      run_min = std::min(run_min, v);
    }
  }
  return true;
}

inline bool is_delta_monotone(const Curve& c, Coord delta, Direction dir) {
  if (c.dim() != 1) throw InvalidInput("delta-monotonicity is defined for 1D curves");
  return is_delta_monotone(c.xs(), delta, dir);
}

}  // namespace curveann
