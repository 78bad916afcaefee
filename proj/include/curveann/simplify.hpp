#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/error.hpp"
#include "curveann/frechet.hpp"

namespace curveann {

/// Vertex-restricted simplification of a 1D curve. Indices are 0-based
/// positions in the parent's vertex list, strictly increasing, and always
/// include the first and last vertex.
struct Simplification {
  std::vector<std::size_t> indices;
  Curve curve;
  Coord delta;
};

/// A delta-signature. `relaxed` is set when the result is the two-vertex curve
/// <first, last> with an edge no longer than delta: such curves admit no index
/// list with the delta-edge-length property, and this one keeps the other
/// signature properties.
struct Signature : Simplification {
  bool relaxed = false;
};

struct Straightening : Simplification {};

/// Non-decreasing assignment of the vertices of one curve to vertices of another.
struct VisitingOrder {
  std::vector<std::size_t> indices;
  Coord radius;
};

namespace detail {

inline Curve induced(std::span<const Coord> p, std::span<const std::size_t> idx) {
  std::vector<Coord> v;
  v.reserve(idx.size());
  for (auto i : idx) v.push_back(p[i]);
  return Curve::line(std::move(v));
}

inline void validate_indices(std::size_t m, std::span<const std::size_t> idx) {
  if (idx.size() < 2 && m >= 2) throw InvalidInput("index list must contain first and last vertex");
  if (idx.empty() || idx.front() != 0 || idx.back() != m - 1) {
    throw InvalidInput("index list must start at the first and end at the last vertex");
  }
  for (std::size_t j = 1; j < idx.size(); ++j) {
    if (idx[j] <= idx[j - 1]) throw InvalidInput("index list must be strictly increasing");
  }
}

inline bool shortcut_local(std::span<const Coord> p, std::size_t a, std::size_t b, Coord delta) {
  const Coord seg[2] = {p[a], p[b]};
  return frechet_decide_1d(seg, p.subspan(a, b - a + 1), delta);
}

}  // namespace detail

/// Linear-time delta-signature of a non-degenerate 1D curve.
inline Signature compute_signature(const Curve& p, Coord delta) {
  if (p.dim() != 1) throw InvalidInput("signatures are defined for 1D curves");
  if (p.size() < 2) throw InvalidInput("signature needs at least two vertices");
  if (delta <= Coord{}) throw InvalidInput("signature needs delta > 0");
  const auto v = p.xs();
  const std::size_t m = v.size();
  Signature sig;
  sig.delta = delta;
  sig.indices.push_back(0);

  std::size_t e = 1;
  while (e < m && dist(v[e], v[0]) <= delta) ++e;
  if (e == m) {
    sig.indices.push_back(m - 1);
    sig.relaxed = true;
    sig.curve = detail::induced(v, sig.indices);
    return sig;
  }

  bool up = v[e] > v[0];
  std::size_t r = e;
  const Coord swing = delta * 2;
  for (std::size_t i = e + 1; i < m; ++i) {
    if (up) {
      if (v[i] > v[r]) {
        r = i;
      } else if (v[r] - v[i] > swing) {
        sig.indices.push_back(r);
        up = false;
        r = i;
      }
    } else {
      if (v[i] < v[r]) {
        r = i;
      } else if (v[i] - v[r] > swing) {
        sig.indices.push_back(r);
        up = true;
        r = i;
      }
    }
  }
  if (r != m - 1 && dist(v[r], v[m - 1]) > delta) sig.indices.push_back(r);
  sig.indices.push_back(m - 1);
  sig.relaxed = sig.indices.size() == 2 && dist(v[0], v[m - 1]) <= delta;
  sig.curve = detail::induced(v, sig.indices);
  return sig;
}

/// Whether `idx` induces a delta-signature of `p`: non-degenerate, locality on
/// every shortcut, delta-edge-length, vertex-range-preserving. With
/// `allow_relaxed`, the edge-length check is waived for a two-vertex list.
inline bool check_signature(const Curve& p, std::span<const std::size_t> idx, Coord delta,
                            bool allow_relaxed = false) {
  if (p.dim() != 1) throw InvalidInput("signatures are defined for 1D curves");
  const auto v = p.xs();
  const std::size_t m = v.size();
  detail::validate_indices(m, idx);
  const std::size_t l = idx.size();
  if (!is_normalized(detail::induced(v, idx))) return false;
  for (std::size_t j = 0; j + 1 < l; ++j) {
    if (!detail::shortcut_local(v, idx[j], idx[j + 1], delta)) return false;
  }
  if (!(allow_relaxed && l == 2)) {
    if (dist(v[idx[0]], v[idx[1]]) <= delta) return false;
    if (dist(v[idx[l - 2]], v[idx[l - 1]]) <= delta) return false;
    for (std::size_t j = 1; j + 2 < l; ++j) {
      if (dist(v[idx[j]], v[idx[j + 1]]) <= delta * 2) return false;
    }
  }
  for (std::size_t j = 1; j + 1 < l; ++j) {
    const Coord c = v[idx[j]];
    const bool is_max = c > v[idx[j - 1]];
    for (std::size_t t = idx[j - 1]; t <= idx[j + 1]; ++t) {
      if (is_max ? v[t] > c : v[t] < c) return false;
    }
  }
  return true;
}

/// Whether `idx` induces a delta-straightening of `q`: every shortcut is within
/// delta of its subcurve and the subcurve stays inside the shortcut's interval.
inline bool check_straightening(const Curve& q, std::span<const std::size_t> idx, Coord delta) {
  if (q.dim() != 1) throw InvalidInput("straightenings are defined for 1D curves");
  const auto v = q.xs();
  detail::validate_indices(v.size(), idx);
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
    const Coord a = v[idx[j]];
    const Coord b = v[idx[j + 1]];
    for (std::size_t t = idx[j]; t <= idx[j + 1]; ++t) {
      if (!detail::between(a, v[t], b)) return false;
    }
    if (!detail::shortcut_local(v, idx[j], idx[j + 1], delta)) return false;
  }
  return true;
}

/// Greedy leftmost-feasible delta-visiting order of q on p, if one exists.
inline std::optional<VisitingOrder> find_visiting_order(const Curve& q, const Curve& p,
                                                        Coord radius) {
  if (q.dim() != 1 || p.dim() != 1) throw InvalidInput("visiting orders are defined for 1D curves");
  VisitingOrder order;
  order.radius = radius;
  std::size_t i = 0;
  for (Coord u : q.xs()) {
    while (i < p.size() && dist(u, p[i]) > radius) ++i;
    if (i == p.size()) return std::nullopt;
    order.indices.push_back(i);
  }
  return order;
}

inline bool is_visiting_order(const Curve& q, const Curve& p, std::span<const std::size_t> idx,
                              Coord radius) {
  if (idx.size() != q.size()) return false;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= p.size() || (j > 0 && idx[j] < idx[j - 1])) return false;
    if (dist(q[j], p[idx[j]]) > radius) return false;
  }
  return true;
}

}  // namespace curveann
