#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/error.hpp"
#include "curveann/frechet.hpp"

namespace curveann {

/// Regular 1D grid {i * width}.
struct GridSpec {
  Coord width;

  explicit GridSpec(Coord w) : width(w) {
    if (w <= Coord{}) throw InvalidParams("grid width must be positive");
  }

  [[nodiscard]] std::int64_t cell(Coord x) const { return floor_div(x.raw(), width.raw()); }
  [[nodiscard]] Coord value(std::int64_t cell) const { return width * cell; }
  /// Smallest cell whose value is >= x.
  [[nodiscard]] std::int64_t cell_at_least(std::int64_t x) const {
    return -floor_div(-x, width.raw());
  }
};

/// Grid indices of the vertices of a normalized grid curve.
struct GridKey {
  std::vector<std::int64_t> cells;

  auto operator<=>(const GridKey&) const = default;
  bool operator==(const GridKey&) const = default;

  [[nodiscard]] std::size_t size() const { return cells.size(); }

  friend std::ostream& operator<<(std::ostream& os, const GridKey& k) {
    os << '(';
    for (std::size_t i = 0; i < k.cells.size(); ++i) os << (i ? "," : "") << k.cells[i];
    return os << ')';
  }
};

/// Compact canonical byte string for a cell sequence (zigzag varints).
inline std::string encode_cells(std::span<const std::int64_t> cells) {
  std::string out;
  out.reserve(cells.size() * 2 + 1);
  for (std::int64_t c : cells) {
    auto z = (static_cast<std::uint64_t>(c) << 1) ^ static_cast<std::uint64_t>(c >> 63);
    while (z >= 0x80) {
      out.push_back(static_cast<char>((z & 0x7f) | 0x80));
      z >>= 7;
    }
    out.push_back(static_cast<char>(z));
  }
  return out;
}

inline std::vector<std::int64_t> decode_cells(std::string_view bytes) {
  std::vector<std::int64_t> out;
  std::uint64_t z = 0;
  int shift = 0;
  for (char ch : bytes) {
    const auto b = static_cast<std::uint8_t>(ch);
    if (shift > 63) throw DecodeError("malformed cell encoding");
    z |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if (b & 0x80) {
      shift += 7;
      continue;
    }
    out.push_back(static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1)));
    z = 0;
    shift = 0;
  }
  if (shift != 0) throw DecodeError("truncated cell encoding");
  return out;
}

inline Curve key_curve(const GridKey& key, const GridSpec& grid) {
  std::vector<Coord> v;
  v.reserve(key.size());
  for (auto c : key.cells) v.push_back(grid.value(c));
  return Curve::line(std::move(v));
}

namespace detail {

inline GridKey normalized_key(std::span<const std::int64_t> cells) {
  std::vector<Coord> v;
  v.reserve(cells.size());
  for (auto c : cells) v.emplace_back(c);
  GridKey key;
  for (Coord c : normalize_values(v)) key.cells.push_back(c.raw());
  return key;
}

}  // namespace detail

/// Floor-snaps every vertex to the grid and removes degenerate vertices.
inline GridKey snap_curve(const Curve& q, const GridSpec& grid) {
  if (q.dim() != 1) throw InvalidInput("snap_curve expects a 1D curve");
  std::vector<std::int64_t> cells;
  cells.reserve(q.size());
  for (Coord x : q.xs()) cells.push_back(grid.cell(x));
  return detail::normalized_key(cells);
}

/// All index sequences 0 = i_1 <= ... <= i_l = m-1 with 2 <= l <= k.
inline std::vector<std::vector<std::size_t>> generate_orders(std::size_t m, std::size_t k) {
  if (m < 2 || k < 2) throw InvalidInput("generate_orders needs m >= 2 and k >= 2");
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::vector<std::size_t>> level{{0, m - 1}};
  all = level;
  for (std::size_t l = 3; l <= k; ++l) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& seq : level) {
      const std::size_t from = seq.size() >= 2 ? seq[seq.size() - 2] : 0;
      for (std::size_t j = from; j < m; ++j) {
        auto s = seq;
        s.insert(s.end() - 1, j);
        next.push_back(std::move(s));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

/// Normalized grid curves obtained from every order and every choice of grid
/// points within `radius` of the visited vertices, by full cross products.
inline std::set<GridKey> generate_candidates(const Curve& p, Coord radius, const GridSpec& grid,
                                             std::size_t k) {
  if (p.dim() != 1) throw InvalidInput("candidates are generated for 1D curves");
  std::set<GridKey> out;
  const auto v = p.xs();
  for (const auto& order : generate_orders(v.size(), k)) {
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    bool empty = false;
    for (auto i : order) {
      const auto lo = grid.cell_at_least((v[i] - radius).raw());
      const auto hi = grid.cell(v[i] + radius);
      if (lo > hi) empty = true;
      ranges.emplace_back(lo, hi);
    }
    if (empty) continue;
    std::vector<std::int64_t> sigma;
    for (auto& r : ranges) sigma.push_back(r.first);
    while (true) {
      out.insert(detail::normalized_key(sigma));
      std::size_t j = 0;
      while (j < sigma.size() && sigma[j] == ranges[j].second) {
        sigma[j] = ranges[j].first;
        ++j;
      }
      if (j == sigma.size()) break;
      ++sigma[j];
    }
  }
  return out;
}

/// Candidates within Fréchet distance `within` of p.
inline std::set<GridKey> generate_keys(const Curve& p, Coord radius, Coord within,
                                       const GridSpec& grid, std::size_t k) {
  std::set<GridKey> out;
  for (const auto& key : generate_candidates(p, radius, grid, k)) {
    if (frechet_decide(p, key_curve(key, grid), within)) out.insert(key);
  }
  return out;
}

/// Candidates within Fréchet distance `within` of p whose endpoints are within
/// `endpoints` of p's endpoints.
inline std::set<GridKey> generate_keys2(const Curve& p, Coord radius, Coord within,
                                        Coord endpoints, const GridSpec& grid, std::size_t k) {
  std::set<GridKey> out;
  for (const auto& key : generate_candidates(p, radius, grid, k)) {
    const Curve q = key_curve(key, grid);
    if (dist(q.front().x, p.front().x) <= endpoints && dist(q.back().x, p.back().x) <= endpoints &&
        frechet_decide(p, q, within)) {
      out.insert(key);
    }
  }
  return out;
}

inline constexpr std::size_t kMaxChainBoundVertices = 4096;

/// Parameters of a key enumeration around a curve P: vertices of a key lie on
/// the grid, admit a `radius`-visiting order on P that starts at P's first and
/// ends at P's last vertex, the key is within Fréchet distance `within` of P,
/// has at most `max_len` vertices, and optionally has endpoints within
/// `endpoints` of P's endpoints.
struct KeySpec {
  Coord radius;
  Coord within;
  std::optional<Coord> endpoints;
  std::size_t max_len = 2;
};

/// Enumerates exactly the keys described by `spec` (the same set that the
/// cross-product generation followed by filtering yields), each once, in a fixed
/// depth-first order. `sink(cells)` returns true to stop the enumeration;
/// `prefix_ok(cells)` may reject a prefix together with all its extensions.
/// Returns true if the sink stopped the enumeration.
template <class Sink, class PrefixOk>
bool enumerate_keys(const Curve& p, const KeySpec& spec, const GridSpec& grid, Sink&& sink,
                    PrefixOk&& prefix_ok) {
  if (p.dim() != 1) throw InvalidInput("keys are enumerated for 1D curves");
  const auto v = p.xs();
  const std::size_t m = v.size();
  if (m == 0 || spec.max_len == 0) return false;
  const std::int64_t r = spec.radius.raw();
  std::vector<std::int64_t> sufmin(m), sufmax(m);
  for (std::size_t i = m; i-- > 0;) {
    sufmin[i] = i + 1 < m ? std::min(v[i].raw(), sufmin[i + 1]) : v[i].raw();
    sufmax[i] = i + 1 < m ? std::max(v[i].raw(), sufmax[i + 1]) : v[i].raw();
  }
  const std::int64_t last = v[m - 1].raw();
  std::int64_t end_reach = std::min(r, spec.within.raw());
  if (spec.endpoints) end_reach = std::min(end_reach, spec.endpoints->raw());
  auto end_ok = [&](std::int64_t x) {
    if (std::abs(x - last) > r) return false;
    return !spec.endpoints || std::abs(x - last) <= spec.endpoints->raw();
  };
  auto greedy = [&](std::int64_t x, std::size_t from) -> std::size_t {
    for (std::size_t i = from; i < m; ++i) {
      if (std::abs(x - v[i].raw()) <= r) return i;
    }
    return m;
  };

  // need[j]: vertices any curve within `within` of P[j..] must have, from the
  // longest chain of vertices of P[j..] whose steps alternate in direction and
  // exceed 2 * within.
  std::vector<std::size_t> need(m + 1, 0);
  if (m <= kMaxChainBoundVertices) {
    const std::int64_t gap = 2 * spec.within.raw();
    std::vector<std::size_t> up(m, 1), down(m, 1);
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t l = i + 1; l < m; ++l) {
        const std::int64_t step = v[l].raw() - v[i].raw();
        if (step > gap) up[i] = std::max(up[i], down[l] + 1);
        if (-step > gap) down[i] = std::max(down[i], up[l] + 1);
      }
      need[i] = std::max({need[i + 1], up[i], down[i]});
    }
  }

  std::vector<std::int64_t> cells;
  cells.reserve(spec.max_len);

  // dir: +1 if the last step went up, -1 if down, 0 for a one-vertex prefix
  std::function<bool(const ReachFrontier&, std::size_t, int)> visit;
  visit = [&](const ReachFrontier& front, std::size_t g, int dir) -> bool {
    const std::int64_t x = grid.value(cells.back()).raw();
    if (front.complete() && end_ok(x) && sink(std::span<const std::int64_t>(cells))) return true;
    if (cells.size() >= spec.max_len) return false;
    if (need[front.tail_vertex()] > 1 + spec.max_len - cells.size()) return false;
    const std::int64_t lo_v = sufmin[g] - r;
    const std::int64_t hi_v = sufmax[g] + r;
    const std::int64_t cur = cells.back();
    auto try_step = [&](std::int64_t c, bool& stop) -> bool {
      // returns false once the frontier dies: all further cells in this direction die too
      const Coord y = grid.value(c);
      ReachFrontier next = front.extend(y);
      if (next.dead()) return false;
      const std::size_t g2 = greedy(y.raw(), g);
      if (g2 == m) return true;
      cells.push_back(c);
      if (prefix_ok(std::span<const std::int64_t>(cells))) {
        stop = visit(next, g2, c > cur ? 1 : -1);
      }
      cells.pop_back();
      return true;
    };
    // the final vertex has to land near P's last vertex
    const bool final_step = cells.size() + 1 == spec.max_len;
    const std::int64_t near_lo = grid.cell_at_least(last - end_reach);
    const std::int64_t near_hi = grid.cell(Coord(last + end_reach));
    bool stop = false;
    if (dir <= 0) {
      std::int64_t top = grid.cell(Coord(hi_v));
      std::int64_t c = cur + 1;
      if (final_step) {
        top = std::min(top, near_hi);
        c = std::max(c, near_lo);
      }
      for (; c <= top && !stop; ++c) {
        if (!try_step(c, stop)) break;
      }
    }
    if (stop) return true;
    if (dir >= 0) {
      std::int64_t bottom = grid.cell_at_least(lo_v);
      std::int64_t c = cur - 1;
      if (final_step) {
        bottom = std::max(bottom, near_lo);
        c = std::min(c, near_hi);
      }
      for (; c >= bottom && !stop; --c) {
        if (!try_step(c, stop)) break;
      }
    }
    return stop;
  };

  const std::int64_t p0 = v[0].raw();
  std::int64_t reach = std::min(r, spec.within.raw());
  if (spec.endpoints) reach = std::min(reach, spec.endpoints->raw());
  const std::int64_t first_lo = grid.cell_at_least(p0 - reach);
  const std::int64_t first_hi = grid.cell(Coord(p0 + reach));
  for (std::int64_t c = first_lo; c <= first_hi; ++c) {
    const Coord y = grid.value(c);
    ReachFrontier front = ReachFrontier::start(v, y, spec.within);
    if (front.dead()) continue;
    cells.assign(1, c);
    if (!prefix_ok(std::span<const std::int64_t>(cells))) continue;
    if (visit(front, 0, 0)) return true;
  }
  return false;
}

template <class Sink>
bool enumerate_keys(const Curve& p, const KeySpec& spec, const GridSpec& grid, Sink&& sink) {
  return enumerate_keys(p, spec, grid, std::forward<Sink>(sink),
                        [](std::span<const std::int64_t>) { return true; });
}

/// Materialized form of enumerate_keys.
inline std::set<GridKey> collect_keys(const Curve& p, const KeySpec& spec, const GridSpec& grid) {
  std::set<GridKey> out;
  enumerate_keys(p, spec, grid, [&](std::span<const std::int64_t> cells) {
    out.insert(GridKey{{cells.begin(), cells.end()}});
    return false;
  });
  return out;
}

}  // namespace curveann
