#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/error.hpp"

namespace curveann {

using BitVector = std::vector<std::uint8_t>;

/// Orthogonal-vectors instance. With `sparsity`, every vector of A has at most
/// that many ones.
struct OvInstance {
  std::vector<BitVector> a;
  std::vector<BitVector> b;
  std::size_t d = 0;
  std::optional<std::size_t> sparsity;

  void validate() const {
    if (d == 0) throw InvalidInput("vector dimension must be positive");
    for (const auto* side : {&a, &b}) {
      for (const auto& v : *side) {
        if (v.size() != d) throw InvalidInput("vector has wrong dimension");
      }
    }
    if (sparsity) {
      for (const auto& v : a) {
        std::size_t ones = 0;
        for (auto x : v) ones += x != 0;
        if (ones > *sparsity) throw InvalidInput("vector in A exceeds the sparsity bound");
      }
    }
  }
};

inline std::size_t inner_product(const BitVector& x, const BitVector& y) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += (x[i] && y[i]) ? 1 : 0;
  return s;
}

inline bool has_orthogonal_pair(const OvInstance& inst) {
  for (const auto& x : inst.a) {
    for (const auto& y : inst.b) {
      if (inner_product(x, y) == 0) return true;
    }
  }
  return false;
}

/// Block encoding that turns an OV instance into one where every vector of A
/// has exactly k ones: the dimension is padded to a multiple of k, split into k
/// blocks of s bits, and each block becomes a one-hot (A) or "non-orthogonal
/// pattern" (B) vector of length 2^s. Blocks are read most significant bit first.
inline OvInstance sparse_transform(const OvInstance& inst, std::size_t k) {
  if (k == 0) throw InvalidInput("sparse_transform needs k >= 1");
  inst.validate();
  const std::size_t d = (inst.d + k - 1) / k * k;
  const std::size_t s = d / k;
  if (s >= 24) throw InvalidInput("sparse_transform block too large");
  const std::size_t block = std::size_t{1} << s;
  auto padded = [&](const BitVector& v) {
    BitVector out(v);
    out.resize(d, 0);
    return out;
  };
  auto block_value = [&](const BitVector& v, std::size_t i) {
    std::size_t x = 0;
    for (std::size_t j = 0; j < s; ++j) x = (x << 1) | (v[i * s + j] ? 1 : 0);
    return x;
  };
  OvInstance out;
  out.d = k * block;
  out.sparsity = k;
  for (const auto& raw : inst.a) {
    const auto v = padded(raw);
    BitVector t(out.d, 0);
    for (std::size_t i = 0; i < k; ++i) t[i * block + block_value(v, i)] = 1;
    out.a.push_back(std::move(t));
  }
  for (const auto& raw : inst.b) {
    const auto v = padded(raw);
    BitVector t(out.d, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t bi = block_value(v, i);
      for (std::size_t beta = 0; beta < block; ++beta) {
        if ((bi & beta) != 0) t[i * block + beta] = 1;
      }
    }
    out.b.push_back(std::move(t));
  }
  return out;
}

enum class GadgetFamily { one_d_2minus_eps, one_d_3minus_eps, two_d_3minus_eps };

inline std::string_view family_name(GadgetFamily f) {
  switch (f) {
    case GadgetFamily::one_d_2minus_eps: return "one_d_2minus_eps";
    case GadgetFamily::one_d_3minus_eps: return "one_d_3minus_eps";
    case GadgetFamily::two_d_3minus_eps: return "two_d_3minus_eps";
  }
  return "unknown";
}

inline std::optional<GadgetFamily> parse_family(std::string_view name) {
  for (auto f : {GadgetFamily::one_d_2minus_eps, GadgetFamily::one_d_3minus_eps,
                 GadgetFamily::two_d_3minus_eps}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

/// Curves of an OV reduction: one query per vector of A, one input per vector
/// of B. d_F(query_a, input_b) <= delta iff a and b are orthogonal.
struct GadgetSet {
  std::vector<Curve> queries;
  std::vector<Curve> inputs;
  Coord delta{1};
};

namespace detail {

inline Curve gadget_1d_2(bool bit, bool query, std::int64_t shift) {
  Curve g;
  if (query) {
    g = bit ? Curve::line({0, 6, 2, 6}) : Curve::line({0, 6});
  } else {
    g = bit ? Curve::line({0, 6}) : Curve::line({0, 5, 3, 6});
  }
  return translate(g, Coord(shift));
}

inline Curve gadget_1d_3(bool bit, bool query) {
  if (query) return bit ? Curve::line({0, 6, 0}) : Curve::line({0, 8, 0});
  return bit ? Curve::line({0, 9, 0}) : Curve::line({0, 7, 0});
}

inline Curve gadget_2d(std::int64_t y, std::int64_t shift) {
  const auto P = [](std::int64_t a, std::int64_t b) { return Point{Coord(a), Coord(b)}; };
  Curve g = Curve::plane({P(0, 0), P(3, 0), P(3, y), P(6, y), P(6, 0)});
  return translate(g, P(shift, 0));
}

inline Curve gadget_curve(const BitVector& v, GadgetFamily family, bool query) {
  Curve out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool bit = v[i] != 0;
    const auto shift = static_cast<std::int64_t>(6 * i);
    Curve g;
    switch (family) {
      case GadgetFamily::one_d_2minus_eps: g = gadget_1d_2(bit, query, shift); break;
      case GadgetFamily::one_d_3minus_eps: g = gadget_1d_3(bit, query); break;
      case GadgetFamily::two_d_3minus_eps:
        g = gadget_2d(query ? (bit ? 2 : 0) : (bit ? -1 : 1), shift);
        break;
    }
    out = i == 0 ? g : concat(out, g);
  }
  return normalize(out);
}

}  // namespace detail

/// Builds the gadget curves of `family` for `inst`. The 1D (2 - eps) and the 2D
/// families need a sparsity bound on A so that queries have complexity O(k).
inline GadgetSet generate(const OvInstance& inst, GadgetFamily family) {
  inst.validate();
  if (family != GadgetFamily::one_d_3minus_eps && !inst.sparsity) {
    throw InvalidInput(std::string(family_name(family)) + " needs a sparsity bound on A");
  }
  GadgetSet out;
  for (const auto& v : inst.a) out.queries.push_back(detail::gadget_curve(v, family, true));
  for (const auto& v : inst.b) out.inputs.push_back(detail::gadget_curve(v, family, false));
  return out;
}

struct SamplerConfig {
  std::size_t n_a = 4;
  std::size_t n_b = 4;
  std::size_t d = 4;
  std::optional<std::size_t> sparsity;
  /// Probability of a one, in percent, for unconstrained vectors.
  unsigned density_percent = 50;
  bool plant_orthogonal = false;
  std::uint64_t seed = 1;
};

struct SampledInstance {
  OvInstance instance;
  /// Indices (into A and B) of the planted orthogonal pair.
  std::optional<std::pair<std::size_t, std::size_t>> planted;
};

/// Seeded OV sampler; output depends only on the config (mt19937_64 bits are
/// consumed directly, never through library distributions).
inline SampledInstance sample_instance(const SamplerConfig& cfg) {
  if (cfg.d == 0) throw InvalidInput("vector dimension must be positive");
  std::mt19937_64 rng(cfg.seed);
  auto below = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  SampledInstance out;
  out.instance.d = cfg.d;
  out.instance.sparsity = cfg.sparsity;
  for (std::size_t i = 0; i < cfg.n_a; ++i) {
    BitVector v(cfg.d, 0);
    if (cfg.sparsity) {
      const auto ones = below(std::min(*cfg.sparsity, cfg.d) + 1);
      for (std::uint64_t j = 0; j < ones; ++j) v[below(cfg.d)] = 1;
    } else {
      for (auto& x : v) x = below(100) < cfg.density_percent ? 1 : 0;
    }
    out.instance.a.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < cfg.n_b; ++i) {
    BitVector v(cfg.d, 0);
    for (auto& x : v) x = below(100) < cfg.density_percent ? 1 : 0;
    out.instance.b.push_back(std::move(v));
  }
  if (cfg.plant_orthogonal && cfg.n_a > 0 && cfg.n_b > 0) {
    const auto ia = below(cfg.n_a);
    const auto ib = below(cfg.n_b);
    auto& a = out.instance.a[ia];
    auto& b = out.instance.b[ib];
    for (std::size_t j = 0; j < cfg.d; ++j) {
      if (a[j]) b[j] = 0;
    }
    out.planted = std::make_pair(ia, ib);
  }
  return out;
}

}  // namespace curveann
