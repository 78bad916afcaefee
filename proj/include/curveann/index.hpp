#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "curveann/candidates.hpp"
#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/error.hpp"
#include "curveann/simplify.hpp"

namespace curveann {

enum class Variant : std::uint8_t {
  one_plus_eps = 0,
  two_plus_eps_fast_query = 1,
  two_plus_eps_small_space = 2,
  two_plus_eps_linear = 3,
  three_plus_eps = 4,
};

inline constexpr Variant kAllVariants[] = {
    Variant::one_plus_eps, Variant::two_plus_eps_fast_query, Variant::two_plus_eps_small_space,
    Variant::two_plus_eps_linear, Variant::three_plus_eps};

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::one_plus_eps: return "one_plus_eps";
    case Variant::two_plus_eps_fast_query: return "two_plus_eps_fast_query";
    case Variant::two_plus_eps_small_space: return "two_plus_eps_small_space";
    case Variant::two_plus_eps_linear: return "two_plus_eps_linear";
    case Variant::three_plus_eps: return "three_plus_eps";
  }
  return "unknown";
}

inline std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

struct IndexParams {
  Coord delta;
  Ratio eps{1, 1};
  std::size_t k = 2;
  Variant variant = Variant::one_plus_eps;

  /// Approximation factor c of the variant: Match answers are within c * delta.
  [[nodiscard]] Ratio factor() const {
    std::int64_t base = 2;
    if (variant == Variant::one_plus_eps) base = 1;
    if (variant == Variant::three_plus_eps) base = 3;
    return Ratio(base * eps.den + eps.num, eps.den);
  }

  [[nodiscard]] Coord factor_delta() const { return factor().scale_exact(delta); }

  /// Grid width of the dictionary keys.
  [[nodiscard]] GridSpec grid() const {
    return GridSpec(eps.scale_exact(delta, variant == Variant::two_plus_eps_small_space ? 4 : 2));
  }

  void validate() const {
    if (delta <= Coord{}) throw InvalidParams("delta must be positive");
    if (eps.num <= 0 || eps > Ratio(1, 1)) throw InvalidParams("eps must lie in (0, 1]");
    if (k < 2) throw InvalidParams("k must be at least 2");
    if (static_cast<std::uint8_t>(variant) > 4) throw InvalidParams("unknown variant");
    (void)grid();
    (void)factor_delta();
  }
};

struct BuildOptions {
  /// Abort with BudgetExceeded once the dictionary holds more keys (0: no limit).
  std::size_t max_keys = 0;
};

struct QueryStats {
  /// Vertex subsequences of the query that were tested as straightenings.
  std::size_t subsequences = 0;
  /// Dictionary lookups.
  std::size_t probes = 0;
};

struct QueryOutcome {
  /// Id (position in the input list) of the reported curve, or nullopt for "no".
  std::optional<std::uint32_t> match;
  QueryStats stats;

  [[nodiscard]] bool is_match() const { return match.has_value(); }
};

class AnnIndex {
 public:
  /// Builds the variant's dictionary over `inputs` (normalized on entry).
  static AnnIndex build(const std::vector<Curve>& inputs, const IndexParams& params,
                        const BuildOptions& options = {}) {
    params.validate();
    AnnIndex ix;
    ix.params_ = params;
    ix.inputs_.reserve(inputs.size());
    for (const auto& raw : inputs) {
      if (raw.dim() != 1) throw InvalidInput("index inputs must be 1D curves");
      if (raw.size() < 2) throw InvalidInput("index inputs need at least two vertices");
      Curve c = normalize(raw);
      if (c.size() < 2) throw InvalidInput("index input degenerates to a single point");
      ix.inputs_.push_back(std::move(c));
    }
    const GridSpec grid = params.grid();
    const Coord w = grid.width;
    const Coord d = params.delta;
    for (std::uint32_t id = 0; id < ix.inputs_.size(); ++id) {
      const Curve& p = ix.inputs_[id];
      auto sink = [&](std::span<const std::int64_t> cells) {
        ix.insert(cells, id);
        if (options.max_keys != 0 && ix.dict_.size() > options.max_keys) {
          throw BudgetExceeded("dictionary exceeded " + std::to_string(options.max_keys) + " keys");
        }
        return false;
      };
      switch (params.variant) {
        case Variant::one_plus_eps:
        case Variant::two_plus_eps_fast_query:
          enumerate_keys(p, KeySpec{d * 11 + w, d + w, std::nullopt, params.k}, grid, sink);
          break;
        case Variant::two_plus_eps_small_space:
        case Variant::three_plus_eps: {
          const Signature sig = compute_signature(p, d);
          if (sig.curve.size() > params.k + 2) {
            ix.skipped_.push_back(id);
            break;
          }
          const bool small = params.variant == Variant::two_plus_eps_small_space;
          const KeySpec spec{small ? d * 22 + w : d * 2 + w, small ? d * 2 + w : d * 3 + w, d + w,
                             params.k};
          enumerate_keys(sig.curve, spec, grid, sink);
          break;
        }
        case Variant::two_plus_eps_linear: {
          const Signature sig = compute_signature(p, d);
          if (sig.curve.size() > params.k + 2) {
            ix.skipped_.push_back(id);
            break;
          }
          const GridKey key = snap_curve(sig.curve, grid);
          sink(key.cells);
          break;
        }
      }
    }
    ix.index_prefixes();
    return ix;
  }

  /// Reassembles an index from stored parts (used by deserialization).
  static AnnIndex from_parts(const IndexParams& params, std::vector<Curve> inputs,
                             std::vector<std::uint32_t> skipped,
                             const std::vector<std::pair<GridKey, std::uint32_t>>& entries) {
    params.validate();
    AnnIndex ix;
    ix.params_ = params;
    ix.inputs_ = std::move(inputs);
    ix.skipped_ = std::move(skipped);
    for (const auto& [key, id] : entries) {
      if (id >= ix.inputs_.size()) throw DecodeError("key refers to a missing input");
      if (!ix.dict_.emplace(encode_cells(key.cells), id).second) {
        throw DecodeError("duplicate key in key table");
      }
    }
    ix.index_prefixes();
    return ix;
  }

  /// Answers a query of complexity 2..k (after normalization).
  [[nodiscard]] QueryOutcome query(const Curve& raw) const {
    if (raw.dim() != 1) throw InvalidQuery("queries must be 1D curves");
    if (raw.size() < 2) throw InvalidQuery("queries need at least two vertices");
    const Curve q = normalize(raw);
    if (q.size() < 2) throw InvalidQuery("query degenerates to a single point");
    if (q.size() > params_.k) {
      throw InvalidQuery("query complexity " + std::to_string(q.size()) + " exceeds k = " +
                         std::to_string(params_.k));
    }
    const GridSpec grid = params_.grid();
    const Coord d = params_.delta;
    switch (params_.variant) {
      case Variant::one_plus_eps: return query_straightenings(q, d, grid);
      case Variant::two_plus_eps_small_space: return query_straightenings(q, d * 2, grid);
      case Variant::two_plus_eps_fast_query: return query_signature(q, d, grid);
      case Variant::three_plus_eps: return query_signature(q, d * 2, grid);
      case Variant::two_plus_eps_linear: return query_enumerate(q, d, grid);
    }
    return {};
  }

  [[nodiscard]] std::optional<std::uint32_t> lookup(std::span<const std::int64_t> cells) const {
    auto it = dict_.find(encode_cells(cells));
    if (it == dict_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const IndexParams& params() const { return params_; }
  [[nodiscard]] const std::vector<Curve>& inputs() const { return inputs_; }
  [[nodiscard]] std::size_t key_count() const { return dict_.size(); }
  /// Inputs left out of the dictionary because their delta-signature has more
  /// than k + 2 vertices.
  [[nodiscard]] const std::vector<std::uint32_t>& skipped() const { return skipped_; }

  /// All (key, id) pairs in ascending key order.
  [[nodiscard]] std::vector<std::pair<GridKey, std::uint32_t>> entries() const {
    std::vector<std::pair<GridKey, std::uint32_t>> out;
    out.reserve(dict_.size());
    for (const auto& [bytes, id] : dict_) out.emplace_back(GridKey{decode_cells(bytes)}, id);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void insert(std::span<const std::int64_t> cells, std::uint32_t id) {
    dict_.emplace(encode_cells(cells), id);
  }

  void index_prefixes() {
    prefixes_.clear();
    if (params_.variant != Variant::two_plus_eps_linear) return;
    for (const auto& [bytes, id] : dict_) {
      const auto cells = decode_cells(bytes);
      for (std::size_t l = 1; l <= cells.size(); ++l) {
        prefixes_.insert(encode_cells(std::span(cells).first(l)));
      }
    }
  }

  QueryOutcome query_straightenings(const Curve& q, Coord delta, const GridSpec& grid) const {
    QueryOutcome out;
    const std::size_t n = q.size();
    const std::size_t inner = n - 2;
    std::vector<std::size_t> idx;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner); ++mask) {
      idx.assign(1, 0);
      for (std::size_t b = 0; b < inner; ++b) {
        if (mask & (std::uint64_t{1} << b)) idx.push_back(b + 1);
      }
      idx.push_back(n - 1);
      ++out.stats.subsequences;
      if (!check_straightening(q, idx, delta)) continue;
      std::vector<std::int64_t> cells;
      cells.reserve(idx.size());
      for (auto i : idx) cells.push_back(grid.cell(q[i]));
      const GridKey key = detail::normalized_key(cells);
      ++out.stats.probes;
      if (auto hit = lookup(key.cells)) {
        out.match = hit;
        return out;
      }
    }
    return out;
  }

  QueryOutcome query_signature(const Curve& q, Coord delta, const GridSpec& grid) const {
    QueryOutcome out;
    const Signature sig = compute_signature(q, delta);
    const GridKey key = snap_curve(sig.curve, grid);
    ++out.stats.probes;
    out.match = lookup(key.cells);
    return out;
  }

  QueryOutcome query_enumerate(const Curve& q, Coord delta, const GridSpec& grid) const {
    QueryOutcome out;
    const Coord w = grid.width;
    const KeySpec spec{delta + w, delta * 2 + w, delta + w, params_.k + 2};
    enumerate_keys(
        q, spec, grid,
        [&](std::span<const std::int64_t> cells) {
          ++out.stats.probes;
          out.match = lookup(cells);
          return out.match.has_value();
        },
        [&](std::span<const std::int64_t> cells) {
          return prefixes_.contains(encode_cells(cells));
        });
    return out;
  }

  IndexParams params_;
  std::vector<Curve> inputs_;
  std::vector<std::uint32_t> skipped_;
  std::unordered_map<std::string, std::uint32_t> dict_;
  std::unordered_set<std::string> prefixes_;
};

}  // namespace curveann
