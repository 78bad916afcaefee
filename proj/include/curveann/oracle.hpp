#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curveann/curve.hpp"
#include "curveann/error.hpp"
#include "curveann/frechet.hpp"
#include "curveann/index.hpp"
#include "curveann/simplify.hpp"

namespace curveann {

struct ScanResult {
  /// within[i] is true iff d_F(inputs[i], Q) <= threshold.
  std::vector<bool> within;
  /// Smallest id with within[id], if any.
  std::optional<std::size_t> nearest_within;
};

/// Exact decision against every input.
inline ScanResult linear_scan(const std::vector<Curve>& inputs, const Curve& q, Coord threshold) {
  ScanResult out;
  out.within.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const bool ok = frechet_decide(inputs[i], q, threshold);
    out.within.push_back(ok);
    if (ok && !out.nearest_within) out.nearest_within = i;
  }
  return out;
}

inline constexpr std::size_t kMaxBruteForceVertices = 20;

/// Every first/last-preserving vertex subsequence of q that is a
/// delta-straightening, as 0-based index lists in ascending subset order.
inline std::vector<std::vector<std::size_t>> brute_force_straightenings(const Curve& q,
                                                                        Coord delta) {
  if (q.size() > kMaxBruteForceVertices) {
    throw InvalidInput("brute_force_straightenings is limited to 20 vertices");
  }
  if (q.size() < 2) throw InvalidInput("brute_force_straightenings needs two vertices");
  const std::size_t inner = q.size() - 2;
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner); ++mask) {
    std::vector<std::size_t> idx{0};
    for (std::size_t b = 0; b < inner; ++b) {
      if (mask & (std::uint64_t{1} << b)) idx.push_back(b + 1);
    }
    idx.push_back(q.size() - 1);
    if (check_straightening(q, idx, delta)) out.push_back(std::move(idx));
  }
  return out;
}

enum class Verdict { ok, match_too_far, missed_near_input };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ok: return "OK";
    case Verdict::match_too_far: return "match_too_far";
    case Verdict::missed_near_input: return "missed_near_input";
  }
  return "?";
}

/// Checks one answer against the c-ANN contract: a match must be within
/// c * delta, and "no" is only allowed when no input is within delta.
inline Verdict check_outcome(const std::vector<Curve>& inputs, const IndexParams& params,
                             const Curve& q, const QueryOutcome& outcome) {
  if (outcome.match) {
    if (*outcome.match >= inputs.size()) return Verdict::match_too_far;
    return frechet_decide(inputs[*outcome.match], q, params.factor_delta()) ? Verdict::ok
                                                                            : Verdict::match_too_far;
  }
  return linear_scan(inputs, q, params.delta).nearest_within ? Verdict::missed_near_input
                                                             : Verdict::ok;
}

}  // namespace curveann
