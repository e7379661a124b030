#pragma once

#include <map>
#include <optional>
#include <utility>

#include "displace/demand.hpp"
#include "displace/oracle.hpp"

namespace displace {

struct CutoffBounds {
  Score low = 0;
  Score high = 0;
};

/** Every separating cutoff at this level lies in [low, high]. */
inline CutoffBounds cutoff_bounds(const HonestScores& h, const BoundarySets& b, std::int64_t m,
                                  const ScoringVector& p) {
  if (b.level == 0) throw Error(Errc::empty_boundary, "cutoff bounds need a positive level");
  const Score lift_low = checked_mul(m, p.bottom());
  const Score lift_high = checked_mul(m, p.top());
  CutoffBounds cb;
  cb.low = checked_add(h.scores[b.weak_winners.front()], lift_low);
  cb.high = checked_add(h.scores[b.outsiders_star.front()], lift_high);
  for (Candidate t : b.weak_winners) cb.low = std::min(cb.low, checked_add(h.scores[t], lift_low));
  for (Candidate o : b.outsiders_star) cb.high = std::max(cb.high, checked_add(h.scores[o], lift_high));
  return cb;
}

/**
 * boost_max is the largest boost-feasible cutoff and suppress_min the
 * smallest suppress-feasible one, each reported even when they do not
 * overlap. b_min/b_max are set only when the level is feasible; at level 0
 * the level is feasible with no interval.
 */
struct EnvelopeResult {
  bool feasible = false;
  std::optional<Score> b_min;
  std::optional<Score> b_max;
  std::optional<Score> suppress_min;
  std::optional<Score> boost_max;
  std::size_t level = 0;
};

struct LevelCapacities {
  PrefixCapacities high;
  PrefixCapacities low;
};

inline LevelCapacities level_capacities(const ScoringVector& p, std::size_t level, std::int64_t m) {
  LevelCapacities lc;
  if (level == 0) return lc;
  lc.high = replicated_capacities(extract_ap_ladder(p.top_segment(level)), m);
  lc.low = replicated_capacities(extract_ap_ladder(p.bottom_segment(level)), m);
  return lc;
}

inline EnvelopeResult feasible_envelope_at_level(const HonestScores& h, const BoundarySets& b,
                                                 const PrefixCapacities& caps_high,
                                                 const PrefixCapacities& caps_low, CutoffBounds bounds) {
  EnvelopeResult r;
  r.level = b.level;
  if (b.level == 0) {
    r.feasible = true;
    return r;
  }
  auto boost_ok = [&](Score B) { return boost_feasible(compute_demand_vectors(h, b, B), caps_high); };
  auto suppress_ok = [&](Score B) { return suppress_feasible(compute_demand_vectors(h, b, B), caps_low); };

  // Boost feasibility holds on a prefix of [low, high]; find its last point.
  if (boost_ok(bounds.low)) {
    Score lo = bounds.low, hi = bounds.high;  // boost_ok(lo) holds
    while (lo < hi) {
      Score mid = lo + (hi - lo + 1) / 2;
      if (boost_ok(mid)) lo = mid; else hi = mid - 1;
    }
    r.boost_max = lo;
  }
  // Suppress feasibility holds on a suffix; find its first point.
  if (suppress_ok(bounds.high)) {
    Score lo = bounds.low, hi = bounds.high;  // suppress_ok(hi) holds
    while (lo < hi) {
      Score mid = lo + (hi - lo) / 2;
      if (suppress_ok(mid)) hi = mid; else lo = mid + 1;
    }
    r.suppress_min = lo;
  }
  if (r.boost_max && r.suppress_min && *r.suppress_min <= *r.boost_max) {
    r.feasible = true;
    r.b_min = r.suppress_min;
    r.b_max = r.boost_max;
  }
  return r;
}

enum class LevelSearch { binary, linear };

struct DisplacementResult {
  std::size_t k_star = 0;
  std::optional<Score> b_min_star;
  std::optional<Score> b_max_star;
  std::map<std::size_t, EnvelopeResult> per_level;
};

inline EnvelopeResult envelope_for_level(const HonestScores& h, const BoundaryWindow& w, const ScoringVector& p,
                                         std::int64_t m, std::size_t level) {
  const BoundarySets b = w.boundary(level);
  if (level == 0) return feasible_envelope_at_level(h, b, {}, {}, {});
  const LevelCapacities lc = level_capacities(p, level, m);
  return feasible_envelope_at_level(h, b, lc.high, lc.low, cutoff_bounds(h, b, m, p));
}

inline DisplacementResult maximize_displacement(const HonestScores& h, const ScoringVector& p, std::size_t k,
                                                std::int64_t m, LevelSearch strategy = LevelSearch::binary,
                                                bool keep_levels = false) {
  if (p.size() != h.size()) throw Error(Errc::length_mismatch, "scoring vector length differs from candidate count");
  if (m < 0) throw Error(Errc::invalid_argument, "negative coalition size");
  const BoundaryWindow w = boundary_window(h, k);
  DisplacementResult res;
  auto eval = [&](std::size_t level) {
    EnvelopeResult e = envelope_for_level(h, w, p, m, level);
    if (keep_levels) res.per_level[level] = e;
    return e;
  };

  std::optional<EnvelopeResult> best;
  if (strategy == LevelSearch::binary) {
    std::size_t lo = 0, hi = w.half;  // level lo is feasible
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo + 1) / 2;
      EnvelopeResult e = eval(mid);
      if (e.feasible) {
        lo = mid;
        best = e;
      } else {
        hi = mid - 1;
      }
    }
    res.k_star = lo;
    if (lo > 0 && (!best || best->level != lo)) best = eval(lo);
  } else {
    for (std::size_t level = w.half; level >= 1; --level) {
      EnvelopeResult e = eval(level);
      if (e.feasible) {
        res.k_star = level;
        best = e;
        break;
      }
    }
  }
  if (res.k_star > 0) {
    res.b_min_star = best->b_min;
    res.b_max_star = best->b_max;
  }
  return res;
}

}  // namespace displace
