#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "displace/demand.hpp"
#include "displace/scoring.hpp"

namespace displace {

inline std::vector<Score> lattice_adjust_up(std::span<const Score> q, Score g, Score alpha) {
  std::vector<Score> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = checked_add(q[i], floor_mod(checked_sub(alpha, q[i]), g));
  return out;
}

inline std::vector<Score> lattice_adjust_down(std::span<const Score> u, Score g, Score alpha) {
  std::vector<Score> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = checked_sub(u[i], floor_mod(checked_sub(u[i], alpha), g));
  return out;
}

namespace detail {

inline void check_length(std::size_t n, const PrefixCapacities& caps) {
  if (n != caps.length()) throw Error(Errc::length_mismatch, "vector length differs from capacity length");
}

inline std::vector<Score> sorted_desc(std::span<const Score> v) {
  std::vector<Score> s(v.begin(), v.end());
  if (!std::is_sorted(s.begin(), s.end(), std::greater<>())) std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

// Every sorted prefix of v (nonincreasing) stays within F.
inline bool prefixes_within(std::span<const Score> v_desc, const PrefixCapacities& caps) {
  Score run = 0;
  for (std::size_t t = 0; t < v_desc.size(); ++t) {
    run = checked_add(run, v_desc[t]);
    if (run > caps.prefix[t]) return false;
  }
  return true;
}

// A single ballot can place its scores in any order and nothing else, so
// sorted dominance slot by slot is exact.
inline bool single_ballot_dominated(std::span<const Score> v_desc, const PrefixCapacities& caps) {
  for (std::size_t t = 0; t < v_desc.size(); ++t) {
    if (v_desc[t] > caps.increment(t + 1)) return false;
  }
  return true;
}

}  // namespace detail

/** Sorted prefix sums within F(t) and the total equal to F(k'). */
inline bool block_hlp_member(std::span<const Score> y, const PrefixCapacities& caps) {
  detail::check_length(y.size(), caps);
  const std::vector<Score> s = detail::sorted_desc(y);
  Score run = 0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    run = checked_add(run, s[t]);
    if (run > caps.prefix[t]) return false;
  }
  return run == caps.total();
}

/**
 * Sorted prefix bounds plus the residue class. Exact for one ballot. For two
 * or more it is necessary but not always sufficient: (3,1,0) twice accepts
 * (4,2,2) and (2,1,0,0) twice accepts (3,1,1,1). realize_ap settles such
 * points exactly.
 */
inline bool realizable(std::span<const Score> y, const PrefixCapacities& caps) {
  detail::check_length(y.size(), caps);
  if (caps.ballot_count == 1) {
    const std::vector<Score> s = detail::sorted_desc(y);
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s[t] != caps.increment(t + 1)) return false;
    }
    return true;
  }
  if (!block_hlp_member(y, caps)) return false;
  for (Score v : y) {
    if (floor_mod(v, caps.step) != caps.residue) return false;
  }
  return true;
}

/** Some aggregate accepted by realizable() dominates q coordinatewise. */
inline bool ap_demand_feasible(std::span<const Score> q, const PrefixCapacities& caps) {
  detail::check_length(q.size(), caps);
  if (q.empty()) return true;
  std::vector<Score> adj = lattice_adjust_up(q, caps.step, caps.residue);
  if (!std::is_sorted(adj.begin(), adj.end(), std::greater<>())) std::sort(adj.begin(), adj.end(), std::greater<>());
  if (caps.ballot_count == 1) return detail::single_ballot_dominated(adj, caps);
  return detail::prefixes_within(adj, caps);
}

inline bool boost_feasible(const DemandPair& d, const PrefixCapacities& caps_high) {
  return ap_demand_feasible(d.boost, caps_high);
}

/** Some aggregate accepted by realizable() stays below the tolerances coordinatewise. */
inline bool suppress_feasible(const DemandPair& d, const PrefixCapacities& caps_low) {
  detail::check_length(d.tolerance.size(), caps_low);
  if (d.tolerance.empty()) return true;
  std::vector<Score> adj = lattice_adjust_down(d.tolerance, caps_low.step, caps_low.residue);
  const Score floor_sum = caps_low.increment(caps_low.length());
  for (Score v : adj) {
    if (v < floor_sum) return false;
  }
  for (Score& v : adj) v = checked_sub(0, v);
  return ap_demand_feasible(adj, mirrored(caps_low));
}

/** Distinct values reachable as one entry from each ladder, ascending. */
inline std::vector<Score> ladder_sumset(std::span<const APLadder> ladders, std::size_t cap = 1'000'000) {
  std::vector<Score> acc{0};
  for (const APLadder& lad : ladders) {
    std::vector<Score> vals = lad.scores();
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<Score> next;
    next.reserve(acc.size() * vals.size());
    for (Score a : acc) {
      for (Score v : vals) next.push_back(checked_add(a, v));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > cap) throw Error(Errc::sumset_too_large, "sumset exceeds " + std::to_string(cap) + " elements");
    acc = std::move(next);
  }
  return acc;
}

/** Necessary condition for ladders whose steps may differ. */
inline bool mixed_step_necessary(std::span<const Score> y, std::span<const APLadder> ladders,
                                 std::size_t cap = 1'000'000) {
  if (ladders.empty()) throw Error(Errc::empty, "no ladders");
  const std::size_t len = ladders.front().length();
  if (y.size() != len) throw Error(Errc::length_mismatch, "vector length differs from ladder length");
  PrefixCapacities caps;
  caps.prefix.assign(len, 0);
  for (const APLadder& lad : ladders) {
    if (lad.length() != len) throw Error(Errc::length_mismatch, "ladders differ in length");
    Score run = 0;
    for (std::size_t j = 0; j < len; ++j) {
      run = checked_add(run, lad.score(j));
      caps.prefix[j] = checked_add(caps.prefix[j], run);
    }
  }
  const std::vector<Score> sums = ladder_sumset(ladders, cap);
  if (!block_hlp_member(y, caps)) return false;
  return std::all_of(y.begin(), y.end(), [&](Score v) { return std::binary_search(sums.begin(), sums.end(), v); });
}

}  // namespace displace
