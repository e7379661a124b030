#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "displace/election.hpp"

namespace displace {

/**
 * Demands at a cutoff. boost[i] is owed to boost_targets[i], nonincreasing;
 * tolerance[i] bounds what tolerance_targets[i] may gain, nondecreasing.
 * A negative tolerance means that winner already sits at or above B.
 */
struct DemandPair {
  std::vector<Score> boost;
  std::vector<Candidate> boost_targets;
  std::vector<Score> tolerance;
  std::vector<Candidate> tolerance_targets;
  Score cutoff = 0;
  std::size_t level = 0;
};

inline DemandPair compute_demand_vectors(const HonestScores& h, const BoundarySets& b, Score cutoff) {
  DemandPair d;
  d.cutoff = cutoff;
  d.level = b.level;
  const std::size_t n = b.level;

  std::vector<std::size_t> idx(n);
  std::vector<Score> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = std::max<Score>(0, checked_sub(cutoff, h.scores[b.outsiders_star[i]]));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) { return raw[a] > raw[c]; });
  for (std::size_t i : idx) {
    d.boost.push_back(raw[i]);
    d.boost_targets.push_back(b.outsiders_star[i]);
  }

  for (std::size_t i = 0; i < n; ++i) raw[i] = checked_sub(checked_sub(cutoff, 1), h.scores[b.weak_winners[i]]);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) { return raw[a] < raw[c]; });
  for (std::size_t i : idx) {
    d.tolerance.push_back(raw[i]);
    d.tolerance_targets.push_back(b.weak_winners[i]);
  }
  return d;
}

}  // namespace displace
