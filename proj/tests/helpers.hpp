#pragma once

#include <vector>

#include "displace/displace.hpp"
#include "displace/experiments.hpp"

namespace displace::testing {

inline std::vector<APLadder> ladders_of(std::initializer_list<std::vector<Score>> segs) {
  std::vector<APLadder> out;
  for (const auto& s : segs) out.push_back(extract_ap_ladder(s));
  return out;
}

inline PrefixCapacities caps_of(std::initializer_list<std::vector<Score>> segs) {
  const auto l = ladders_of(segs);
  return aggregate_capacities(l);
}

// The 4-candidate Borda instance: honest scores (6,3,3,0), k = 2.
inline HonestScores four_candidates() { return HonestScores::from_scores({6, 3, 3, 0}); }

// A random nonincreasing segment with minimum `base` whose maximal step is
// exactly g (levels 0 and 1 both occur when len >= 2).
inline std::vector<Score> random_segment(Rng& rng, std::size_t len, Score g, Score max_level, Score base) {
  std::vector<Score> s(len);
  for (auto& v : s) v = base + g * rng.between(0, max_level);
  s[0] = base;
  if (len >= 2) s[1] = base + g;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace displace::testing
