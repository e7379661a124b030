#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "displace/ballots.hpp"
#include "displace/election.hpp"

namespace displace {

struct GreedyResult {
  std::size_t displaced = 0;
  BallotSet ballots;
};

/**
 * Myopic heuristic: each ballot puts the strongest outsider still outside
 * the current Top-k first and the rest in increasing order of current
 * score, so the strongest incumbents sit lowest. Displacement is counted
 * after a recount under the default tie priority.
 */
inline GreedyResult greedy_promote(const HonestScores& h, const ScoringVector& p, std::int64_t m, std::size_t k) {
  const std::size_t x = h.size();
  if (p.size() != x) throw Error(Errc::length_mismatch, "scoring vector length differs from candidate count");
  if (k < 1 || k >= x) throw Error(Errc::level_out_of_range, "committee size must lie in [1, x-1]");
  const std::vector<Candidate> honest = honest_order(h);
  std::vector<bool> winner(x, false);
  for (std::size_t i = 0; i < k; ++i) winner[honest[i]] = true;

  HonestScores cur = h;
  GreedyResult res;
  std::vector<bool> in_top(x);
  for (std::int64_t v = 0; v < m; ++v) {
    const std::vector<Candidate> now = honest_order(cur);
    std::fill(in_top.begin(), in_top.end(), false);
    for (std::size_t i = 0; i < k; ++i) in_top[now[i]] = true;

    std::optional<Candidate> target;
    for (Candidate c : now) {
      if (winner[c] || in_top[c]) continue;
      if (!target || cur.scores[c] > cur.scores[*target] ||
          (cur.scores[c] == cur.scores[*target] && h.scores[c] > h.scores[*target])) {
        target = c;
      }
    }

    std::vector<Candidate> rest;
    rest.reserve(x);
    for (Candidate c : now) {
      if (!target || c != *target) rest.push_back(c);
    }
    // `now` is best-first; reversing gives increasing current score.
    std::reverse(rest.begin(), rest.end());
    if (!target) {
      std::stable_partition(rest.begin(), rest.end(), [&](Candidate c) { return !winner[c]; });
    }
    std::vector<Candidate> ranking;
    ranking.reserve(x);
    if (target) ranking.push_back(*target);
    ranking.insert(ranking.end(), rest.begin(), rest.end());
    for (std::size_t r = 0; r < x; ++r) cur.scores[ranking[r]] = checked_add(cur.scores[ranking[r]], p[r]);
    res.ballots.rankings.push_back(std::move(ranking));
  }

  const std::vector<Candidate> fin = honest_order(cur);
  for (std::size_t i = 0; i < k; ++i) {
    if (!winner[fin[i]]) ++res.displaced;
  }
  return res;
}

}  // namespace displace
