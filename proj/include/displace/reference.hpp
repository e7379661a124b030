#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <vector>

#include "displace/election.hpp"
#include "displace/scoring.hpp"

// Exhaustive enumerations kept deliberately naive; they share no logic with
// the oracles they are used to check.
namespace displace {

inline std::set<std::vector<Score>> brute_force_realizable_set(std::span<const APLadder> ladders) {
  if (ladders.empty()) throw Error(Errc::empty, "no ladders");
  const std::size_t len = ladders.front().length();
  if (ladders.size() > 3 || len > 5) throw Error(Errc::too_large, "enumeration limited to m <= 3 and length <= 5");
  std::set<std::vector<Score>> acc{std::vector<Score>(len, 0)};
  for (const APLadder& lad : ladders) {
    if (lad.length() != len) throw Error(Errc::length_mismatch, "ladders differ in length");
    std::vector<Score> perm = lad.scores();
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<Score>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::set<std::vector<Score>> next;
    for (const auto& a : acc) {
      for (const auto& s : perms) {
        std::vector<Score> y = a;
        for (std::size_t i = 0; i < len; ++i) y[i] += s[i];
        next.insert(std::move(y));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

/** Largest level separated by some multiset of m coalition rankings. */
inline std::size_t brute_force_k_star(const HonestScores& h, const ScoringVector& p, std::int64_t m, std::size_t k) {
  const std::size_t x = h.size();
  if (p.size() != x) throw Error(Errc::length_mismatch, "scoring vector length differs from candidate count");
  if (x > 7 || m > 2 || m < 0) throw Error(Errc::too_large, "enumeration limited to x <= 7 and m <= 2");
  if (k < 1 || k >= x) throw Error(Errc::level_out_of_range, "committee size must lie in [1, x-1]");

  std::vector<Candidate> order(x);
  for (std::size_t i = 0; i < x; ++i) order[i] = static_cast<Candidate>(i);
  std::sort(order.begin(), order.end(), [&](Candidate a, Candidate b) {
    if (h.scores[a] != h.scores[b]) return h.scores[a] > h.scores[b];
    return h.tie_priority[a] < h.tie_priority[b];
  });

  // Points each candidate receives from one ranking.
  std::vector<std::vector<Score>> gains;
  std::vector<Candidate> ranking(order.begin(), order.end());
  std::sort(ranking.begin(), ranking.end());
  do {
    std::vector<Score> g(x);
    for (std::size_t r = 0; r < x; ++r) g[ranking[r]] = p[r];
    gains.push_back(std::move(g));
  } while (std::next_permutation(ranking.begin(), ranking.end()));

  const std::size_t top_level = std::min(k, x - k);
  std::size_t best = 0;
  auto consider = [&](const std::vector<Score>& fin) {
    for (std::size_t lv = top_level; lv > best; --lv) {
      Score lowest_out = fin[order[k]];
      for (std::size_t i = k; i < k + lv; ++i) lowest_out = std::min(lowest_out, fin[order[i]]);
      Score highest_in = fin[order[k - 1]];
      for (std::size_t i = k - lv; i < k; ++i) highest_in = std::max(highest_in, fin[order[i]]);
      if (lowest_out >= highest_in + 1) {
        best = lv;
        return;
      }
    }
  };

  std::vector<Score> fin(x);
  if (m == 0) {
    consider(h.scores);
  } else if (m == 1) {
    for (const auto& g : gains) {
      for (std::size_t c = 0; c < x; ++c) fin[c] = h.scores[c] + g[c];
      consider(fin);
    }
  } else {
    for (std::size_t a = 0; a < gains.size(); ++a) {
      for (std::size_t b = a; b < gains.size(); ++b) {
        for (std::size_t c = 0; c < x; ++c) fin[c] = h.scores[c] + gains[a][c] + gains[b][c];
        consider(fin);
        if (best == top_level) return best;
      }
    }
  }
  return best;
}

}  // namespace displace
