#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "displace/error.hpp"
#include "displace/scoring.hpp"

namespace displace {

struct Ballot {
  std::int64_t multiplicity = 1;
  std::vector<Candidate> ranking;  // best first, a permutation of 0..x-1

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

struct Profile {
  std::size_t num_candidates = 0;
  std::vector<Ballot> ballots;

  std::int64_t num_voters() const {
    std::int64_t n = 0;
    for (const Ballot& b : ballots) n += b.multiplicity;
    return n;
  }
};

/** Honest totals plus the exogenous tie priority (lower wins ties). */
struct HonestScores {
  std::vector<Score> scores;
  std::vector<std::int64_t> tie_priority;

  std::size_t size() const { return scores.size(); }

  static HonestScores from_scores(std::vector<Score> s) {
    HonestScores h;
    h.tie_priority.resize(s.size());
    std::iota(h.tie_priority.begin(), h.tie_priority.end(), std::int64_t{0});
    h.scores = std::move(s);
    return h;
  }

  // Strict honest order: a ahead of b.
  bool ahead(Candidate a, Candidate b) const {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return tie_priority[a] < tie_priority[b];
  }
};

inline HonestScores tally(const Profile& profile, const ScoringVector& p) {
  if (p.size() != profile.num_candidates) {
    throw Error(Errc::length_mismatch, "scoring vector length differs from candidate count");
  }
  std::vector<Score> s(profile.num_candidates, 0);
  for (const Ballot& b : profile.ballots) {
    if (b.ranking.size() != profile.num_candidates) {
      throw Error(Errc::length_mismatch, "ballot ranking has wrong length");
    }
    for (std::size_t r = 0; r < b.ranking.size(); ++r) {
      Score& slot = s[b.ranking[r]];
      slot = checked_add(slot, checked_mul(b.multiplicity, p[r]));
    }
  }
  return HonestScores::from_scores(std::move(s));
}

inline std::vector<Candidate> honest_order(const HonestScores& h) {
  std::vector<Candidate> order(h.size());
  std::iota(order.begin(), order.end(), Candidate{0});
  std::sort(order.begin(), order.end(), [&](Candidate a, Candidate b) { return h.ahead(a, b); });
  return order;
}

struct BoundarySets {
  std::vector<Candidate> outsiders_star;  // strongest first
  std::vector<Candidate> weak_winners;    // weakest first
  std::size_t level = 0;
  std::size_t committee = 0;
};

inline std::size_t max_level(std::size_t x, std::size_t k) { return std::min(k, x - k); }

namespace detail {
inline void check_level(std::size_t x, std::size_t k, std::size_t level) {
  if (k < 1 || k + 1 > x) throw Error(Errc::level_out_of_range, "committee size must lie in [1, x-1]");
  if (level > max_level(x, k)) throw Error(Errc::level_out_of_range, "level exceeds min(k, x-k)");
}
}  // namespace detail

inline BoundarySets boundary_sets(std::span<const Candidate> order, std::size_t k, std::size_t level) {
  detail::check_level(order.size(), k, level);
  BoundarySets b;
  b.level = level;
  b.committee = k;
  b.outsiders_star.assign(order.begin() + k, order.begin() + k + level);
  b.weak_winners.assign(order.rbegin() + (order.size() - k), order.rbegin() + (order.size() - k + level));
  return b;
}

/**
 * The honest order restricted to ranks [k - K, k + K) with K = min(k, x-k).
 * Built by selection, so large electorates need no full sort.
 */
struct BoundaryWindow {
  std::vector<Candidate> ranked;
  std::size_t committee = 0;
  std::size_t half = 0;

  BoundarySets boundary(std::size_t level) const {
    if (level > half) throw Error(Errc::level_out_of_range, "level exceeds min(k, x-k)");
    BoundarySets b;
    b.level = level;
    b.committee = committee;
    b.outsiders_star.assign(ranked.begin() + half, ranked.begin() + half + level);
    for (std::size_t i = 0; i < level; ++i) b.weak_winners.push_back(ranked[half - 1 - i]);
    return b;
  }
};

inline BoundaryWindow boundary_window(const HonestScores& h, std::size_t k) {
  const std::size_t x = h.size();
  detail::check_level(x, k, 0);
  const std::size_t half = max_level(x, k);
  std::vector<Candidate> all(x);
  std::iota(all.begin(), all.end(), Candidate{0});
  auto cmp = [&](Candidate a, Candidate b) { return h.ahead(a, b); };
  auto first = all.begin() + static_cast<std::ptrdiff_t>(k - half);
  auto last = all.begin() + static_cast<std::ptrdiff_t>(k + half);
  std::nth_element(all.begin(), first, all.end(), cmp);
  if (last != all.end()) std::nth_element(first, last, all.end(), cmp);
  std::sort(first, last, cmp);
  return BoundaryWindow{std::vector<Candidate>(first, last), k, half};
}

}  // namespace displace
