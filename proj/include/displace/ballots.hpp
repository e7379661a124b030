#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "displace/demand.hpp"
#include "displace/oracle.hpp"

namespace displace {

enum class ExtendRule {
  saturate,    // raise coordinates to capacity, largest demand first
  water_fill,  // raise the smallest coordinates first
};

namespace detail {

// Unit-step coordinates: z = (y - alpha) / g and G(t) = (F(t) - t alpha) / g.
inline std::vector<Score> unit_caps(const PrefixCapacities& caps) {
  std::vector<Score> G(caps.length());
  for (std::size_t t = 1; t <= caps.length(); ++t) {
    G[t - 1] = checked_sub(caps.at(t), checked_mul(static_cast<Score>(t), caps.residue)) / caps.step;
  }
  return G;
}

inline bool unit_within(std::span<const Score> z, std::span<const Score> G) {
  return prefixes_within(sorted_desc(z), PrefixCapacities{std::vector<Score>(G.begin(), G.end())});
}

// Largest raise of z[i] that keeps every sorted prefix within G.
inline Score saturation(std::span<const Score> z, std::size_t i, std::span<const Score> G) {
  std::vector<Score> others;
  others.reserve(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j != i) others.push_back(z[j]);
  }
  std::sort(others.begin(), others.end(), std::greater<>());
  Score best = std::numeric_limits<Score>::max();
  Score run = 0;
  for (std::size_t s = 1; s <= z.size(); ++s) {
    best = std::min(best, G[s - 1] - z[i] - run);
    if (s - 1 < others.size()) run += others[s - 1];
  }
  return best;
}

inline void saturate_in_order(std::vector<Score>& z, std::span<const Score> G) {
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] > z[b]; });
  for (std::size_t i : order) z[i] += saturation(z, i, G);
}

inline void water_fill(std::vector<Score>& z, std::span<const Score> G) {
  const std::size_t n = z.size();
  std::vector<bool> frozen(n, false);
  for (;;) {
    std::optional<Score> low;
    for (std::size_t i = 0; i < n; ++i) {
      if (!frozen[i] && (!low || z[i] < *low)) low = z[i];
    }
    if (!low) return;
    std::vector<std::size_t> group;
    std::optional<Score> next;
    for (std::size_t i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      if (z[i] == *low) group.push_back(i);
      else if (!next || z[i] < *next) next = z[i];
    }
    const Score room = G.back() - std::accumulate(z.begin(), z.end(), Score{0});
    Score hi = next ? std::min(*next - *low, room) : room;
    Score lo = 0;
    auto lifted = [&](Score delta) {
      std::vector<Score> w = z;
      for (std::size_t i : group) w[i] += delta;
      return w;
    };
    while (lo < hi) {
      Score mid = lo + (hi - lo + 1) / 2;
      if (unit_within(lifted(mid), G)) lo = mid; else hi = mid - 1;
    }
    if (lo > 0) {
      z = lifted(lo);
      continue;
    }
    for (std::size_t i : group) {
      if (saturation(z, i, G) >= 1) ++z[i];
      else frozen[i] = true;
    }
  }
}

}  // namespace detail

/**
 * A base point y >= q: total T, every entry in the residue class, every
 * sorted prefix within F. Entries outside the class are first lifted to the
 * next class member, which every valid y dominates anyway; the lifted vector
 * must satisfy the prefix bounds.
 */
inline std::vector<Score> extend_to_base(std::span<const Score> q, const PrefixCapacities& caps,
                                         ExtendRule rule = ExtendRule::saturate) {
  detail::check_length(q.size(), caps);
  if (caps.ballot_count == 1) {
    // One ballot: the only base points are permutations of the ladder, and
    // pairing sorted orders is the dominating one if any is.
    std::vector<std::size_t> order(q.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] > q[b]; });
    std::vector<Score> y(q.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
      y[order[t]] = caps.increment(t + 1);
      if (y[order[t]] < q[order[t]]) throw Error(Errc::infeasible_input, "demand exceeds the single ballot's ladder");
    }
    return y;
  }
  const Score g = caps.step;
  std::vector<Score> z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Score lifted = checked_add(q[i], floor_mod(checked_sub(caps.residue, q[i]), g));
    z[i] = checked_sub(lifted, caps.residue) / g;
  }
  const std::vector<Score> G = detail::unit_caps(caps);
  if (!detail::unit_within(z, G)) throw Error(Errc::infeasible_input, "demand exceeds prefix capacities");
  if (rule == ExtendRule::saturate) detail::saturate_in_order(z, G);
  else detail::water_fill(z, G);
  if (!G.empty() && std::accumulate(z.begin(), z.end(), Score{0}) != G.back()) {
    throw Error(Errc::internal_realization_failure, "extension stopped short of the base");
  }
  std::vector<Score> y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = z[i] * g + caps.residue;
  return y;
}

/** assignments[v][i] is the score ballot v gives target i. */
struct Realization {
  std::vector<std::vector<Score>> assignments;
};

struct RealizeOptions {
  std::size_t search_budget = 2'000'000;
  std::size_t layered_budget = 50'000'000;
};

namespace detail {

using Heights = std::vector<std::vector<Score>>;

inline bool heights_match(const Heights& h, std::span<const Score> demand, std::span<const APLadder> ladders) {
  std::vector<Score> col(demand.size(), 0);
  for (std::size_t v = 0; v < ladders.size(); ++v) {
    std::vector<Score> s = h[v];
    std::sort(s.begin(), s.end(), std::greater<>());
    if (s != ladders[v].levels) return false;
    for (std::size_t i = 0; i < demand.size(); ++i) col[i] += h[v][i];
  }
  return std::equal(col.begin(), col.end(), demand.begin(), demand.end());
}

// Nested 0-1 layers: at each unit level a ballot keeps the targets with the
// largest remaining demand among those it kept one level down.
inline std::optional<Heights> layered_greedy(std::span<const Score> demand, std::span<const APLadder> ladders,
                                             std::size_t budget) {
  const std::size_t n = demand.size(), m = ladders.size();
  Score top = 0;
  for (const APLadder& lad : ladders) top = std::max(top, lad.levels.front());
  if (static_cast<double>(top) * static_cast<double>(m) * static_cast<double>(n) > static_cast<double>(budget)) {
    return std::nullopt;
  }
  std::vector<Score> rem(demand.begin(), demand.end());
  Heights h(m, std::vector<Score>(n, 0));
  std::vector<std::vector<std::size_t>> kept(m);
  for (auto& k : kept) {
    k.resize(n);
    std::iota(k.begin(), k.end(), std::size_t{0});
  }
  for (Score level = 1; level <= top; ++level) {
    for (std::size_t v = 0; v < m; ++v) {
      const auto& lv = ladders[v].levels;
      const auto count = static_cast<std::size_t>(
          std::count_if(lv.begin(), lv.end(), [&](Score l) { return l >= level; }));
      auto& k = kept[v];
      std::stable_sort(k.begin(), k.end(), [&](std::size_t a, std::size_t b) {
        return rem[a] != rem[b] ? rem[a] > rem[b] : a < b;
      });
      k.resize(count);
      for (std::size_t i : k) {
        --rem[i];
        ++h[v][i];
      }
    }
  }
  return h;
}

// Ballot by ballot, largest level to the largest remaining demand.
inline Heights ballotwise_greedy(std::span<const Score> demand, std::span<const APLadder> ladders) {
  const std::size_t n = demand.size();
  std::vector<Score> rem(demand.begin(), demand.end());
  Heights h(ladders.size(), std::vector<Score>(n, 0));
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < ladders.size(); ++v) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t j = 0; j < n; ++j) {
      h[v][order[j]] = ladders[v].levels[j];
      rem[order[j]] -= ladders[v].levels[j];
    }
  }
  return h;
}

// Exhaustive depth-first search with memoized dead ends.
class ExactSearch {
 public:
  ExactSearch(std::span<const Score> demand, std::span<const APLadder> ladders, std::size_t budget)
      : n_(demand.size()), m_(ladders.size()), ladders_(ladders), budget_(budget),
        rem_(demand.begin(), demand.end()), h_(m_, std::vector<Score>(n_, 0)) {
    suffix_.assign(m_ + 1, std::vector<Score>(n_, 0));
    for (std::size_t v = m_; v-- > 0;) {
      Score run = 0;
      for (std::size_t t = 0; t < n_; ++t) {
        run += ladders[v].levels[t];
        suffix_[v][t] = suffix_[v + 1][t] + run;
      }
    }
  }

  // nullopt when the budget runs out before the search settles.
  std::optional<std::optional<Heights>> run() {
    try {
      if (!rest_ok(0) || !ballot(0)) return std::optional<Heights>{};
      return std::optional<Heights>{h_};
    } catch (const BudgetSpent&) {
      return std::nullopt;
    }
  }

 private:
  struct BudgetSpent {};

  bool rest_ok(std::size_t v) const {
    std::vector<Score> s = rem_;
    std::sort(s.begin(), s.end(), std::greater<>());
    if (!s.empty() && s.back() < 0) return false;
    Score run = 0;
    for (std::size_t t = 0; t < n_; ++t) {
      run += s[t];
      if (run > suffix_[v][t]) return false;
    }
    return n_ == 0 || run == suffix_[v][n_ - 1];
  }

  bool ballot(std::size_t v) {
    if (v == m_) return true;
    std::vector<Score> key = rem_;
    key.push_back(static_cast<Score>(v));
    if (dead_.count(key)) return false;
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem_[a] > rem_[b]; });
    std::vector<std::pair<Score, std::size_t>> counts;
    for (Score l : ladders_[v].levels) {
      if (counts.empty() || counts.back().first != l) counts.emplace_back(l, 0);
      ++counts.back().second;
    }
    if (place(v, 0, order, counts)) return true;
    dead_.insert(std::move(key));
    return false;
  }

  bool place(std::size_t v, std::size_t pos, const std::vector<std::size_t>& order,
             std::vector<std::pair<Score, std::size_t>>& counts) {
    if (++nodes_ > budget_) throw BudgetSpent{};
    if (pos == n_) return rest_ok(v + 1) && ballot(v + 1);
    const std::size_t i = order[pos];
    for (auto& [level, left] : counts) {
      if (left == 0 || level > rem_[i]) continue;
      --left;
      rem_[i] -= level;
      h_[v][i] = level;
      if (place(v, pos + 1, order, counts)) return true;
      rem_[i] += level;
      ++left;
    }
    return false;
  }

  std::size_t n_, m_;
  std::span<const APLadder> ladders_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Score> rem_;
  Heights h_;
  std::vector<std::vector<Score>> suffix_;
  std::set<std::vector<Score>> dead_;
};


inline bool same_ladders(std::span<const APLadder> ladders) {
  return std::all_of(ladders.begin(), ladders.end(), [&](const APLadder& l) { return l == ladders.front(); });
}

// Identical ladders only. A decomposition exists iff some table N (N[i][c]
// ballots give target i the c-th distinct level) has row sums m, column sums
// m * multiplicity(c) and row level sums within [lo_i, hi_i]: splitting each
// column into unit slots gives an m-regular bipartite multigraph, which is a
// union of m perfect matchings. Searching tables skips the ballot symmetry.
class TableSearch {
 public:
  using Table = std::vector<std::vector<std::int64_t>>;

  TableSearch(const APLadder& lad, std::int64_t m, std::vector<Score> lo, std::vector<Score> hi, std::size_t budget)
      : n_(lo.size()), m_(m), budget_(budget), lo_(std::move(lo)), hi_(std::move(hi)) {
    for (Score l : lad.levels) {
      if (level_.empty() || level_.back() != l) {
        level_.push_back(l);
        mult_.push_back(0);
      }
      ++mult_.back();
    }
    cols_ = level_.size();
    colrem_.resize(cols_);
    for (std::size_t c = 0; c < cols_; ++c) colrem_[c] = m_ * mult_[c];
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return lo_[a] != lo_[b] ? lo_[a] > lo_[b] : hi_[a] < hi_[b];
    });
    table_.assign(n_, std::vector<std::int64_t>(cols_, 0));
  }

  const std::vector<std::int64_t>& multiplicity() const { return mult_; }
  const std::vector<Score>& distinct_levels() const { return level_; }

  // nullopt when the budget runs out before the search settles.
  std::optional<std::optional<Table>> run() {
    try {
      if (!row(0)) return std::optional<Table>{};
      return std::optional<Table>{table_};
    } catch (const BudgetSpent&) {
      return std::nullopt;
    }
  }

 private:
  struct BudgetSpent {};
  using Wide = __int128;

  // Level sums of the `picks` largest and smallest remaining entries.
  Wide extreme(std::int64_t picks, std::size_t from, bool largest) const {
    Wide s = 0;
    for (std::size_t j = 0; j < cols_ - from && picks > 0; ++j) {
      const std::size_t c = largest ? from + j : cols_ - 1 - j;
      const std::int64_t take = std::min(picks, colrem_[c]);
      s += static_cast<Wide>(take) * level_[c];
      picks -= take;
    }
    return s;
  }

  // Prefix bounds on the unplaced targets against the remaining entries.
  bool rest_ok(std::size_t t) const {
    std::vector<Score> his;
    Wide lo_run = 0;
    for (std::size_t j = t; j < n_; ++j) {
      lo_run += lo_[order_[j]];
      if (lo_run > extreme(static_cast<std::int64_t>(j - t + 1) * m_, 0, true)) return false;
      his.push_back(hi_[order_[j]]);
    }
    std::sort(his.begin(), his.end());
    Wide hi_run = 0;
    for (std::size_t j = 0; j < his.size(); ++j) {
      hi_run += his[j];
      if (hi_run < extreme(static_cast<std::int64_t>(j + 1) * m_, 0, false)) return false;
    }
    return true;
  }

  bool row(std::size_t t) {
    if (t == n_) return true;
    if (!rest_ok(t)) return false;
    std::vector<std::int64_t> key = colrem_;
    key.push_back(static_cast<std::int64_t>(t));
    if (dead_.count(key)) return false;
    if (cell(t, 0, m_, 0)) return true;
    dead_.insert(std::move(key));
    return false;
  }

  bool cell(std::size_t t, std::size_t c, std::int64_t left, Wide sum) {
    if (++nodes_ > budget_) throw BudgetSpent{};
    const std::size_t i = order_[t];
    if (c == cols_) return left == 0 && sum >= lo_[i] && sum <= hi_[i] && row(t + 1);
    if (sum + extreme(left, c, true) < lo_[i] || sum + extreme(left, c, false) > hi_[i]) return false;
    const std::int64_t most = std::min(left, colrem_[c]);
    for (std::int64_t take = most; take >= 0; --take) {
      colrem_[c] -= take;
      table_[i][c] = take;
      if (cell(t, c + 1, left - take, sum + static_cast<Wide>(take) * level_[c])) return true;
      colrem_[c] += take;
    }
    table_[i][c] = 0;
    return false;
  }

  std::size_t n_;
  std::int64_t m_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Score> lo_, hi_;
  std::vector<Score> level_;
  std::vector<std::int64_t> mult_;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> colrem_;
  std::vector<std::size_t> order_;
  Table table_;
  std::set<std::vector<std::int64_t>> dead_;
};

// Peels m ballots off a table, each a perfect assignment of targets to
// levels that uses every level its multiplicity number of times.
inline Heights heights_from_table(TableSearch::Table table, const std::vector<Score>& level,
                                  const std::vector<std::int64_t>& mult, std::int64_t m) {
  const std::size_t n = table.size(), cols = level.size();
  Heights h(static_cast<std::size_t>(m), std::vector<Score>(n, 0));
  for (std::size_t v = 0; v < h.size(); ++v) {
    std::vector<std::vector<std::size_t>> holders(cols);
    std::vector<std::size_t> col_of(n, cols);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (table[i][c] == 0 || seen[c]) continue;
        seen[c] = 1;
        if (static_cast<std::int64_t>(holders[c].size()) < mult[c]) {
          holders[c].push_back(i);
          col_of[i] = c;
          return true;
        }
        for (std::size_t& j : holders[c]) {
          const std::size_t prev = j;
          if (augment(prev)) {
            j = i;
            col_of[i] = c;
            return true;
          }
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
      seen.assign(cols, 0);
      if (!augment(i)) throw Error(Errc::internal_realization_failure, "count table did not split into ballots");
    }
    for (std::size_t i = 0; i < n; ++i) {
      --table[i][col_of[i]];
      h[v][i] = level[col_of[i]];
    }
  }
  return h;
}

// Exact table search with per-target level-sum bounds.
inline std::optional<std::optional<Heights>> table_heights(const APLadder& lad, std::int64_t m, std::vector<Score> lo,
                                                           std::vector<Score> hi, std::size_t budget) {
  TableSearch search(lad, m, std::move(lo), std::move(hi), budget);
  auto outcome = search.run();
  if (!outcome) return std::nullopt;
  if (!*outcome) return std::optional<Heights>{};
  return std::optional<Heights>{heights_from_table(std::move(**outcome), search.distinct_levels(), search.multiplicity(), m)};
}

}  // namespace detail

/**
 * Splits a realizable aggregate into one permutation of each ladder.
 * Cheap greedy constructions are tried first and verified; an exact bounded
 * search settles the rest.
 */
inline Realization realize_ap(std::span<const Score> y, std::span<const APLadder> ladders, RealizeOptions opt = {}) {
  const PrefixCapacities caps = aggregate_capacities(ladders);
  if (!realizable(y, caps)) throw Error(Errc::not_realizable, "aggregate fails the prefix-and-congruence test");
  std::vector<Score> demand(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) demand[i] = (y[i] - caps.baseline_total) / caps.step;

  std::optional<detail::Heights> found;
  if (auto h = detail::layered_greedy(demand, ladders, opt.layered_budget); h && detail::heights_match(*h, demand, ladders)) {
    found = std::move(h);
  }
  if (!found) {
    detail::Heights h = detail::ballotwise_greedy(demand, ladders);
    if (detail::heights_match(h, demand, ladders)) found = std::move(h);
  }
  if (!found) {
    auto outcome = detail::same_ladders(ladders) && !ladders.empty()
                       ? detail::table_heights(ladders.front(), static_cast<std::int64_t>(ladders.size()), demand,
                                               demand, opt.search_budget)
                       : detail::ExactSearch(demand, ladders, opt.search_budget).run();
    if (!outcome) throw Error(Errc::internal_realization_failure, "decomposition search budget exhausted");
    if (!*outcome) throw Error(Errc::not_realizable, "aggregate passes the prefix-and-congruence test but has no decomposition");
    found = std::move(**outcome);
  }
  Realization r;
  r.assignments.resize(ladders.size());
  for (std::size_t v = 0; v < ladders.size(); ++v) {
    r.assignments[v].resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      r.assignments[v][i] = ladders[v].baseline + ladders[v].step * (*found)[v][i];
    }
  }
  return r;
}

struct BallotSet {
  std::vector<std::vector<Candidate>> rankings;
};

namespace detail {

/**
 * Tries each extension rule until one yields a decomposable witness, then
 * searches directly for any aggregate meeting the one-sided bounds: y >= q
 * for the top block, y <= -q for the bottom block (negate). All ladders are
 * equal here.
 */
inline Realization realize_block(std::span<const Score> q, const PrefixCapacities& caps, bool negate,
                                 std::span<const APLadder> ladders, RealizeOptions opt = {}) {
  for (ExtendRule rule : {ExtendRule::saturate, ExtendRule::water_fill}) {
    std::vector<Score> y = extend_to_base(q, caps, rule);
    if (negate) {
      for (Score& v : y) v = -v;
    }
    try {
      return realize_ap(y, ladders, opt);
    } catch (const Error& e) {
      if (e.code() != Errc::not_realizable && e.code() != Errc::internal_realization_failure) throw;
    }
  }

  const APLadder& lad = ladders.front();
  const auto m = static_cast<std::int64_t>(ladders.size());
  const Score base = checked_mul(m, lad.baseline);
  constexpr Score unbounded = std::numeric_limits<Score>::max() / 4;
  std::vector<Score> lo(q.size(), -unbounded), hi(q.size(), unbounded);
  for (std::size_t i = 0; i < q.size(); ++i) {
    // Level sums: y_i = base + step * s_i.
    if (negate) hi[i] = floor_div(checked_sub(-q[i], base), lad.step);
    else lo[i] = -floor_div(checked_sub(base, q[i]), lad.step);
  }
  auto outcome = table_heights(lad, m, std::move(lo), std::move(hi), opt.search_budget);
  if (!outcome) throw Error(Errc::internal_realization_failure, "ballot search budget exhausted");
  if (!*outcome) throw Error(Errc::not_realizable, "no coalition ballots meet these demands");
  Realization r;
  r.assignments.resize(ladders.size());
  for (std::size_t v = 0; v < ladders.size(); ++v) {
    r.assignments[v].resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r.assignments[v][i] = lad.baseline + lad.step * (**outcome)[v][i];
  }
  return r;
}

}  // namespace detail

/**
 * Coalition ballots for a certified (level, cutoff): O* on top, T_w at the
 * bottom, everyone else in honest order between them.
 */
inline BallotSet construct_ballots(const HonestScores& h, const BoundarySets& b, const ScoringVector& p,
                                   std::int64_t m, Score cutoff) {
  const std::size_t x = p.size();
  if (h.size() != x) throw Error(Errc::length_mismatch, "scoring vector length differs from candidate count");
  const std::vector<Candidate> order = honest_order(h);
  BallotSet out;
  if (m <= 0) return out;
  const std::size_t lv = b.level;
  if (lv == 0) {
    out.rankings.assign(static_cast<std::size_t>(m), order);
    return out;
  }
  const APLadder top = extract_ap_ladder(p.top_segment(lv));
  const APLadder bottom = extract_ap_ladder(p.bottom_segment(lv));
  const PrefixCapacities caps_high = replicated_capacities(top, m);
  const PrefixCapacities caps_low = replicated_capacities(bottom, m);
  const DemandPair d = compute_demand_vectors(h, b, cutoff);
  if (!boost_feasible(d, caps_high) || !suppress_feasible(d, caps_low)) {
    throw Error(Errc::not_certified, "cutoff is not feasible at this level");
  }

  const std::vector<APLadder> tops(static_cast<std::size_t>(m), top);
  const std::vector<APLadder> bottoms(static_cast<std::size_t>(m), bottom);
  const std::vector<Score> boost_adj = lattice_adjust_up(d.boost, caps_high.step, caps_high.residue);
  std::vector<Score> cap_adj = lattice_adjust_down(d.tolerance, caps_low.step, caps_low.residue);
  for (Score& v : cap_adj) v = -v;
  const Realization high = detail::realize_block(boost_adj, caps_high, false, tops);
  const Realization low = detail::realize_block(cap_adj, mirrored(caps_low), true, bottoms);

  std::vector<bool> placed(x, false);
  for (Candidate c : b.outsiders_star) placed[c] = true;
  for (Candidate c : b.weak_winners) placed[c] = true;
  std::vector<Candidate> middle;
  for (Candidate c : order) {
    if (!placed[c]) middle.push_back(c);
  }

  auto by_score = [](const std::vector<Score>& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) { return s[a] > s[c]; });
    return idx;
  };
  out.rankings.reserve(static_cast<std::size_t>(m));
  for (std::size_t v = 0; v < static_cast<std::size_t>(m); ++v) {
    std::vector<Candidate> ranking;
    ranking.reserve(x);
    for (std::size_t i : by_score(high.assignments[v])) ranking.push_back(d.boost_targets[i]);
    ranking.insert(ranking.end(), middle.begin(), middle.end());
    for (std::size_t i : by_score(low.assignments[v])) ranking.push_back(d.tolerance_targets[i]);
    out.rankings.push_back(std::move(ranking));
  }
  return out;
}

struct VerificationReport {
  bool separated = false;
  bool meets_cutoff = false;
  std::optional<Score> min_outsider_final;
  std::optional<Score> max_weak_winner_final;
  std::size_t outsiders_in_top_k = 0;
  std::size_t displaced_count = 0;
  std::vector<Score> final_scores;
};

/**
 * Recounts with the coalition ballots added. The Top-k count resolves every
 * tie against outsiders, so it is the number of displacements guaranteed
 * under any tie-breaking.
 */
inline VerificationReport verify_manipulation(const HonestScores& h, const BallotSet& ballots,
                                              const ScoringVector& p, std::size_t k, const BoundarySets& b,
                                              Score cutoff) {
  const std::size_t x = h.size();
  VerificationReport rep;
  rep.final_scores = h.scores;
  for (const auto& ranking : ballots.rankings) {
    if (ranking.size() != x) throw Error(Errc::length_mismatch, "ballot ranking has wrong length");
    for (std::size_t r = 0; r < x; ++r) rep.final_scores[ranking[r]] = checked_add(rep.final_scores[ranking[r]], p[r]);
  }
  const auto& f = rep.final_scores;
  for (Candidate o : b.outsiders_star) rep.min_outsider_final = std::min(rep.min_outsider_final.value_or(f[o]), f[o]);
  for (Candidate t : b.weak_winners) rep.max_weak_winner_final = std::max(rep.max_weak_winner_final.value_or(f[t]), f[t]);
  const bool both = rep.min_outsider_final && rep.max_weak_winner_final;
  rep.separated = !both || *rep.min_outsider_final >= *rep.max_weak_winner_final + 1;
  rep.meets_cutoff = !both || (*rep.min_outsider_final >= cutoff && *rep.max_weak_winner_final <= cutoff - 1);

  const std::vector<Candidate> order = honest_order(h);
  std::vector<bool> winner(x, false);
  for (std::size_t i = 0; i < k && i < x; ++i) winner[order[i]] = true;
  std::vector<Candidate> fin(x);
  std::iota(fin.begin(), fin.end(), Candidate{0});
  std::sort(fin.begin(), fin.end(), [&](Candidate a, Candidate c) {
    if (f[a] != f[c]) return f[a] > f[c];
    if (winner[a] != winner[c]) return static_cast<bool>(winner[a]);
    return h.tie_priority[a] < h.tie_priority[c];
  });
  for (std::size_t i = 0; i < k && i < x; ++i) {
    if (!winner[fin[i]]) ++rep.outsiders_in_top_k;
  }
  rep.displaced_count = rep.outsiders_in_top_k;
  return rep;
}

}  // namespace displace
