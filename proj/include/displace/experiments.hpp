#pragma once

#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "displace/baselines.hpp"
#include "displace/data.hpp"
#include "displace/envelope.hpp"
#include "displace/parallel.hpp"
#include "displace/reference.hpp"
#include "displace/rules.hpp"

// Seeded experiment protocols shared by the CLI and the acceptance suite.
namespace displace {

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::vector<Candidate> random_ranking(Rng& rng, std::size_t x) {
  std::vector<Candidate> r(x);
  std::iota(r.begin(), r.end(), Candidate{0});
  for (std::size_t i = x; i > 1; --i) std::swap(r[i - 1], r[rng.below(i)]);
  return r;
}

struct Instance {
  std::string rule;
  ScoringVector p;
  HonestScores honest;
  std::size_t k = 1;
  std::int64_t m = 0;
};

/**
 * Impartial-culture honest profile of 1..2x voters tallied under one of the
 * rules, with random committee and coalition sizes.
 */
inline Instance random_instance(std::uint64_t seed, std::size_t min_x, std::size_t max_x, std::int64_t max_m,
                                const std::vector<std::string>& rules) {
  Rng rng(seed);
  Instance in;
  const std::size_t x = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(min_x), static_cast<std::int64_t>(max_x)));
  in.rule = rules[rng.below(rules.size())];
  in.p = parse_scoring_spec(in.rule, x);
  in.k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(x) - 1));
  in.m = rng.between(1, max_m);
  Profile prof;
  prof.num_candidates = x;
  const std::int64_t voters = rng.between(1, 2 * static_cast<std::int64_t>(x));
  for (std::int64_t v = 0; v < voters; ++v) prof.ballots.push_back(Ballot{1, random_ranking(rng, x)});
  in.honest = tally(prof, in.p);
  return in;
}

struct BruteCheckConfig {
  std::size_t trials = 500;
  std::size_t max_x = 6;
  std::int64_t max_m = 2;
  std::vector<std::string> rules{"borda", "borda3", "truncated", "plurality", "321"};
  std::uint64_t seed = 1;
};

struct BruteCheckRow {
  Instance instance;
  std::size_t oracle = 0;
  std::size_t brute = 0;
};

struct BruteCheckReport {
  std::size_t agreed = 0;
  std::vector<BruteCheckRow> rows;
};

inline BruteCheckReport run_brute_check(const BruteCheckConfig& cfg) {
  BruteCheckReport rep;
  rep.rows.resize(cfg.trials);
  parallel_for(cfg.trials, [&](std::size_t i) {
    BruteCheckRow& row = rep.rows[i];
    row.instance = random_instance(trial_seed(cfg.seed, i), 2, cfg.max_x, cfg.max_m, cfg.rules);
    const Instance& in = row.instance;
    row.oracle = maximize_displacement(in.honest, in.p, in.k, in.m).k_star;
    row.brute = brute_force_k_star(in.honest, in.p, in.m, in.k);
  });
  for (const auto& row : rep.rows) rep.agreed += row.oracle == row.brute ? 1 : 0;
  return rep;
}

template <class Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct CompareConfig {
  std::size_t trials = 1;
  std::size_t x = 100;
  std::size_t n = 1000;
  std::size_t k = 50;
  double phi = 0.5;
  std::string rule = "borda";
  std::vector<std::int64_t> m_values{0, 50, 100, 200, 300, 400};
  std::uint64_t seed = 1;
};

struct CompareRow {
  std::size_t trial = 0;
  std::int64_t m = 0;
  std::size_t k_star = 0;
  std::size_t greedy = 0;
  double ms_oracle = 0;
  double ms_greedy = 0;
};

/** Mallows profiles; oracle and greedy on each coalition size. */
inline std::vector<CompareRow> run_baseline_compare(const CompareConfig& cfg) {
  const std::size_t per = cfg.m_values.size();
  std::vector<CompareRow> rows(cfg.trials * per);
  std::vector<HonestScores> honest(cfg.trials);
  const ScoringVector p = parse_scoring_spec(cfg.rule, cfg.x);
  parallel_for(cfg.trials, [&](std::size_t t) {
    MallowsConfig mc{cfg.x, cfg.n, cfg.phi, {}, trial_seed(cfg.seed, t)};
    honest[t] = tally(sample_mallows(mc), p);
  });
  parallel_for(rows.size(), [&](std::size_t i) {
    CompareRow& row = rows[i];
    row.trial = i / per;
    row.m = cfg.m_values[i % per];
    const HonestScores& h = honest[row.trial];
    row.ms_oracle = time_ms([&] { row.k_star = maximize_displacement(h, p, cfg.k, row.m).k_star; });
    row.ms_greedy = time_ms([&] { row.greedy = greedy_promote(h, p, row.m, cfg.k).displaced; });
  });
  return rows;
}

}  // namespace displace
