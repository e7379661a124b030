// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <atomic>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>

#include "displace/displace.hpp"
#include "displace/experiments.hpp"

using namespace displace;

namespace {

// Pinned thresholds.
constexpr std::size_t kBruteTrials = 600;
constexpr std::size_t kCertificateInstances = 200;
constexpr std::size_t kRoundTrips = 10'000;
constexpr std::size_t kMonotoneInstances = 1'000;
constexpr std::size_t kBaselineInstances = 300;
constexpr std::size_t kScaleCandidates = 10'000'000;
constexpr double kScaleSecondsLimit = 10.0;
constexpr double kScaleRatioLimit = 2.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

const std::vector<std::string> kRules{"borda", "borda3", "truncated", "plurality", "321"};

Verdict exactness_vs_brute_force() {
  BruteCheckConfig cfg;
  cfg.trials = kBruteTrials;
  cfg.max_x = 6;
  cfg.max_m = 2;
  cfg.rules = kRules;
  cfg.seed = 2024;
  const BruteCheckReport rep = run_brute_check(cfg);
  std::ostringstream d;
  d << rep.agreed << "/" << rep.rows.size() << " instances agree";
  return {rep.agreed == rep.rows.size(), d.str()};
}

Verdict two_ladder_goldens() {
  const std::vector<APLadder> lad{extract_ap_ladder(std::vector<Score>{9, 5, 1}),
                                  extract_ap_ladder(std::vector<Score>{10, 6, 2})};
  const PrefixCapacities caps = aggregate_capacities(lad);
  const std::vector<Score> adj = lattice_adjust_up(std::vector<Score>{18, 9, 4}, caps.step, caps.residue);
  std::vector<std::string> bad;
  auto check = [&](bool ok, const char* what) {
    if (!ok) bad.push_back(what);
  };
  check(caps.prefix == std::vector<Score>{19, 30, 33}, "F");
  check(block_hlp_member(std::vector<Score>{18, 9, 6}, caps), "hlp(18,9,6)");
  check(!block_hlp_member(std::vector<Score>{20, 8, 5}, caps), "hlp(20,8,5)");
  check(realizable(std::vector<Score>{19, 11, 3}, caps), "real(19,11,3)");
  check(!realizable(std::vector<Score>{18, 11, 4}, caps), "real(18,11,4)");
  check(ap_demand_feasible(std::vector<Score>{17, 8, 3}, caps), "demand(17,8,3)");
  check(!ap_demand_feasible(std::vector<Score>{18, 9, 4}, caps), "demand(18,9,4)");
  check(adj == std::vector<Score>{19, 11, 7}, "adjust(18,9,4)");
  std::string d = bad.empty() ? "all 8 values exact" : "wrong:";
  for (const auto& b : bad) d += " " + b;
  return {bad.empty(), d};
}

// Every integer point with the right total inside the box [m*min, m*max]^len.
std::vector<std::vector<Score>> box_points(const APLadder& lad, std::int64_t m, Score total) {
  const std::size_t len = lad.length();
  const Score lo = m * lad.min_score(), hi = m * lad.max_score();
  std::vector<std::vector<Score>> pts;
  std::vector<Score> y(len, lo);
  for (;;) {
    Score partial = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) partial += y[i];
    y[len - 1] = total - partial;
    if (y[len - 1] >= lo && y[len - 1] <= hi) pts.push_back(y);
    std::size_t i = 0;
    while (i + 1 < len && y[i] == hi) y[i++] = lo;
    if (i + 1 >= len) break;
    ++y[i];
  }
  return pts;
}

Verdict congruence_refinement() {
  std::ostringstream d;
  bool pass = true;
  for (const auto& [seg, expect_strict] :
       std::vector<std::pair<std::vector<Score>, bool>>{{{8, 5, 2}, true}, {{6, 5, 4}, false}}) {
    const APLadder lad = extract_ap_ladder(seg);
    const std::vector<APLadder> three(3, lad);
    const PrefixCapacities caps = replicated_capacities(lad, 3);
    const std::set<std::vector<Score>> brute = brute_force_realizable_set(three);
    std::set<std::vector<Score>> prefix_only, real;
    for (const auto& y : box_points(lad, 3, caps.total())) {
      if (block_hlp_member(y, caps)) prefix_only.insert(y);
      if (realizable(y, caps)) real.insert(y);
    }
    const bool contains = std::includes(prefix_only.begin(), prefix_only.end(), real.begin(), real.end());
    const bool shape_ok = expect_strict ? (contains && prefix_only.size() > real.size()) : prefix_only == real;
    const bool exact = real == brute;
    pass = pass && shape_ok && exact;
    d << "(" << seg[0] << "," << seg[1] << "," << seg[2] << ")x3: prefix=" << prefix_only.size()
      << " realizable=" << real.size() << " brute=" << brute.size() << "; ";
  }
  return {pass, d.str()};
}

Verdict end_to_end_certificate() {
  std::vector<std::string> failures;
  std::size_t found = 0, checked = 0;
  std::mutex mu;
  const std::size_t batch = 4000;
  std::vector<int> status(batch, -1);  // -1 infeasible, 0 fail, 1 pass
  parallel_for(batch, [&](std::size_t i) {
    const Instance in = random_instance(trial_seed(404, i), 3, 30, 12, kRules);
    const DisplacementResult r = maximize_displacement(in.honest, in.p, in.k, in.m);
    if (r.k_star == 0) return;
    const BoundarySets b = boundary_sets(honest_order(in.honest), in.k, r.k_star);
    bool ok = true;
    std::string why;
    for (Score cutoff : {*r.b_min_star, *r.b_max_star}) {
      try {
        const BallotSet ballots = construct_ballots(in.honest, b, in.p, in.m, cutoff);
        const VerificationReport rep = verify_manipulation(in.honest, ballots, in.p, in.k, b, cutoff);
        if (!rep.separated || rep.displaced_count < r.k_star) {
          ok = false;
          why = "verification failed";
        }
      } catch (const Error& e) {
        ok = false;
        why = e.what();
      }
    }
    status[i] = ok ? 1 : 0;
    if (!ok) {
      std::lock_guard lock(mu);
      failures.push_back("seed#" + std::to_string(i) + ": " + why);
    }
  });
  for (int s : status) {
    if (s < 0) continue;
    ++found;
    checked += s == 1;
  }
  std::ostringstream d;
  d << checked << "/" << found << " feasible instances certified at both interval ends";
  if (!failures.empty()) d << "; first failure " << failures.front();
  return {found >= kCertificateInstances && checked == found, d.str()};
}

Verdict realization_round_trip() {
  std::atomic<std::size_t> passed{0};
  std::mutex mu;
  std::string first_failure;
  parallel_for(kRoundTrips, [&](std::size_t i) {
    Rng rng(trial_seed(505, i));
    const std::size_t len = static_cast<std::size_t>(rng.between(1, 6));
    const std::int64_t m = rng.between(1, 5);
    const Score g = rng.between(1, 4);
    std::vector<APLadder> ladders;
    std::vector<Score> y(len, 0);
    for (std::int64_t j = 0; j < m; ++j) {
      std::vector<Score> seg(len);
      for (auto& v : seg) v = g * rng.between(0, 4);
      // Levels 0 and 1 pin every ladder's step to exactly g.
      seg[0] = 0;
      if (len >= 2) seg[1] = g;
      std::sort(seg.begin(), seg.end(), std::greater<>());
      const Score base = rng.between(-3, 3);
      for (auto& v : seg) v += base;
      std::vector<Score> perm = seg;
      for (std::size_t t = len; t > 1; --t) std::swap(perm[t - 1], perm[rng.below(t)]);
      for (std::size_t t = 0; t < len; ++t) y[t] += perm[t];
      ladders.push_back(extract_ap_ladder(seg));
    }
    std::string why;
    try {
      if (!realizable(y, aggregate_capacities(ladders))) {
        why = "realizable() rejected a forward-generated aggregate";
      } else {
        const Realization r = realize_ap(y, ladders);
        std::vector<Score> sum(len, 0);
        bool perms = r.assignments.size() == ladders.size();
        for (std::size_t j = 0; perms && j < ladders.size(); ++j) {
          std::vector<Score> a = r.assignments[j];
          for (std::size_t t = 0; t < len; ++t) sum[t] += a[t];
          std::sort(a.begin(), a.end(), std::greater<>());
          perms = a == ladders[j].scores();
        }
        if (!perms || sum != y) why = "decomposition is not a set of permutations summing to y";
      }
    } catch (const Error& e) {
      why = e.what();
    }
    if (why.empty()) {
      ++passed;
    } else {
      std::lock_guard lock(mu);
      if (first_failure.empty()) first_failure = "trial " + std::to_string(i) + ": " + why;
    }
  });
  std::ostringstream d;
  d << passed.load() << "/" << kRoundTrips << " aggregates realized";
  if (!first_failure.empty()) d << "; " << first_failure;
  return {passed.load() == kRoundTrips, d.str()};
}

Verdict monotonicity_suite() {
  std::atomic<std::size_t> boost_bad{0}, suppress_bad{0}, interval_bad{0}, strategy_bad{0}, coalition_bad{0};
  parallel_for(kMonotoneInstances, [&](std::size_t i) {
    const Instance in = random_instance(trial_seed(606, i), 3, 16, 8, kRules);
    const BoundaryWindow w = boundary_window(in.honest, in.k);
    Rng rng(trial_seed(607, i));
    const std::size_t level = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(w.half)));
    const BoundarySets b = w.boundary(level);
    const LevelCapacities lc = level_capacities(in.p, level, in.m);
    const CutoffBounds cb = cutoff_bounds(in.honest, b, in.m, in.p);
    const EnvelopeResult env = feasible_envelope_at_level(in.honest, b, lc.high, lc.low, cb);

    bool boost_seen_false = false, suppress_seen_true = false, interval_ok = true;
    for (Score B = cb.low - 3; B <= cb.high + 3; ++B) {
      const DemandPair dp = compute_demand_vectors(in.honest, b, B);
      const bool bo = boost_feasible(dp, lc.high);
      const bool su = suppress_feasible(dp, lc.low);
      if (bo && boost_seen_false) ++boost_bad;
      if (!su && suppress_seen_true) ++suppress_bad;
      boost_seen_false = boost_seen_false || !bo;
      suppress_seen_true = suppress_seen_true || su;
      const bool in_interval = env.feasible && B >= *env.b_min && B <= *env.b_max;
      if ((bo && su) != in_interval) interval_ok = false;
    }
    if (!interval_ok) ++interval_bad;

    const DisplacementResult bin = maximize_displacement(in.honest, in.p, in.k, in.m, LevelSearch::binary);
    const DisplacementResult lin = maximize_displacement(in.honest, in.p, in.k, in.m, LevelSearch::linear);
    if (bin.k_star != lin.k_star || bin.b_min_star != lin.b_min_star || bin.b_max_star != lin.b_max_star) {
      ++strategy_bad;
    }

    std::size_t prev = 0;
    for (std::int64_t m = 0; m <= 12; ++m) {
      const std::size_t ks = maximize_displacement(in.honest, in.p, in.k, m).k_star;
      if (ks < prev) ++coalition_bad;
      prev = ks;
    }
  });
  std::ostringstream d;
  d << "violations over " << kMonotoneInstances << " instances: boost=" << boost_bad << " suppress=" << suppress_bad
    << " interval=" << interval_bad << " strategy=" << strategy_bad << " k*(m)=" << coalition_bad;
  const bool pass = boost_bad == 0 && suppress_bad == 0 && interval_bad == 0 && strategy_bad == 0 && coalition_bad == 0;
  return {pass, d.str()};
}

Verdict baseline_dominance() {
  std::vector<std::size_t> oracle(kBaselineInstances), greedy(kBaselineInstances);
  std::vector<double> ratio(kBaselineInstances);
  parallel_for(kBaselineInstances, [&](std::size_t i) {
    Rng rng(trial_seed(707, i));
    const std::size_t x = static_cast<std::size_t>(rng.between(6, 40));
    const std::size_t n = static_cast<std::size_t>(rng.between(10, 200));
    const std::int64_t m = rng.between(1, static_cast<std::int64_t>(n));
    const std::size_t k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(x) - 1));
    const std::string rule = kRules[rng.below(kRules.size())];
    const ScoringVector p = parse_scoring_spec(rule, x);
    const HonestScores h = tally(sample_mallows({x, n, rng.unit() * 0.9 + 0.1, {}, rng.bits()}), p);
    oracle[i] = maximize_displacement(h, p, k, m).k_star;
    greedy[i] = greedy_promote(h, p, m, k).displaced;
    ratio[i] = static_cast<double>(m) / static_cast<double>(n);
  });
  std::size_t dominated = 0, gaps = 0, large_gaps = 0;
  for (std::size_t i = 0; i < kBaselineInstances; ++i) {
    dominated += greedy[i] <= oracle[i];
    if (oracle[i] > greedy[i]) {
      ++gaps;
      large_gaps += ratio[i] >= 0.3;
    }
  }
  std::ostringstream d;
  d << "greedy <= k* on " << dominated << "/" << kBaselineInstances << "; positive gap on " << gaps << " ("
    << large_gaps << " with m/n >= 0.3)";
  return {dominated == kBaselineInstances && large_gaps > 0, d.str()};
}

Verdict scalability_smoke() {
  const HonestScores h = gen_synthetic_scores(kScaleCandidates, UniformScores{0, 1'000'000'000}, 808);
  const ScoringVector p = parse_scoring_spec("borda", kScaleCandidates);
  const std::size_t k = kScaleCandidates / 1000;
  std::vector<double> secs;
  std::ostringstream d;
  for (std::int64_t m : {std::int64_t{1'000}, std::int64_t{1'000'000}}) {
    std::size_t ks = 0;
    secs.push_back(time_ms([&] { ks = maximize_displacement(h, p, k, m).k_star; }) / 1000.0);
    d << "m=" << m << ": " << secs.back() << " s (k*=" << ks << "); ";
  }
  const double ratio = std::max(secs[0], secs[1]) / std::min(secs[0], secs[1]);
  d << "ratio " << ratio;
  const bool pass = secs[0] < kScaleSecondsLimit && secs[1] < kScaleSecondsLimit && ratio < kScaleRatioLimit;
  return {pass, d.str()};
}

Verdict mallows_check() {
  const std::size_t x = 100, n = 1000, k = 50;
  const ScoringVector p = parse_scoring_spec("borda", x);
  std::ostringstream d;
  bool pass = true;

  std::vector<std::int64_t> ms;
  for (std::int64_t m = 0; m <= 400; m += 20) ms.push_back(m);
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const HonestScores h = tally(sample_mallows({x, n, 0.5, {}, trial_seed(909, trial)}), p);
    std::vector<std::size_t> ks(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) { ks[i] = maximize_displacement(h, p, k, ms[i]).k_star; });
    const bool mono = std::is_sorted(ks.begin(), ks.end());
    const bool reaches = ks.back() >= 1;
    pass = pass && mono && reaches;
    d << "phi=0.5 trial " << trial << ": k*(0..400)=" << ks.front() << ".." << ks.back()
      << (mono ? " monotone" : " NOT monotone") << "; ";
  }

  const std::vector<std::int64_t> big{1000, 2000, 4000};
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const HonestScores h = tally(sample_mallows({x, n, 1.0, {}, trial_seed(919, trial)}), p);
    std::size_t best = 0;
    for (std::int64_t m : big) best = std::max(best, maximize_displacement(h, p, k, m).k_star);
    pass = pass && best == std::min(k, x - k);
    d << "phi=1 trial " << trial << ": max k*=" << best << "; ";
  }
  return {pass, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"exactness vs brute force", exactness_vs_brute_force},
      {"two-ladder golden values", two_ladder_goldens},
      {"congruence refinement", congruence_refinement},
      {"end-to-end certificate", end_to_end_certificate},
      {"realization round trip", realization_round_trip},
      {"monotonicity suite", monotonicity_suite},
      {"baseline dominance", baseline_dominance},
      {"scalability smoke", scalability_smoke},
      {"mallows qualitative check", mallows_check},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    double ms = 0;
    try {
      ms = time_ms([&] { v = criteria[i].second(); });
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (v.pass ? "PASS" : "FAIL") << " - "
              << v.detail << " (" << static_cast<long>(ms) << " ms)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
