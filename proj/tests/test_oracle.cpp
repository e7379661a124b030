#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"

using namespace displace;
using namespace displace::testing;

namespace {

using Vec = std::vector<Score>;

PrefixCapacities two_ladders() { return caps_of({{9, 5, 1}, {10, 6, 2}}); }

bool contiguous(const APLadder& l) {
  std::set<Score> s(l.levels.begin(), l.levels.end());
  return static_cast<Score>(s.size()) == l.levels.front() + 1;
}

// Every integer vector in the box [lo, hi]^len with the given total.
std::vector<Vec> box_points(std::size_t len, Score lo, Score hi, Score total) {
  std::vector<Vec> out;
  Vec y(len, lo);
  for (;;) {
    Score partial = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) partial += y[i];
    y[len - 1] = total - partial;
    if (y[len - 1] >= lo && y[len - 1] <= hi) out.push_back(y);
    std::size_t i = 0;
    while (i + 1 < len && y[i] == hi) y[i++] = lo;
    if (i + 1 >= len) break;
    ++y[i];
  }
  return out;
}

std::set<Vec> oracle_set(const std::vector<APLadder>& lads) {
  const PrefixCapacities c = aggregate_capacities(lads);
  Score lo = 0, hi = 0;
  for (const auto& l : lads) {
    lo += l.min_score();
    hi += l.max_score();
  }
  std::set<Vec> out;
  for (const Vec& y : box_points(lads.front().length(), lo, hi, c.total())) {
    if (realizable(y, c)) out.insert(y);
  }
  return out;
}

// Random family of m ladders with a shared step and values in [0, 12].
std::vector<APLadder> random_family(Rng& rng, std::size_t m, std::size_t len) {
  const Score g = rng.between(1, 4);
  const Score levels = std::max<Score>(1, 12 / g - 1);
  std::vector<APLadder> out;
  for (std::size_t v = 0; v < m; ++v) {
    const Score top = std::min<Score>(levels, rng.between(1, 3));
    const Score base = rng.between(0, 12 - g * top);
    out.push_back(extract_ap_ladder(random_segment(rng, len, g, top, base)));
  }
  if (len == 1) {
    for (auto& l : out) l.step = g;
  }
  return out;
}

bool dominated_by_some(const std::set<Vec>& ys, const Vec& q, bool from_above) {
  for (const Vec& y : ys) {
    bool ok = true;
    for (std::size_t i = 0; i < q.size() && ok; ++i) ok = from_above ? y[i] >= q[i] : y[i] <= q[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(LatticeAdjust, Up) {
  EXPECT_EQ(lattice_adjust_up(Vec{18, 9, 4}, 4, 3), (Vec{19, 11, 7}));
  EXPECT_EQ(lattice_adjust_up(Vec{17, 8, 3}, 4, 3), (Vec{19, 11, 3}));
  EXPECT_EQ(lattice_adjust_up(Vec{5, -3, 0}, 1, 0), (Vec{5, -3, 0}));
  EXPECT_EQ(lattice_adjust_up(Vec{-6, -5}, 4, 3), (Vec{-5, -5}));
}

TEST(LatticeAdjust, DownMatchesNeighbourScan) {
  EXPECT_EQ(lattice_adjust_down(Vec{18, 9, 4}, 4, 3), (Vec{15, 7, 3}));
  EXPECT_EQ(lattice_adjust_down(Vec{19, 11, 3}, 4, 3), (Vec{19, 11, 3}));
  EXPECT_EQ(lattice_adjust_down(Vec{7, -2}, 1, 0), (Vec{7, -2}));
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    const Score g = rng.between(1, 9), a = rng.between(0, g - 1), u = rng.between(-50, 50);
    Score want = u;
    while (floor_mod(want, g) != a) --want;
    EXPECT_EQ(lattice_adjust_down(Vec{u}, g, a)[0], want);
    Score up = u;
    while (floor_mod(up, g) != a) ++up;
    EXPECT_EQ(lattice_adjust_up(Vec{u}, g, a)[0], up);
  }
}

TEST(BlockHlp, TwoLadderExample) {
  EXPECT_TRUE(block_hlp_member(Vec{18, 9, 6}, two_ladders()));
  EXPECT_FALSE(block_hlp_member(Vec{20, 8, 5}, two_ladders()));
  EXPECT_TRUE(block_hlp_member(Vec{11, 11, 11}, two_ladders()));
  EXPECT_FALSE(block_hlp_member(Vec{11, 11, 10}, two_ladders()));
  EXPECT_THROW(block_hlp_member(Vec{1, 2}, two_ladders()), Error);
}

TEST(Realizable, TwoLadderExample) {
  EXPECT_TRUE(realizable(Vec{19, 11, 3}, two_ladders()));
  EXPECT_FALSE(realizable(Vec{18, 11, 4}, two_ladders()));
  EXPECT_TRUE(realizable(Vec{15, 7, 11}, two_ladders()));
}

TEST(DemandFeasible, TwoLadderExample) {
  EXPECT_TRUE(ap_demand_feasible(Vec{17, 8, 3}, two_ladders()));
  EXPECT_FALSE(ap_demand_feasible(Vec{18, 9, 4}, two_ladders()));
  EXPECT_TRUE(ap_demand_feasible(Vec{0, 0, 0}, caps_of({{2, 1, 0}, {2, 1, 0}})));
  EXPECT_THROW(ap_demand_feasible(Vec{1}, two_ladders()), Error);
}

TEST(Boost, Wrapper) {
  DemandPair d;
  d.boost = {17, 8, 3};
  EXPECT_TRUE(boost_feasible(d, two_ladders()));
  d.boost = {18, 9, 4};
  EXPECT_FALSE(boost_feasible(d, two_ladders()));
  EXPECT_TRUE(boost_feasible(DemandPair{}, PrefixCapacities{}));
}

TEST(Suppress, SmallCases) {
  DemandPair d;
  d.tolerance = {2};
  EXPECT_TRUE(suppress_feasible(d, caps_of({{0}})));
  d.tolerance = {0, 0};
  EXPECT_FALSE(suppress_feasible(d, caps_of({{1, 0}})));
  d.tolerance = {0, 1};
  EXPECT_TRUE(suppress_feasible(d, caps_of({{1, 0}})));
  d.tolerance = {19, 19, 19};
  EXPECT_TRUE(suppress_feasible(d, two_ladders()));
  d.tolerance = {-1, 5};
  EXPECT_FALSE(suppress_feasible(d, caps_of({{1, 0}})));
}

// Three targets, three Borda ballots worth (2,1,0): the cheapest way to
// keep every target at most 3 is the rotation (3,3,3).
TEST(Suppress, NeedsTheFullDualTest) {
  DemandPair d;
  d.tolerance = {3, 3, 3};
  EXPECT_TRUE(suppress_feasible(d, caps_of({{2, 1, 0}, {2, 1, 0}, {2, 1, 0}})));
  d.tolerance = {2, 3, 3};
  EXPECT_FALSE(suppress_feasible(d, caps_of({{2, 1, 0}, {2, 1, 0}, {2, 1, 0}})));
}

TEST(MixedStep, SumsetAndNecessity) {
  const auto lads = ladders_of({{9, 5, 1}, {10, 6, 2}});
  EXPECT_EQ(ladder_sumset(lads), (Vec{3, 7, 11, 15, 19}));
  EXPECT_TRUE(mixed_step_necessary(Vec{19, 11, 3}, lads));
  EXPECT_FALSE(mixed_step_necessary(Vec{23, 7, 3}, lads));
  const auto one = ladders_of({{8, 5, 4}});
  EXPECT_EQ(ladder_sumset(one), (Vec{4, 5, 8}));
  EXPECT_TRUE(mixed_step_necessary(Vec{5, 8, 4}, one));
  EXPECT_FALSE(mixed_step_necessary(Vec{6, 6, 5}, one));
  const auto mixed = ladders_of({{8, 5, 4}, {6, 4, 2}});
  EXPECT_NO_THROW(mixed_step_necessary(Vec{10, 9, 8}, mixed));
  EXPECT_THROW(ladder_sumset(lads, 3), Error);
}

TEST(Exactness, SingleBallotMatchesEnumeration) {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto lads = random_family(rng, 1, static_cast<std::size_t>(rng.between(1, 5)));
    EXPECT_EQ(oracle_set(lads), brute_force_realizable_set(lads));
  }
}

TEST(Exactness, TwoBallotsShortContiguousLadders) {
  Rng rng(32);
  int checked = 0;
  while (checked < 300) {
    const auto lads = random_family(rng, 2, static_cast<std::size_t>(rng.between(1, 3)));
    if (!contiguous(lads[0]) || !contiguous(lads[1])) continue;
    ++checked;
    EXPECT_EQ(oracle_set(lads), brute_force_realizable_set(lads));
  }
}

TEST(Exactness, PrefixAndCongruenceIsNecessary) {
  Rng rng(33);
  for (int t = 0; t < 300; ++t) {
    const auto lads = random_family(rng, static_cast<std::size_t>(rng.between(1, 3)), static_cast<std::size_t>(rng.between(1, 4)));
    const std::set<Vec> brute = brute_force_realizable_set(lads);
    const PrefixCapacities c = aggregate_capacities(lads);
    for (const Vec& y : brute) EXPECT_TRUE(realizable(y, c));
  }
}

// Known limits of the polynomial test: two ballots of (3,1,0) never give
// (4,2,2), and two ballots of (2,1,0,0) never give (3,1,1,1).
TEST(Exactness, GappedOrLongLaddersAdmitExtraPoints) {
  auto gap = ladders_of({{3, 1, 0}, {3, 1, 0}});
  EXPECT_TRUE(realizable(Vec{4, 2, 2}, aggregate_capacities(gap)));
  EXPECT_FALSE(brute_force_realizable_set(gap).count(Vec{4, 2, 2}));
  auto lng = ladders_of({{2, 1, 0, 0}, {2, 1, 0, 0}});
  EXPECT_TRUE(realizable(Vec{3, 1, 1, 1}, aggregate_capacities(lng)));
  EXPECT_FALSE(brute_force_realizable_set(lng).count(Vec{3, 1, 1, 1}));
}

TEST(Exactness, UnitStepCongruenceIsVacuous) {
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    const std::size_t len = static_cast<std::size_t>(rng.between(1, 4));
    std::vector<APLadder> lads;
    for (int v = 0, m = static_cast<int>(rng.between(2, 3)); v < m; ++v) {
      lads.push_back(extract_ap_ladder(random_segment(rng, len, 1, 4, rng.between(0, 3))));
    }
    for (auto& l : lads) l.step = 1;
    const PrefixCapacities c = aggregate_capacities(lads);
    Score lo = 0, hi = 0;
    for (const auto& l : lads) {
      lo += l.min_score();
      hi += l.max_score();
    }
    for (const Vec& y : box_points(len, lo, hi, c.total())) EXPECT_EQ(realizable(y, c), block_hlp_member(y, c));
  }
}

TEST(Exactness, CongruenceRefinesPrefixBounds) {
  const auto lads = ladders_of({{8, 5, 2}, {8, 5, 2}, {8, 5, 2}});
  const PrefixCapacities c = aggregate_capacities(lads);
  std::size_t prefix_only = 0, real = 0;
  for (const Vec& y : box_points(3, 6, 24, c.total())) {
    prefix_only += block_hlp_member(y, c);
    real += realizable(y, c);
  }
  EXPECT_GT(prefix_only, real);
  EXPECT_EQ(oracle_set(lads), brute_force_realizable_set(lads));
  EXPECT_FALSE(realizable(Vec{8, 4, 3}, replicated_capacities(lads[0], 1)));
}

TEST(Wrappers, AgreeWithEnumerationWhereExact) {
  Rng rng(35);
  int checked = 0;
  while (checked < 250) {
    const std::size_t m = static_cast<std::size_t>(rng.between(1, 2));
    const auto lads = random_family(rng, m, static_cast<std::size_t>(rng.between(1, 3)));
    if (m == 2 && (!contiguous(lads[0]) || !contiguous(lads[1]))) continue;
    ++checked;
    const std::set<Vec> ys = brute_force_realizable_set(lads);
    const PrefixCapacities c = aggregate_capacities(lads);
    for (int q = 0; q < 20; ++q) {
      Vec b(lads[0].length()), u(lads[0].length());
      for (auto& v : b) v = rng.between(-2, 26);
      for (auto& v : u) v = rng.between(-2, 26);
      std::sort(b.begin(), b.end(), std::greater<>());
      std::sort(u.begin(), u.end());
      DemandPair d;
      d.boost = b;
      d.tolerance = u;
      EXPECT_EQ(boost_feasible(d, c), dominated_by_some(ys, b, true));
      EXPECT_EQ(suppress_feasible(d, c), dominated_by_some(ys, u, false));
    }
  }
}

TEST(DemandFeasible, Antitone) {
  Rng rng(36);
  for (int t = 0; t < 2000; ++t) {
    const auto lads = random_family(rng, static_cast<std::size_t>(rng.between(1, 4)), static_cast<std::size_t>(rng.between(1, 5)));
    const PrefixCapacities c = aggregate_capacities(lads);
    Vec q(lads[0].length()), lower(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = rng.between(-5, 30);
      lower[i] = q[i] - rng.between(0, 6);
    }
    if (ap_demand_feasible(q, c)) {
      EXPECT_TRUE(ap_demand_feasible(lower, c));
    }
  }
}
