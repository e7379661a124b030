#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace displace;
using namespace displace::testing;

TEST(GreedyPromote, FourCandidateInstance) {
  const ScoringVector p = validate_scoring_vector({3, 2, 1, 0});
  const GreedyResult r = greedy_promote(four_candidates(), p, 1, 2);
  EXPECT_EQ(r.displaced, 1u);
  ASSERT_EQ(r.ballots.rankings.size(), 1u);
  EXPECT_EQ(r.ballots.rankings[0], (std::vector<Candidate>{2, 3, 1, 0}));
}

TEST(GreedyPromote, NoBallots) {
  const ScoringVector p = validate_scoring_vector({3, 2, 1, 0});
  const GreedyResult r = greedy_promote(four_candidates(), p, 0, 2);
  EXPECT_EQ(r.displaced, 0u);
  EXPECT_TRUE(r.ballots.rankings.empty());
}

TEST(GreedyPromote, DeterministicPermutations) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance in = random_instance(trial_seed(61, s), 3, 15, 8, {"borda", "321", "plurality"});
    const GreedyResult a = greedy_promote(in.honest, in.p, in.m, in.k);
    const GreedyResult b = greedy_promote(in.honest, in.p, in.m, in.k);
    EXPECT_EQ(a.displaced, b.displaced);
    EXPECT_EQ(a.ballots.rankings, b.ballots.rankings);
    for (auto r : a.ballots.rankings) {
      std::sort(r.begin(), r.end());
      for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i], static_cast<Candidate>(i));
    }
  }
}
