#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thompson/closed_v.hpp"
#include "thompson/oracle.hpp"

namespace thompson {
namespace {

Word v(const char* s) { return parse_word(s, Group::V); }

TEST(Cohomology, SingleLoop) {
  IncidenceGraph g{1, {{0, 0}}};
  EXPECT_TRUE(cohomology_equivalent(g, {2}, {2}));
  EXPECT_FALSE(cohomology_equivalent(g, {2}, {1}));
}

TEST(Cohomology, TreeEdgesAreFree) {
  IncidenceGraph g{3, {{0, 1}, {1, 2}}};
  EXPECT_TRUE(cohomology_equivalent(g, {5, -3}, {0, 7}));
}

TEST(Cohomology, MatchesEnumerationOnRandomGraphs) {
  auto rng = testing::make_rng(41);
  for (int i = 0; i < 400; ++i) {
    IncidenceGraph g;
    g.vertex_count = 1 + static_cast<std::int32_t>(testing::random_length(0, 3, rng));
    const std::size_t m = testing::random_length(1, 6, rng);
    std::uniform_int_distribution<std::int32_t> pick(0, g.vertex_count - 1);
    std::uniform_int_distribution<int> val(-1, 1);
    std::vector<std::int64_t> c1, c2;
    for (std::size_t e = 0; e < m; ++e) {
      g.edges.emplace_back(pick(rng), pick(rng));
      c1.push_back(val(rng));
      c2.push_back(val(rng));
    }
    // Differences are at most 2 per edge, so potentials within 2(V-1) suffice.
    const bool brute = testing::brute_cohomologous(g.vertex_count, g.edges, c1, c2, 2 * (g.vertex_count - 1));
    EXPECT_EQ(cohomology_equivalent(g, c1, c2), brute);
  }
}

TEST(ClosedV, ConjugatePairs) {
  auto rng = testing::make_rng(42);
  for (int i = 0; i < 150; ++i) {
    const Word w = random_word(Group::V, testing::random_length(1, 12, rng), rng);
    const Word g = random_word(Group::V, testing::random_length(0, 6, rng), rng);
    const Word w2 = conjugate(w, g);
    EXPECT_TRUE(is_conjugate_v(w, w2)) << to_string(w) << " by " << to_string(g);
    EXPECT_EQ(canonical_closed(reduced_closed(w)), canonical_closed(reduced_closed(w2)));
  }
}

TEST(ClosedV, CanonicalFormAgreesWithMatching) {
  auto rng = testing::make_rng(43);
  for (int i = 0; i < 300; ++i) {
    const Word a = random_word(Group::V, testing::random_length(0, 6, rng), rng);
    const Word b = random_word(Group::V, testing::random_length(0, 6, rng), rng);
    const ClosedDiagram ra = reduced_closed(a), rb = reduced_closed(b);
    EXPECT_EQ(closed_equivalent(ra, rb), canonical_closed(ra) == canonical_closed(rb))
        << to_string(a) << " vs " << to_string(b);
  }
}

TEST(ClosedV, KnownCases) {
  EXPECT_TRUE(is_conjugate_v(v("c"), v("c^-1")));
  EXPECT_TRUE(is_conjugate_v(v("pi0"), v("c^-1 pi0 c")));
  EXPECT_FALSE(is_conjugate_v(v("pi0"), v("c")));
  EXPECT_FALSE(is_conjugate_v(v("x0"), v("")));
}

TEST(ClosedV, WitnessImpliesConjugate) {
  auto rng = testing::make_rng(44);
  for (int i = 0; i < 40; ++i) {
    const Word a = random_word(Group::V, testing::random_length(1, 3, rng), rng);
    const Word b = random_word(Group::V, testing::random_length(1, 3, rng), rng);
    if (oracle::brute_conj_witness(a, b, 4)) {
      EXPECT_TRUE(is_conjugate_v(a, b)) << to_string(a) << " vs " << to_string(b);
    }
  }
}

TEST(Torsion, Orders) {
  const auto pi = torsion_check(v("pi0"));
  EXPECT_TRUE(pi.torsion);
  EXPECT_EQ(pi.order, 2);
  EXPECT_EQ(torsion_check(v("c")).order, 3);
  EXPECT_EQ(torsion_check(v("")).order, 1);
  EXPECT_EQ(torsion_check(v("c pi0")).order, oracle::order(oracle::word_to_map(v("c pi0")), 50));
  EXPECT_FALSE(torsion_check(v("x0")).torsion);
  EXPECT_FALSE(torsion_check(v("x0")).order.has_value());
}

TEST(Torsion, MatchesOracleOnRandomWords) {
  auto rng = testing::make_rng(45);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(Group::V, testing::random_length(0, 8, rng), rng);
    const auto res = torsion_check(w);
    if (res.torsion) {
      EXPECT_EQ(res.order, oracle::order(oracle::word_to_map(w), static_cast<int>(*res.order))) << to_string(w);
    } else {
      EXPECT_FALSE(oracle::order(oracle::word_to_map(w), 24).has_value()) << to_string(w);
    }
  }
}

TEST(Torsion, OracleCutoff) {
  EXPECT_THROW(oracle_order(v("x0"), 20), Error);
  EXPECT_EQ(oracle_order(v("pi0"), 2), 2);
}

}  // namespace
}  // namespace thompson
