#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "thompson/oracle.hpp"
#include "thompson/rewrite.hpp"
#include "thompson/word.hpp"

namespace thompson {
namespace {

oracle::PrefixMap map_of(const TreePair& tp) {
  std::vector<oracle::PrefixMap::Pair> pairs;
  for (std::size_t i = 0; i < tp.bijection.size(); ++i) {
    pairs.emplace_back(tp.domain.leaves()[i], tp.range.leaves()[tp.bijection[i]]);
  }
  return oracle::PrefixMap(std::move(pairs));
}

TEST(Redex, SplitMergeBigon) {
  StrandDiagram d;
  const VertexId s = d.add_vertex(VertexKind::Split);
  const VertexId m = d.add_vertex(VertexKind::Merge);
  d.add_edge(Endpoint::source(0), Endpoint::at(s, 0));
  d.add_edge(Endpoint::at(s, 0), Endpoint::at(m, 0));
  d.add_edge(Endpoint::at(s, 1), Endpoint::at(m, 1));
  d.add_edge(Endpoint::at(m, 0), Endpoint::sink(0));
  const auto rs = find_redexes(d);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].kind, Redex::Kind::TypeI);
  EXPECT_EQ(rs[0].top, s);
  EXPECT_EQ(rs[0].bottom, m);
  apply_redex(d, rs[0]);
  EXPECT_TRUE(is_identity(d.compacted()));
  EXPECT_THROW(apply_redex(d, rs[0]), Error);
}

TEST(Redex, CrossedPairIsNotARedex) {
  StrandDiagram d;
  const VertexId s = d.add_vertex(VertexKind::Split);
  const VertexId m = d.add_vertex(VertexKind::Merge);
  d.add_edge(Endpoint::source(0), Endpoint::at(s, 0));
  d.add_edge(Endpoint::at(s, 0), Endpoint::at(m, 1));
  d.add_edge(Endpoint::at(s, 1), Endpoint::at(m, 0));
  d.add_edge(Endpoint::at(m, 0), Endpoint::sink(0));
  EXPECT_TRUE(find_redexes(d).empty());
}

TEST(Redex, UnequalBigonWeightsBlock) {
  StrandDiagram d;
  const VertexId s = d.add_vertex(VertexKind::Split);
  const VertexId m = d.add_vertex(VertexKind::Merge);
  d.add_edge(Endpoint::source(0), Endpoint::at(s, 0));
  const EdgeId left = d.add_edge(Endpoint::at(s, 0), Endpoint::at(m, 0));
  d.add_edge(Endpoint::at(s, 1), Endpoint::at(m, 1));
  d.add_edge(Endpoint::at(m, 0), Endpoint::sink(0));
  d.edges[left].w = {0, 1};
  EXPECT_TRUE(find_redexes(d).empty());
  d.edges[left].w = {0, 0};
  EXPECT_EQ(find_redexes(d).size(), 1u);
}

TEST(Redex, MergeSplitAddsWeights) {
  StrandDiagram d;
  const VertexId m = d.add_vertex(VertexKind::Merge);
  const VertexId s = d.add_vertex(VertexKind::Split);
  const EdgeId a = d.add_edge(Endpoint::source(0), Endpoint::at(m, 0));
  const EdgeId b = d.add_edge(Endpoint::source(1), Endpoint::at(m, 1));
  const EdgeId mid = d.add_edge(Endpoint::at(m, 0), Endpoint::at(s, 0));
  const EdgeId x = d.add_edge(Endpoint::at(s, 0), Endpoint::sink(0));
  const EdgeId y = d.add_edge(Endpoint::at(s, 1), Endpoint::sink(1));
  d.edges[a].w = {1, 0};
  d.edges[b].w = {0, 2};
  d.edges[mid].w = {5, 7};
  d.edges[x].w = {0, 1};
  d.edges[y].w = {1, 1};
  const auto rs = find_redexes(d);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].kind, Redex::Kind::TypeII);
  apply_redex(d, rs[0]);
  const auto c = d.compacted();
  EXPECT_EQ(c.vertex_count(), 0u);
  ASSERT_EQ(c.edge_count(), 2u);
  EXPECT_EQ(c.edges[c.sources[0]].w, (Weight{6, 8}));
  EXPECT_EQ(c.edges[c.sources[1]].w, (Weight{6, 10}));
  EXPECT_EQ(c.sources[0], c.sinks[0]);
}

TEST(Reduce, Confluence) {
  auto rng = testing::make_rng(20);
  for (int i = 0; i < 300; ++i) {
    const Group grp = static_cast<Group>(i % 3);
    const Word w = random_word(grp, testing::random_length(0, 25, rng), rng);
    const auto d = word_to_diagram(w);
    const auto a = reduce(d);
    const auto b = reduce_random(d, rng);
    ASSERT_EQ(a.vertex_count(), b.vertex_count()) << to_string(w);
    EXPECT_TRUE(is_reduced(a));
    EXPECT_EQ(map_of(to_tree_pair(a)), map_of(to_tree_pair(b))) << to_string(w);
  }
}

TEST(Reduce, AgreesWithOracle) {
  auto rng = testing::make_rng(21);
  for (int i = 0; i < 300; ++i) {
    const Group grp = static_cast<Group>(i % 3);
    const Word w = random_word(grp, testing::random_length(0, 30, rng), rng);
    const auto r = reduce(word_to_diagram(w));
    EXPECT_EQ(map_of(to_tree_pair(r)), oracle::word_to_map(w)) << to_string(w);
    EXPECT_EQ(is_identity(r), oracle::word_to_map(w).is_identity());
  }
}

TEST(Reduce, ReducedTreePairIsMinimal) {
  auto rng = testing::make_rng(22);
  for (int i = 0; i < 200; ++i) {
    const auto tp = testing::random_tree_pair(1 + static_cast<int>(testing::random_length(0, 12, rng)),
                                              testing::Bijection::Any, rng);
    const auto r = reduce(from_tree_pair(tp, false));
    const TreePair out = to_tree_pair(r);
    const auto m = map_of(tp);
    EXPECT_EQ(map_of(out), m);
    EXPECT_EQ(out.bijection.size(), m.size());
    EXPECT_EQ(r.vertex_count(), 2 * (m.size() - 1));
  }
}

TEST(Reduce, RoundTripsReducedTreePairs) {
  auto rng = testing::make_rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto m = oracle::word_to_map(random_word(Group::V, testing::random_length(0, 15, rng), rng));
    std::vector<std::string> dom, ran;
    for (const auto& [d, r] : m.pairs()) dom.push_back(d);
    TreePair tp{BinaryTree::from_leaves(dom), {}, {}};
    for (const auto& [d, r] : m.pairs()) ran.push_back(r);
    std::vector<std::string> sorted = ran;
    std::sort(sorted.begin(), sorted.end());
    tp.range = BinaryTree::from_leaves(sorted);
    for (const auto& [d, r] : m.pairs()) {
      tp.bijection.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin()));
    }
    const TreePair back = to_tree_pair(reduce(from_tree_pair(tp, false)));
    EXPECT_EQ(back.domain.leaves(), tp.domain.leaves());
    EXPECT_EQ(back.range.leaves(), tp.range.leaves());
    EXPECT_EQ(back.bijection, tp.bijection);
  }
}

TEST(Reduce, WorklistCounters) {
  auto rng = testing::make_rng(24);
  for (int i = 0; i < 100; ++i) {
    const Word w = random_word(Group::V, testing::random_length(1, 60, rng), rng);
    const auto d = word_to_diagram(w);
    ReduceStats st;
    const auto r = reduce(d, &st);
    EXPECT_EQ(st.initial_vertices, d.vertex_count());
    EXPECT_EQ(st.reduced_total + r.vertex_count(), d.vertex_count());
    ASSERT_EQ(st.frontier_sizes.size(), st.rounds);
    ASSERT_EQ(st.reduced_sizes.size(), st.rounds);
    EXPECT_EQ(st.frontier_sizes.front(), d.vertex_count());
    // Each removed pair has at most 6 surviving neighbours.
    for (std::size_t k = 1; k < st.rounds; ++k) EXPECT_LE(st.frontier_sizes[k], 3 * st.reduced_sizes[k - 1]);
    EXPECT_LE(st.frontier_total, d.vertex_count() + 3 * st.reduced_total);
  }
}

TEST(Reduce, TraceListsEveryStep) {
  const auto d = word_to_diagram(parse_word("x0 x1 x1^-1 x0^-1", Group::F));
  std::ostringstream trace;
  PortGraph g = d;
  const auto st = reduce_in_place(g, &trace);
  std::size_t lines = 0;
  for (char ch : trace.str()) lines += ch == '\n';
  EXPECT_EQ(2 * lines, st.reduced_total);
  EXPECT_EQ(g.vertex_count(), 0u);
}

TEST(ToTreePair, Errors) {
  EXPECT_THROW(to_tree_pair(StrandDiagram::identity(2)), Error);
  const auto d = word_to_diagram(parse_word("x0 x0^-1", Group::F));
  try {
    (void)to_tree_pair(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReduced);
  }
}

}  // namespace
}  // namespace thompson
