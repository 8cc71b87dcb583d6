#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thompson/oracle.hpp"
#include "thompson/rewrite.hpp"
#include "thompson/word.hpp"

namespace thompson {
namespace {

Generator g(Symbol s, bool inv = false) { return {s, inv}; }

TEST(Parse, PowersExpand) {
  const Word w = parse_word("x0 x1^-2", Group::F);
  EXPECT_EQ(w.letters, (std::vector<Generator>{g(Symbol::X0), g(Symbol::X1, true), g(Symbol::X1, true)}));
  EXPECT_EQ(parse_word("x0^3", Group::F).letters,
            (std::vector<Generator>{g(Symbol::X0), g(Symbol::X0), g(Symbol::X0)}));
}

TEST(Parse, SeparatorsAndUppercase) {
  const Word w = parse_word("x0*X1 * c^2", Group::T);
  EXPECT_EQ(w.letters, (std::vector<Generator>{g(Symbol::X0), g(Symbol::X1, true), g(Symbol::C), g(Symbol::C)}));
  EXPECT_EQ(parse_word("X0^-1", Group::F).letters, (std::vector<Generator>{g(Symbol::X0)}));
  EXPECT_EQ(parse_word("PI0", Group::V).letters, (std::vector<Generator>{g(Symbol::Pi0, true)}));
  EXPECT_TRUE(parse_word("  ", Group::F).empty());
  EXPECT_TRUE(parse_word("x1^0", Group::F).empty());
}

TEST(Parse, AlphabetErrors) {
  for (auto [text, group] : {std::pair{"c", Group::F}, {"pi0", Group::T}, {"x0 pi0", Group::F}}) {
    try {
      (void)parse_word(text, group);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::AlphabetError);
    }
  }
}

TEST(Parse, SyntaxErrors) {
  for (const char* text : {"x2", "x0^", "x0^a", "x0 + x1", "Pi0", "x0^--1"}) {
    try {
      (void)parse_word(text, Group::V);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << text;
    }
  }
}

TEST(Print, RoundTrips) {
  auto rng = testing::make_rng(10);
  for (Group grp : {Group::F, Group::T, Group::V}) {
    for (int i = 0; i < 100; ++i) {
      const Word w = random_word(grp, testing::random_length(0, 12, rng), rng);
      EXPECT_EQ(parse_word(to_string(w), grp), w);
    }
  }
}

TEST(GeneratorDiagram, X0IsIrreducibleAndInverseMatches) {
  const auto d = generator_diagram(g(Symbol::X0), Group::F);
  EXPECT_EQ(d.vertex_count(), 4u);
  EXPECT_TRUE(find_redexes(d).empty());
  const auto inv = generator_diagram(g(Symbol::X0, true), Group::F);
  const auto expected = invert(d);
  ASSERT_EQ(inv.edges.size(), expected.edges.size());
  for (std::size_t e = 0; e < inv.edges.size(); ++e) {
    EXPECT_EQ(inv.edges[e].from, expected.edges[e].from);
    EXPECT_EQ(inv.edges[e].to, expected.edges[e].to);
  }
}

TEST(GeneratorDiagram, AlphabetError) {
  try {
    (void)generator_diagram(g(Symbol::C), Group::F);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlphabetError);
  }
}

TEST(GeneratorDiagram, OracleAgreesWithTreePairs) {
  // The diagram-side tree pairs and the oracle maps encode the same elements.
  const auto x0 = oracle::PrefixMap::generator(g(Symbol::X0));
  EXPECT_EQ(x0.apply("00"), "0");
  EXPECT_EQ(x0.apply("01"), "10");
  EXPECT_EQ(x0.apply("1"), "11");
  for (Symbol s : {Symbol::X0, Symbol::X1, Symbol::C, Symbol::Pi0}) {
    const TreePair tp = generator_tree_pair(s);
    const auto m = oracle::PrefixMap::generator(g(s));
    for (std::size_t i = 0; i < tp.bijection.size(); ++i) {
      EXPECT_EQ(m.apply(tp.domain.leaves()[i]), tp.range.leaves()[tp.bijection[i]]) << to_string(s);
    }
  }
}

TEST(WordToDiagram, EmptyAndCancelling) {
  EXPECT_TRUE(is_identity(word_to_diagram(Word{})));
  const auto d = word_to_diagram(parse_word("x0 x0^-1", Group::F));
  EXPECT_EQ(d.vertex_count(), 8u);
  EXPECT_TRUE(is_identity(reduce(d)));
}

TEST(WordToDiagram, RelationsOfF) {
  // [x0 x1^-1, x0^-1 x1 x0] and [x0 x1^-1, x0^-2 x1 x0^2].
  const Word a = parse_word("x0 x1^-1", Group::F);
  for (const char* b_text : {"x0^-1 x1 x0", "x0^-2 x1 x0^2"}) {
    const Word b = parse_word(b_text, Group::F);
    const Word rel = a.inverse() * b.inverse() * a * b;
    EXPECT_TRUE(oracle::equals_identity(oracle::word_to_map(rel))) << b_text;
    EXPECT_TRUE(is_identity(reduce(word_to_diagram(rel)))) << b_text;
  }
}

TEST(WordToDiagram, RelationsOfTAndV) {
  // c^3 = 1, pi0^2 = 1, and x0 is not c.
  for (auto [text, grp] : {std::pair{"c^3", Group::T}, {"pi0^2", Group::V}, {"c^3", Group::V}}) {
    const Word w = parse_word(text, grp);
    EXPECT_TRUE(oracle::equals_identity(oracle::word_to_map(w))) << text;
    EXPECT_TRUE(is_identity(reduce(word_to_diagram(w)))) << text;
  }
  EXPECT_FALSE(is_identity(reduce(word_to_diagram(parse_word("c^2", Group::T)))));
}

TEST(WordToDiagram, SizeIsLinear) {
  auto rng = testing::make_rng(11);
  for (int i = 0; i < 50; ++i) {
    const Word w = random_word(Group::V, testing::random_length(0, 40, rng), rng);
    EXPECT_LE(word_to_diagram(w).vertex_count(), 6 * w.size());
  }
}

TEST(WordToDiagram, WordTimesInverseIsIdentity) {
  auto rng = testing::make_rng(12);
  for (int i = 0; i < 200; ++i) {
    const Group grp = static_cast<Group>(i % 3);
    const Word w = random_word(grp, testing::random_length(0, 20, rng), rng);
    EXPECT_TRUE(is_identity(reduce(word_to_diagram(w * w.inverse()))));
  }
}

}  // namespace
}  // namespace thompson
