#include <gtest/gtest.h>

#include <random>
#include <set>

#include "orbigraph/perm_group.hpp"
#include "orbigraph/permutation.hpp"
#include "test_util.hpp"

namespace orbigraph {
namespace {

using testing::G;
using testing::P;

TEST(ComposeTest, IdentityComposesToIdentity) {
  EXPECT_TRUE(compose(Permutation(3), Permutation(3)).is_identity());
}

TEST(ComposeTest, AppliesRightFactorFirst) {
  // p(q(0)) = p(0) = 1, p(q(1)) = p(2) = 2, p(q(2)) = p(1) = 0
  const Permutation r = compose(P("(0 1)", 3), P("(1 2)", 3));
  EXPECT_EQ(r.images(), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(r, P("(0 1 2)", 3));
  // the opposite order gives the other 3-cycle
  EXPECT_EQ(compose(P("(1 2)", 3), P("(0 1)", 3)).images(), (std::vector<int>{2, 0, 1}));
}

TEST(ComposeTest, InverseLaw) {
  const Permutation p = P("(0 1 2 3)", 4);
  EXPECT_TRUE(compose(p, p.inverse()).is_identity());
}

TEST(ComposeTest, RejectsDegreeMismatch) {
  EXPECT_THROW(compose(Permutation(3), Permutation(4)), std::invalid_argument);
}

TEST(PermutationTest, RejectsNonBijection) {
  const std::vector<int> bad{0, 0, 2};
  EXPECT_THROW(Permutation::from_images(bad), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("(0 1)(1 2)", 3), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("(0 5)", 3), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("[1,0", -1), std::invalid_argument);
}

TEST(PermutationTest, TextFormatsRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int degree = 1 + static_cast<int>(rng() % 12);
    const Permutation p = testing::random_permutation(degree, rng);
    EXPECT_EQ(Permutation::parse(p.to_cycle_string(), degree), p);
    EXPECT_EQ(Permutation::parse(p.to_image_string()), p);
    EXPECT_EQ(Permutation::parse(p.to_cycle_string(), degree).to_cycle_string(),
              p.to_cycle_string());
  }
  EXPECT_EQ(P("(0 1)(2 3 4)", 5).to_cycle_string(), "(0 1)(2 3 4)");
  EXPECT_EQ(P("(0 1)(2 3 4)", 5).to_image_string(), "[1,0,3,4,2]");
  EXPECT_EQ(Permutation(4).to_cycle_string(), "()");
  EXPECT_EQ(Permutation::parse("(1,2,3)", 4), P("(1 2 3)", 4));
}

TEST(PermutationTest, OrderAndParity) {
  EXPECT_EQ(P("(0 1)(2 3 4)", 5).order(), 6u);
  EXPECT_FALSE(P("(0 1)", 3).is_even());
  EXPECT_TRUE(P("(0 1 2)", 3).is_even());
  EXPECT_EQ(P("(0 1 2 3)", 4).power(2), P("(0 2)(1 3)", 4));
  EXPECT_EQ(P("(0 1 2 3)", 4).power(-1), P("(0 3 2 1)", 4));
}

TEST(ClosureTest, Examples) {
  EXPECT_EQ(closure(4, {}).size(), 1u);
  EXPECT_EQ(closure(3, {P("(0 1)", 3), P("(0 1 2)", 3)}).size(), 6u);
  EXPECT_EQ(closure(4, {P("(0 1 2 3)", 4)}).size(), 4u);
  EXPECT_THROW(closure(6, {P("(0 1)", 6), P("(0 1 2 3 4 5)", 6)}, 100), TooLargeError);
}

TEST(GroupOrderTest, Examples) {
  EXPECT_EQ(PermutationGroup::symmetric(4).order(), 24u);
  EXPECT_EQ(closure(4, PermutationGroup::symmetric(4).generators()).size(), 24u);
  EXPECT_EQ(PermutationGroup::trivial(5).order(), 1u);
  EXPECT_EQ(G(5, {"(0 1)(2 3 4)"}).order(), 6u);
  EXPECT_EQ(PermutationGroup::symmetric(12).order(), 479001600u);
  EXPECT_EQ(PermutationGroup::alternating(10).order(), 1814400u);
}

TEST(OrbitsTest, Examples) {
  EXPECT_EQ(PermutationGroup::trivial(3).orbits().size(), 3u);
  const auto part = G(5, {"(0 1)(2 3 4)"}).orbits();
  ASSERT_EQ(part.size(), 2u);
  EXPECT_EQ(part.blocks[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(part.blocks[1], (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(PermutationGroup::symmetric(3).orbits().size(), 1u);
}

TEST(TransitivityTest, Examples) {
  EXPECT_TRUE(G(4, {"(0 1 2 3)"}).is_transitive());
  EXPECT_FALSE(PermutationGroup::trivial(2).is_transitive());
  EXPECT_FALSE(G(4, {"(0 1)(2 3)"}).is_transitive());
  EXPECT_TRUE(G(5, {"(0 1)(2 3 4)"}).is_transitive_on_range(2, 3));
}

TEST(ContainsTest, Examples) {
  const auto c3 = G(3, {"(0 1 2)"});
  EXPECT_TRUE(c3.contains(Permutation(3)));
  EXPECT_FALSE(c3.contains(P("(0 1)", 3)));
  EXPECT_TRUE(c3.contains(P("(0 2 1)", 3)));
}

TEST(ConjugacyTest, Examples) {
  const auto c4 = G(4, {"(0 1 2 3)"});
  EXPECT_TRUE(are_conjugate_in_symmetric(c4, c4));
  EXPECT_TRUE(are_conjugate_in_symmetric(G(4, {"(0 1)"}), G(4, {"(2 3)"})));
  EXPECT_FALSE(are_conjugate_in_symmetric(c4, G(4, {"(0 1)(2 3)", "(0 2)(1 3)"})));
  // Same order, same orbit lengths, different permutation characters.
  EXPECT_FALSE(are_conjugate_in_symmetric(G(4, {"(0 1)(2 3)"}), G(4, {"(0 1)"})));
}

TEST(ConjugacyTest, WitnessConjugatesOneOntoTheOther) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int degree = 3 + static_cast<int>(rng() % 6);
    const auto g = testing::random_small_group(degree, 2000, rng);
    const Permutation s = testing::random_permutation(degree, rng);
    std::vector<Permutation> conj;
    for (const auto& x : g.generators()) conj.push_back(conjugate(x, s));
    const PermutationGroup h(degree, conj);
    const auto w = conjugating_element(g, h);
    ASSERT_TRUE(w.has_value());
    for (const auto& x : g.generators()) EXPECT_TRUE(h.contains(conjugate(x, *w)));
    // symmetric
    EXPECT_TRUE(are_conjugate_in_symmetric(h, g));
  }
}

// Properties ---------------------------------------------------------------

TEST(GroupPropertyTest, ClosureMatchesChainOrderAndMembership) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int degree = 2 + static_cast<int>(rng() % 7);
    const auto g = testing::random_small_group(degree, 200, rng);
    const auto elems = closure(degree, g.generators());
    EXPECT_EQ(elems.size(), g.order());
    const std::set<Permutation> members(elems.begin(), elems.end());
    // exhaustive membership over Sym(degree) for small degrees
    if (degree <= 6) {
      for (const auto& p : closure(degree, PermutationGroup::symmetric(degree).generators())) {
        EXPECT_EQ(members.count(p) == 1, g.contains(p));
      }
    }
    EXPECT_TRUE(g.contains(Permutation(degree)));
    // group axioms on the element set
    for (const auto& a : elems) {
      EXPECT_EQ(members.count(a.inverse()), 1u);
      for (const auto& b : g.generators()) EXPECT_EQ(members.count(a * b), 1u);
    }
  }
}

TEST(GroupPropertyTest, OrbitBlocksAreStable) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 2 + static_cast<int>(rng() % 12);
    const auto g = testing::random_small_group(degree, 1u << 20, rng);
    const auto part = g.orbits();
    for (const auto& gen : g.generators()) {
      for (int x = 0; x < degree; ++x) {
        EXPECT_EQ(part.block_index[gen[x]], part.block_index[x]);
      }
    }
  }
}

TEST(GroupPropertyTest, ElementEnumerationIsExact) {
  const auto s5 = PermutationGroup::symmetric(5);
  const auto& elems = s5.elements();
  EXPECT_EQ(elems.size(), 120u);
  EXPECT_TRUE(elems.front().is_identity());
  EXPECT_EQ(std::set<Permutation>(elems.begin(), elems.end()).size(), 120u);
  EXPECT_THROW(PermutationGroup::symmetric(9).elements(1000), TooLargeError);
}

}  // namespace
}  // namespace orbigraph
