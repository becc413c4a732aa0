#include <gtest/gtest.h>

#include <random>
#include <set>

#include "orbigraph/group_structure.hpp"
#include "orbigraph/lattice.hpp"
#include "test_util.hpp"

namespace orbigraph {
namespace {

using testing::G;

const PermutationGroup kS3 = G(3, {"(0 1)", "(0 1 2)"});
const PermutationGroup kA3 = G(3, {"(0 1 2)"});
const PermutationGroup kA4 = PermutationGroup::alternating(4);
const PermutationGroup kZ4 = G(4, {"(0 1 2 3)"});
const PermutationGroup kV4 = G(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
const PermutationGroup kZ2 = G(2, {"(0 1)"});

AbstractGroup abstract(const PermutationGroup& g) {
  return quotient(g, PermutationGroup::trivial(g.degree())).group();
}

std::vector<std::uint64_t> orders(const std::vector<PermutationGroup>& groups) {
  std::vector<std::uint64_t> out;
  for (const auto& g : groups) out.push_back(g.order());
  return out;
}

std::set<Permutation> element_set(const PermutationGroup& g) {
  const auto& e = g.elements();
  return {e.begin(), e.end()};
}

TEST(NormalSubgroupsTest, Examples) {
  EXPECT_EQ(orders(normal_subgroups(kS3)), (std::vector<std::uint64_t>{1, 3, 6}));
  EXPECT_EQ(orders(normal_subgroups(kA4)), (std::vector<std::uint64_t>{1, 4, 12}));
  auto z2z4 = G(6, {"(0 1)", "(2 3 4 5)"});
  EXPECT_EQ(normal_subgroups(z2z4).size(), all_subgroups(z2z4).size());
  auto z2cubed = G(6, {"(0 1)", "(2 3)", "(4 5)"});
  EXPECT_EQ(normal_subgroups(z2cubed).size(), 16U);
}

TEST(NormalSubgroupsTest, NaturalSymmetricAndAlternating) {
  EXPECT_EQ(orders(normal_subgroups(PermutationGroup::symmetric(7))),
            (std::vector<std::uint64_t>{1, 2520, 5040}));
  EXPECT_EQ(normal_subgroups(PermutationGroup::alternating(6)).size(), 2U);
  EXPECT_EQ(orders(normal_subgroups(PermutationGroup::symmetric(4))),
            (std::vector<std::uint64_t>{1, 4, 12, 24}));
}

TEST(NormalSubgroupsTest, MatchesLatticeFilterOnSmallGroups) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = testing::random_small_group(3 + static_cast<int>(rng() % 5), 100, rng);
    SCOPED_TRACE(g.to_string());
    std::set<std::set<Permutation>> expected;
    for (const auto& h : all_subgroups(g)) {
      auto hs = element_set(h);
      bool normal = true;
      for (const auto& x : g.elements()) {
        for (const auto& y : hs) normal = normal && hs.count(conjugate(y, x)) > 0;
      }
      if (normal) expected.insert(hs);
    }
    std::set<std::set<Permutation>> got;
    for (const auto& n : normal_subgroups(g)) {
      for (const auto& s : g.generators()) EXPECT_TRUE(n.normalized_by(s));
      got.insert(element_set(n));
    }
    EXPECT_EQ(got, expected);
  }
}

TEST(QuotientTest, Examples) {
  EXPECT_EQ(quotient(kS3, kS3).group().order(), 1);
  EXPECT_EQ(quotient(kS3, PermutationGroup::trivial(3)).group().order(), 6);
  auto q = quotient(kS3, kA3);
  EXPECT_EQ(q.group().order(), 2);
  EXPECT_EQ(q.project(testing::P("(0 1)", 3)), 1);
  EXPECT_EQ(q.project(testing::P("(1 2)", 3)), 1);
  EXPECT_EQ(q.project(testing::P("(0 2 1)", 3)), 0);
}

TEST(QuotientTest, TrivialKernelIsIsomorphicToGroup) {
  ElementTable t(PermutationGroup::symmetric(4));
  std::vector<int> table;
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = 0; b < t.size(); ++b) {
      table.push_back(t.mul(static_cast<int>(a), static_cast<int>(b)));
    }
  }
  AbstractGroup direct(static_cast<int>(t.size()), table, true);
  EXPECT_FALSE(isomorphisms(abstract(PermutationGroup::symmetric(4)), direct).empty());
}

TEST(QuotientTest, RejectsNonNormalAndCap) {
  EXPECT_THROW(quotient(kS3, G(3, {"(0 1)"})), std::invalid_argument);
  Caps caps;
  caps.quotient = 10;
  EXPECT_THROW(quotient(PermutationGroup::symmetric(4), PermutationGroup::trivial(4), caps),
               TooLargeError);
}

TEST(QuotientTest, ProjectionIsHomomorphismWithKernelN) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = testing::random_small_group(3 + static_cast<int>(rng() % 5), 500, rng);
    for (const auto& n : normal_subgroups(g)) {
      auto q = quotient(g, n);
      EXPECT_EQ(g.order(), n.order() * static_cast<std::uint64_t>(q.group().order()));
      const auto& elems = g.elements();
      std::vector<int> proj;
      std::set<int> image;
      for (const auto& x : elems) {
        proj.push_back(q.project(x));
        image.insert(proj.back());
        EXPECT_EQ(proj.back() == 0, n.contains(x));
      }
      EXPECT_EQ(image.size(), static_cast<std::size_t>(q.group().order()));
      for (std::size_t a = 0; a < elems.size(); a += 3) {
        for (std::size_t b = 0; b < elems.size(); ++b) {
          EXPECT_EQ(q.project(elems[a] * elems[b]), q.group().mul(proj[a], proj[b]));
        }
      }
    }
  }
}

TEST(DerivedSubgroupTest, Examples) {
  EXPECT_TRUE(derived_subgroup(G(5, {"(0 1)", "(2 3 4)"})).is_trivial());
  EXPECT_TRUE(derived_subgroup(kS3).same_group(kA3));
  EXPECT_TRUE(derived_subgroup(kA4).same_group(kV4));
  EXPECT_TRUE(is_normal(kA4, derived_subgroup(kA4)));
}

TEST(MinimalNormalTest, Examples) {
  auto s3 = minimal_normal_subgroups(kS3);
  ASSERT_EQ(s3.size(), 1U);
  EXPECT_TRUE(s3[0].same_group(kA3));
  auto z4 = minimal_normal_subgroups(kZ4);
  ASSERT_EQ(z4.size(), 1U);
  EXPECT_EQ(z4[0].order(), 2U);
  auto a5 = minimal_normal_subgroups(PermutationGroup::alternating(5));
  ASSERT_EQ(a5.size(), 1U);
  EXPECT_EQ(a5[0].order(), 60U);
}

TEST(MaximalSubgroupsTest, Examples) {
  auto s3 = maximal_subgroups(kS3);
  EXPECT_EQ(s3.size(), 4U);
  EXPECT_EQ(std::count_if(s3.begin(), s3.end(), [](auto& m) { return m.order() == 3; }), 1);
  auto z4 = maximal_subgroups(kZ4);
  ASSERT_EQ(z4.size(), 1U);
  EXPECT_EQ(z4[0].order(), 2U);
  EXPECT_TRUE(maximal_subgroups(PermutationGroup::trivial(3)).empty());
  EXPECT_EQ(maximal_subgroups(PermutationGroup::symmetric(4)).size(), 8U);
  EXPECT_EQ(maximal_subgroups(PermutationGroup::symmetric(5)).size(), 1U + 5 + 10 + 6);
}

TEST(IsomorphismTest, Examples) {
  EXPECT_EQ(isomorphisms(abstract(kZ2), abstract(kZ2)).size(), 1U);
  EXPECT_TRUE(isomorphisms(abstract(kZ4), abstract(kV4)).empty());
  EXPECT_EQ(isomorphisms(abstract(kS3), abstract(kS3)).size(), 6U);
  EXPECT_EQ(isomorphisms(abstract(kV4), abstract(kV4)).size(), 6U);
  EXPECT_EQ(isomorphisms(abstract(PermutationGroup::symmetric(4)),
                         abstract(PermutationGroup::symmetric(4)))
                .size(),
            24U);
}

TEST(IsomorphismTest, ModInnerExamples) {
  EXPECT_EQ(isomorphisms_mod_inner(abstract(kS3), abstract(kS3)).size(), 1U);
  EXPECT_EQ(isomorphisms_mod_inner(abstract(kV4), abstract(kV4)).size(), 6U);
  auto t = abstract(PermutationGroup::trivial(1));
  EXPECT_EQ(isomorphisms_mod_inner(t, t).size(), 1U);
  // Out(A6) has order 4, Out(D8) has order 2
  auto a6 = abstract(PermutationGroup::alternating(6));
  EXPECT_EQ(isomorphisms_mod_inner(a6, a6).size(), 4U);
  auto d8 = abstract(G(4, {"(0 1 2 3)", "(0 2)"}));
  EXPECT_EQ(isomorphisms_mod_inner(d8, d8).size(), 2U);
}

TEST(IsomorphismTest, IsomorphismsBetweenDifferentPresentations) {
  // S3 acting on 3 points vs. S3 acting regularly on 6
  auto regular = G(6, {"(0 1 2)(3 4 5)", "(0 3)(1 5)(2 4)"});
  auto isos = isomorphisms(abstract(kS3), abstract(regular));
  EXPECT_EQ(isos.size(), 6U);
  for (const auto& phi : isos) {
    EXPECT_TRUE(verify_isomorphism(abstract(kS3), abstract(regular), phi.map));
  }
}

TEST(IsomorphismTest, ModInnerRepresentativesRecoverAllIsomorphisms) {
  std::mt19937_64 rng(9);
  int checked = 0;
  while (checked < 30) {
    auto g = testing::random_small_group(3 + static_cast<int>(rng() % 4), 24, rng);
    auto q = abstract(g);
    auto all = isomorphisms(q, q);
    std::set<std::vector<int>> all_maps;
    for (const auto& phi : all) {
      EXPECT_TRUE(verify_isomorphism(q, q, phi.map));
      all_maps.insert(phi.map);
    }
    std::set<std::vector<int>> rebuilt;
    for (const auto& phi : isomorphisms_mod_inner(q, q)) {
      for (int c = 0; c < q.order(); ++c) {
        std::vector<int> m(q.order());
        for (int x = 0; x < q.order(); ++x) m[x] = q.mul(q.mul(c, phi.map[x]), q.inv(c));
        rebuilt.insert(m);
      }
    }
    EXPECT_EQ(rebuilt, all_maps);
    ++checked;
  }
}

TEST(AbstractGroupTest, RejectsBadTables) {
  EXPECT_THROW(AbstractGroup(2, {0, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(AbstractGroup(2, {1, 0, 0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(AbstractGroup(2, {0, 1, 1, 0}, true));
}

TEST(AbstractGroupTest, AssociativityOfQuotientTables) {
  for (const auto& g : {kS3, kA4, PermutationGroup::symmetric(4), kZ4}) {
    for (const auto& n : normal_subgroups(g)) {
      const auto q = quotient(g, n).group();
      EXPECT_NO_THROW(AbstractGroup(q.order(), q.table(), true));
    }
  }
}

}  // namespace
}  // namespace orbigraph
