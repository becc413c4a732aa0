#include <gtest/gtest.h>

#include <set>

#include "orbigraph/catalog.hpp"
#include "orbigraph/goursat.hpp"
#include "orbigraph/lattice.hpp"
#include "test_util.hpp"

namespace orbigraph {
namespace {

using testing::G;

using ElementKey = std::set<Permutation>;

ElementKey elements_of(const PermutationGroup& g) {
  const auto& e = g.elements();
  return {e.begin(), e.end()};
}

PermutationGroup direct_product(const PermutationGroup& a, const PermutationGroup& b) {
  std::vector<Permutation> gens;
  for (const auto& x : a.generators()) gens.push_back(x.direct_sum(Permutation(b.degree())));
  for (const auto& y : b.generators()) gens.push_back(Permutation(a.degree()).direct_sum(y));
  return {a.degree() + b.degree(), gens};
}

void check_invariants(const Factor& fa, const Factor& fb, const GoursatTriple& t,
                      const TwoOrbitGroup& c) {
  const auto& a = fa.group();
  const auto& b = fb.group();
  const int k = a.degree();
  const int l = b.degree();
  auto orbits = c.group.orbits();
  ASSERT_EQ(orbits.size(), 2U);
  EXPECT_EQ(orbits.blocks[0].size(), static_cast<std::size_t>(k));
  EXPECT_TRUE(c.group.restrict_to(0, k).same_group(a));
  EXPECT_TRUE(c.group.restrict_to(k, l).same_group(b));
  EXPECT_EQ(c.group.order(), a.order() * fb.kernel(t.kernel_b).order());
  EXPECT_EQ(c.group.order(), b.order() * fa.kernel(t.kernel_a).order());
}

TEST(GoursatTest, TwoTransposition) {
  auto z2 = G(2, {"(0 1)"});
  Factor f(z2, 2);
  auto triples = goursat_triples(f, f);
  ASSERT_EQ(triples.size(), 2U);
  std::multiset<std::uint64_t> orders;
  for (const auto& t : triples) {
    auto c = fiber_product(f, f, t);
    check_invariants(f, f, t, c);
    orders.insert(c.group.order());
    if (c.group.order() == 2) {
      EXPECT_TRUE(c.group.same_group(G(4, {"(0 1)(2 3)"})));
    }
  }
  EXPECT_EQ(orders, (std::multiset<std::uint64_t>{2, 4}));
}

TEST(GoursatTest, CoprimeOrdersGiveOnlyTheDirectProduct) {
  Factor fa(G(2, {"(0 1)"}), 3);
  Factor fb(G(3, {"(0 1 2)"}), 3);
  auto triples = goursat_triples(fa, fb);
  ASSERT_EQ(triples.size(), 1U);
  auto c = fiber_product(fa, fb, triples[0]);
  EXPECT_EQ(c.group.order(), 6U);
  check_invariants(fa, fb, triples[0], c);
}

TEST(GoursatTest, TrivialFirstFactor) {
  Factor fa(PermutationGroup::trivial(1), 1);
  Factor fb(G(3, {"(0 1 2)"}), 1);
  auto triples = goursat_triples(fa, fb);
  ASSERT_EQ(triples.size(), 1U);
  auto c = fiber_product(fa, fb, triples[0]);
  EXPECT_EQ(c.group.order(), 3U);
  EXPECT_TRUE(c.group.same_group(G(4, {"(1 2 3)"})));
  EXPECT_EQ(subdirect_products(PermutationGroup::trivial(1), G(3, {"(0 1 2)"})).size(), 1U);
  EXPECT_EQ(subdirect_products(G(2, {"(0 1)"}), G(2, {"(0 1)"})).size(), 2U);
  EXPECT_EQ(subdirect_products(G(2, {"(0 1)"}), G(3, {"(0 1 2)"})).size(), 1U);
}

TEST(GoursatTest, InvariantsOnCatalogPairs) {
  auto cat = load_catalog(default_catalog_path());
  for (int k = 2; k <= 4; ++k) {
    for (int l = k; l <= 6; ++l) {
      for (const auto& ea : cat.degree(k)) {
        for (const auto& eb : cat.degree(l)) {
          const auto bound = std::min(ea.order, eb.order);
          Factor fa(ea.group(), bound);
          Factor fb(eb.group(), bound);
          for (const auto& t : goursat_triples(fa, fb)) {
            check_invariants(fa, fb, t, fiber_product(fa, fb, t));
          }
        }
      }
    }
  }
}

// Subgroups of A x B that project onto both factors, from the full lattice,
// compared with the fiber products over every (N_A, N_B, phi).
TEST(GoursatPropertyTest, ExhaustiveAgainstSubgroupsOfDirectProduct) {
  auto cat = load_catalog(default_catalog_path());
  std::vector<PermutationGroup> groups;
  for (int d = 1; d <= 6; ++d) {
    for (const auto& e : cat.degree(d)) groups.push_back(e.group());
  }
  int pairs = 0;
  for (const auto& a : groups) {
    for (const auto& b : groups) {
      if (a.order() * b.order() > 256 || a.degree() + b.degree() > 12) continue;
      ++pairs;
      const int k = a.degree();
      const int l = b.degree();
      auto ab = direct_product(a, b);
      std::set<ElementKey> expected;
      for (const auto& h : all_subgroups(ab)) {
        if (h.restrict_to(0, k).order() == a.order() && h.restrict_to(k, l).order() == b.order()) {
          expected.insert(elements_of(h));
        }
      }
      const auto bound = std::min(a.order(), b.order());
      Factor fa(a, bound);
      Factor fb(b, bound);
      std::set<ElementKey> got;
      for (const auto& t : goursat_triples(fa, fb, false)) {
        EXPECT_TRUE(got.insert(elements_of(fiber_product(fa, fb, t).group)).second)
            << "two triples gave the same product";
      }
      ASSERT_EQ(got, expected) << a.to_string() << " x " << b.to_string();

      // mod-inner representatives reach every product after conjugating by 1 x B
      std::set<ElementKey> reached;
      for (const auto& t : goursat_triples(fa, fb, true)) {
        auto c = fiber_product(fa, fb, t).group;
        for (const auto& y : b.elements()) {
          const Permutation s = Permutation(k).direct_sum(y);
          std::vector<Permutation> gens;
          for (const auto& g : c.generators()) gens.push_back(conjugate(g, s));
          reached.insert(elements_of(PermutationGroup(k + l, gens)));
        }
      }
      EXPECT_EQ(reached, expected);
    }
  }
  EXPECT_GT(pairs, 100);
}

}  // namespace
}  // namespace orbigraph
