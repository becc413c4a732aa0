#include <gtest/gtest.h>

#include <sstream>

#include "orbigraph/catalog.hpp"

namespace orbigraph {
namespace {

Catalog parse(const std::string& text) {
  std::istringstream in(text);
  return parse_catalog(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const CatalogError& e) {
    return e.line();
  }
  return -1;
}

TEST(ComputeTransitiveTest, CountsForSmallDegrees) {
  const std::vector<std::size_t> expected{1, 1, 2, 5, 5, 16};
  for (int d = 1; d <= 6; ++d) {
    EXPECT_EQ(compute_transitive_groups(d).size(), expected[d - 1]) << "degree " << d;
  }
}

TEST(ComputeTransitiveTest, DegreeThreeOrders) {
  auto list = compute_transitive_groups(3);
  ASSERT_EQ(list.size(), 2U);
  EXPECT_EQ(list[0].order, 3U);
  EXPECT_EQ(list[1].order, 6U);
  EXPECT_EQ(list[0].id, "d3#1");
}

TEST(ComputeTransitiveTest, EntriesAreTransitiveAndDeterministic) {
  auto a = compute_transitive_groups(5);
  auto b = compute_transitive_groups(5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].generators, b[i].generators);
    EXPECT_TRUE(a[i].group().is_transitive());
    EXPECT_EQ(a[i].group().order(), a[i].order);
  }
}

TEST(ComputeTransitiveTest, RejectsAboveCap) {
  EXPECT_THROW(compute_transitive_groups(7), TooLargeError);
}

TEST(LoadCatalogTest, ParsesEntriesAndComments) {
  auto cat = parse(
      "# header\n"
      "degree 1\n"
      "group d1#1 order 1  # trivial\n"
      "degree 2\n"
      "group d2#1 order 2\n"
      "(0 1)\n");
  EXPECT_EQ(cat.size(), 2U);
  EXPECT_EQ(cat.degree(1)[0].name, "trivial");
  EXPECT_EQ(cat.degree(2)[0].id, "d2#1");
  EXPECT_EQ(cat.degree(2)[0].generators.size(), 1U);
  EXPECT_EQ(cat.max_degree(), 2);
  EXPECT_THROW(cat.degree(3), std::out_of_range);
}

TEST(LoadCatalogTest, RejectsWithLineNumbers) {
  EXPECT_EQ(error_line("degree 1\ngroup a order 1\ndegree 3\n"), 3);
  EXPECT_EQ(error_line("degree 1\ngroup a order 1\ndegree 2\ngroup a order 2\n"), 4);
  EXPECT_EQ(error_line("degree 1\ngroup a order x\n"), 2);
  EXPECT_EQ(error_line("degree 1\ndegree 2\ngroup b order 2\n(0 5)\n"), 4);
  EXPECT_EQ(error_line("group a order 1\n"), 1);
  EXPECT_EQ(error_line("degree 1\nbogus\n"), 2);
  EXPECT_EQ(error_line("degree 1\n(0)\n"), 2);
}

TEST(LoadCatalogTest, ShippedFileLoads) {
  auto cat = load_catalog(default_catalog_path());
  const std::vector<std::size_t> counts{1, 1, 2, 5, 5, 16, 7, 50, 34, 45, 8, 301};
  ASSERT_EQ(cat.max_degree(), 12);
  for (int d = 1; d <= 12; ++d) EXPECT_EQ(cat.degree(d).size(), counts[d - 1]);
  EXPECT_EQ(cat.checksum().size(), 16U);
}

TEST(VerifyCatalogTest, ShippedLowDegreesPass) {
  auto cat = load_catalog(default_catalog_path());
  std::map<int, std::vector<CatalogEntry>> low;
  for (int d = 1; d <= 7; ++d) low[d] = cat.degree(d);
  auto report = verify_catalog(Catalog(low, "low", ""));
  for (const auto& f : report.failures) ADD_FAILURE() << f;
  EXPECT_EQ(report.counts.at(5), 5U);
}

TEST(VerifyCatalogTest, DetectsPlantedDefects) {
  const std::string base =
      "degree 1\ngroup d1#1 order 1\n"
      "degree 2\ngroup d2#1 order 2\n(0 1)\n"
      "degree 3\ngroup d3#1 order 3\n(0 1 2)\n";
  EXPECT_TRUE(verify_catalog(parse(base + "group d3#2 order 6\n(0 1 2)\n(0 1)\n")).ok());

  auto duplicated = verify_catalog(parse(base + "group d3#2 order 3\n(0 2 1)\n"));
  EXPECT_FALSE(duplicated.ok());
  bool conj_failure = false;
  for (const auto& f : duplicated.failures) conj_failure |= f.find("conjugate") != std::string::npos;
  EXPECT_TRUE(conj_failure);

  auto intransitive = verify_catalog(parse(base + "group d3#2 order 2\n(0 1)\n"));
  bool transitivity_failure = false;
  for (const auto& f : intransitive.failures) {
    transitivity_failure |= f.find("not transitive") != std::string::npos;
  }
  EXPECT_TRUE(transitivity_failure);

  auto wrong_order = verify_catalog(parse(base + "group d3#2 order 5\n(0 1 2)\n(0 1)\n"));
  EXPECT_FALSE(wrong_order.ok());

  auto missing = verify_catalog(parse(base));
  EXPECT_FALSE(missing.ok());
}

}  // namespace
}  // namespace orbigraph
