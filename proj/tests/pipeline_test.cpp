#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <unistd.h>

#include "orbigraph/oracle.hpp"
#include "orbigraph/pipeline.hpp"

namespace orbigraph {
namespace {

namespace fs = std::filesystem;

const Catalog& catalog() {
  static const Catalog cat = load_catalog(default_catalog_path());
  return cat;
}

PipelineOptions opts(int n, int jobs = 1) {
  PipelineOptions o;
  o.n = n;
  o.jobs = jobs;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("orbigraph_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

nlohmann::json without_timings(nlohmann::json m) {
  m.erase("timings");
  m.erase("elapsed_seconds");
  m.erase("workers");
  return m;
}

TEST(CountTableTest, TsvRoundTripAndTotals) {
  CountTable t{6, {{1, 2}, {2, 9}, {3, 6}, {4, 1}}};
  EXPECT_EQ(t.total(), 18U);
  EXPECT_EQ(t.to_tsv(), "1\t2\n2\t9\n3\t6\n4\t1\ntotal\t18\n");
  EXPECT_EQ(CountTable::from_tsv(6, t.to_tsv()), t);
  EXPECT_THROW(CountTable::from_tsv(6, "1\t2\ntotal\t3\n"), std::invalid_argument);
}

TEST(GoldenTest, ColumnsSumToTotals) {
  const std::vector<std::uint64_t> totals{1, 3, 6, 36, 19, 144, 84, 192, 103, 1362, 238};
  for (int n = 3; n <= 13; ++n) EXPECT_EQ(golden_counts(n)->total(), totals[n - 3]) << n;
  EXPECT_FALSE(golden_counts(2).has_value());
  EXPECT_FALSE(golden_counts(14).has_value());
  EXPECT_EQ(golden_counts(10)->rows, (std::map<int, std::uint64_t>{{1, 5}, {2, 43}, {3, 74}, {4, 52}, {5, 17}, {6, 1}}));
}

TEST(GoldenTest, TableHasKRowsAndNColumns) {
  auto text = render_table({*golden_counts(3), *golden_counts(4)});
  EXPECT_EQ(text,
            "   k\\n       3       4\n"
            "     1       1       1\n"
            "     2       0       2\n"
            " total       1       3\n");
}

TEST(OracleTest, SmallCensuses) {
  EXPECT_EQ(brute_force_census(3).counts().total(), 1U);
  EXPECT_EQ(brute_force_census(4).counts().rows, (std::map<int, std::uint64_t>{{1, 1}, {2, 2}}));
  EXPECT_EQ(brute_force_census(5).counts().total(), 6U);
  // cross-checked with nauty over all graphs on 6 vertices
  EXPECT_EQ(brute_force_census(6, 2).counts().rows,
            (std::map<int, std::uint64_t>{{1, 2}, {2, 9}, {3, 6}, {4, 1}}));
  EXPECT_THROW(brute_force_census(8), std::invalid_argument);
}

TEST(PipelineTest, PathOnThreeVertices) {
  auto r = enumerate(catalog(), opts(3));
  ASSERT_EQ(r.census.graphs.size(), 1U);
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  EXPECT_EQ(r.census.graphs.begin()->first, graph6_encode(canonical_form(p3).canonical));
  EXPECT_EQ(r.census.graphs.begin()->second, 1);
  EXPECT_TRUE(r.complete());
}

TEST(PipelineTest, MatchesOracleUpToSix) {
  for (int n = 3; n <= 6; ++n) {
    auto r = enumerate(catalog(), opts(n));
    auto d = compare_census(r.census, brute_force_census(n));
    EXPECT_TRUE(d.empty()) << "n=" << n;
  }
}

TEST(PipelineTest, ManifestRecordsEveryPartition) {
  auto r = enumerate(catalog(), opts(7));
  const auto& parts = r.manifest.at("partitions");
  ASSERT_EQ(parts.size(), 3U);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(parts[k - 1].at("k"), k);
    EXPECT_EQ(parts[k - 1].at("l"), 7 - k);
    EXPECT_GT(parts[k - 1].at("tasks").get<int>(), 0);
  }
  EXPECT_EQ(r.manifest.at("total"), 19);
  EXPECT_EQ(r.manifest.at("catalog").at("checksum"), catalog().checksum());
  const auto& st = r.manifest.at("stages");
  EXPECT_EQ(st.at("graphs").at("kept"), 19);
  EXPECT_LE(st.at("configurations").at("after_round2").get<int>(),
            st.at("configurations").at("after_round1").get<int>());
  EXPECT_TRUE(r.manifest.at("incompleteness").empty());
}

// All eight combinations of the pruning and dedup switches give one census.
TEST(PipelineTest, ToggleEquivalenceUpToEight) {
  for (int n = 3; n <= 8; ++n) {
    std::optional<std::string> reference;
    for (int mask = 0; mask < 8; ++mask) {
      PipelineOptions o = opts(n);
      o.prune_minimality = (mask & 1) == 0;
      o.prune_essential = (mask & 2) == 0;
      o.dedup_round2 = (mask & 4) == 0;
      auto r = enumerate(catalog(), o);
      EXPECT_TRUE(r.complete());
      const std::string g6 = r.census.to_g6();
      if (!reference) reference = g6;
      EXPECT_EQ(g6, *reference) << "n=" << n << " toggles " << mask;
    }
  }
}

TEST(PipelineTest, ScheduleIndependent) {
  auto a = enumerate(catalog(), opts(8, 1));
  auto b = enumerate(catalog(), opts(8, 4));
  EXPECT_EQ(a.census.to_g6(), b.census.to_g6());
  EXPECT_EQ(without_timings(a.manifest), without_timings(b.manifest));
}

TEST(PipelineTest, SubsetCapIsAnIncompletenessEvent) {
  PipelineOptions o = opts(6);
  o.caps.edge_orbit_subsets = 2;
  auto r = enumerate(catalog(), o);
  EXPECT_FALSE(r.complete());
  EXPECT_FALSE(r.manifest.at("incompleteness").empty());
}

TEST(PipelineTest, MissingCatalogDegreeIsRejected) {
  std::istringstream text("degree 1\ngroup d1#1 order 1\n");
  const Catalog small = parse_catalog(text, "inline");
  EXPECT_THROW(enumerate(small, opts(5)), std::invalid_argument);
}

TEST(PipelineTest, OutputsAreWritten) {
  auto dir = scratch("out");
  auto r = enumerate(catalog(), opts(5));
  write_outputs(r, dir);
  EXPECT_EQ(slurp(dir / "two_orbit_5.g6"), r.census.to_g6());
  EXPECT_EQ(slurp(dir / "counts_5.tsv"), "1\t2\n2\t4\ntotal\t6\n");
  auto m = nlohmann::json::parse(slurp(dir / "manifest_5.json"));
  EXPECT_EQ(m.at("n_range"), (nlohmann::json{5, 5}));
  write_outputs(r, dir, "oracle");
  EXPECT_TRUE(fs::exists(dir / "oracle" / "counts_5.tsv"));
  fs::remove_all(dir);
}

TEST(CheckpointTest, ResumeAfterInterruptionGivesSameOutputs) {
  auto dir = scratch("ckpt");
  PipelineOptions o = opts(8);
  o.checkpoint_dir = dir;
  auto full = enumerate(catalog(), o);
  const fs::path log = checkpoint_file(dir, 8);
  ASSERT_TRUE(fs::exists(log));
  EXPECT_EQ(find_checkpoint(dir), log);

  // keep the header and a third of the records, then a torn line
  std::vector<std::string> lines;
  {
    std::ifstream in(log);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  ASSERT_GT(lines.size(), 4U);
  {
    std::ofstream out(log, std::ios::trunc);
    for (std::size_t i = 0; i < 1 + (lines.size() - 1) / 3; ++i) out << lines[i] << '\n';
    out << lines.back().substr(0, lines.back().size() / 2);
  }
  EXPECT_EQ(checkpoint_options(log).n, 8);
  auto resumed = resume_enumeration(catalog(), log, 2);
  EXPECT_EQ(resumed.census.to_g6(), full.census.to_g6());
  EXPECT_EQ(resumed.census.counts().to_tsv(), full.census.counts().to_tsv());
  EXPECT_EQ(without_timings(resumed.manifest), without_timings(full.manifest));

  // a finished log resumes to the same result without new work
  auto again = resume_enumeration(catalog(), log, 1);
  EXPECT_EQ(again.census.to_g6(), full.census.to_g6());
  fs::remove_all(dir);
}

TEST(CheckpointTest, RejectsForeignCatalogAndMissingLog) {
  auto dir = scratch("ckpt2");
  EXPECT_THROW(find_checkpoint(dir), CheckpointError);
  EXPECT_THROW(find_checkpoint(dir, 5), CheckpointError);
  PipelineOptions o = opts(4);
  o.checkpoint_dir = dir;
  enumerate(catalog(), o);
  Catalog other = computed_catalog(6);
  EXPECT_THROW(resume_enumeration(other, checkpoint_file(dir, 4), 1), CheckpointError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace orbigraph
