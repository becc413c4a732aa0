#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const fs::path capture = fs::temp_directory_path() / ("orbigraph_cli_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = env + " " ORBIGRAPH_CLI " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture);
  std::ostringstream s;
  s << in.rdbuf();
  r.out = s.str();
  fs::remove(capture);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("orbigraph_cli_dir_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return "--out " + (dir_ / sub).string(); }
  fs::path dir_;
};

TEST_F(CliTest, EnumerateWritesOutputs) {
  auto r = run("enumerate --n 5 " + out());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(dir_ / "counts_5.tsv"), "1\t2\n2\t4\ntotal\t6\n");
  auto g6 = slurp(dir_ / "two_orbit_5.g6");
  EXPECT_EQ(std::count(g6.begin(), g6.end(), '\n'), 6);
  auto m = nlohmann::json::parse(slurp(dir_ / "manifest_5.json"));
  EXPECT_EQ(m.at("total"), 6);
  EXPECT_EQ(m.at("workers"), 1);
  // enumerate is the default subcommand
  EXPECT_EQ(run("--n 4 " + out("b")).code, 0);
  EXPECT_EQ(slurp(dir_ / "b" / "counts_4.tsv"), "1\t1\n2\t2\ntotal\t3\n");
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run("enumerate " + out()).code, 1);
  EXPECT_EQ(run("enumerate --n 5 --jobs 0 " + out()).code, 1);
  EXPECT_EQ(run("enumerate --n 5 --bogus " + out()).code, 1);
  EXPECT_EQ(run("enumerate --n 5 --catalog /nonexistent/catalog.txt " + out()).code, 1);
  EXPECT_EQ(run("verify --n 9 " + out()).code, 1);
  EXPECT_EQ(run("resume --checkpoint " + (dir_ / "none").string() + " " + out()).code, 1);
  EXPECT_EQ(run("enumerate --n 5 " + out(), "ORBIGRAPH_CAPS=nonsense=3").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, CapsFromEnvironmentCauseIncompleteness) {
  auto r = run("enumerate --n 6 " + out(), "ORBIGRAPH_CAPS=subsets=2");
  EXPECT_EQ(r.code, 2) << r.out;
  auto m = nlohmann::json::parse(slurp(dir_ / "manifest_6.json"));
  EXPECT_FALSE(m.at("incompleteness").empty());
  EXPECT_NE(m.at("caps").get<std::string>().find("subsets=2"), std::string::npos);
}

TEST_F(CliTest, VerifySmallN) {
  auto r = run("verify --n 5 --jobs 2 " + out());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("oracle equivalence n=5: ok"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "oracle" / "counts_5.tsv"), slurp(dir_ / "counts_5.tsv"));
}

TEST_F(CliTest, TableOrientation) {
  auto r = run("table --golden --range 3-5");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("   k\\n       3       4       5\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(" total       1       3       6\n"), std::string::npos);
  auto c = run("table --range 4-5");
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("     2       2       4\n"), std::string::npos) << c.out;
}

TEST_F(CliTest, ResumeReproducesOutputs) {
  const std::string ck = "--checkpoint " + (dir_ / "ck").string();
  ASSERT_EQ(run("enumerate --n 7 " + ck + " " + out("a")).code, 0);
  ASSERT_EQ(run("resume --jobs 2 " + ck + " " + out("b")).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "two_orbit_7.g6"), slurp(dir_ / "b" / "two_orbit_7.g6"));
  EXPECT_EQ(slurp(dir_ / "a" / "counts_7.tsv"), slurp(dir_ / "b" / "counts_7.tsv"));
}

}  // namespace
