// Command line front end: enumerate, resume, table, verify.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "orbigraph/catalog.hpp"
#include "orbigraph/oracle.hpp"
#include "orbigraph/pipeline.hpp"

namespace fs = std::filesystem;
using namespace orbigraph;

namespace {

constexpr int kUsageError = 1;
constexpr int kIncomplete = 2;
constexpr int kVerifyFailed = 3;

struct Settings {
  int n = 0;
  int jobs = 1;
  std::string catalog;
  bool no_prune_minimality = false;
  bool no_prune_essential = false;
  bool no_dedup_round2 = false;
  std::string checkpoint;
  std::string out = ".";
  std::string range;
  bool golden = false;
};

Catalog open_catalog(const Settings& s) {
  return load_catalog(s.catalog.empty() ? default_catalog_path() : fs::path(s.catalog));
}

PipelineOptions options_for(const Settings& s, int n) {
  PipelineOptions o;
  o.n = n;
  o.jobs = s.jobs;
  o.prune_minimality = !s.no_prune_minimality;
  o.prune_essential = !s.no_prune_essential;
  o.dedup_round2 = !s.no_dedup_round2;
  o.caps = Caps::from_env();
  if (!s.checkpoint.empty()) o.checkpoint_dir = s.checkpoint;
  return o;
}

void report(const PipelineResult& r, const fs::path& out) {
  std::cerr << "n=" << r.census.n << ": " << r.census.graphs.size() << " graphs, "
            << r.stats.configurations.after_round2 << " configurations, "
            << r.manifest.value("elapsed_seconds", 0.0) << " s; wrote " << out.string() << "\n";
  for (const auto& e : r.incompleteness) std::cerr << "incomplete: " << e << "\n";
}

int finish(const PipelineResult& r) { return r.complete() ? 0 : kIncomplete; }

int cmd_enumerate(const Settings& s) {
  if (s.n < 2) throw std::invalid_argument("--n is required (n >= 2)");
  const Catalog cat = open_catalog(s);
  PipelineResult r = enumerate(cat, options_for(s, s.n));
  write_outputs(r, s.out);
  report(r, s.out);
  return finish(r);
}

int cmd_resume(const Settings& s) {
  if (s.checkpoint.empty()) throw std::invalid_argument("resume needs --checkpoint DIR");
  const fs::path log = find_checkpoint(s.checkpoint, s.n > 0 ? std::optional<int>(s.n) : std::nullopt);
  const Catalog cat = open_catalog(s);
  PipelineResult r = resume_enumeration(cat, log, s.jobs);
  write_outputs(r, s.out);
  report(r, s.out);
  return finish(r);
}

std::pair<int, int> parse_range(const std::string& text) {
  int lo = 0, hi = 0;
  char dash = 0;
  std::istringstream in(text);
  if (!(in >> lo)) throw std::invalid_argument("bad range '" + text + "', expected A-B");
  if (in >> dash) {
    if (dash != '-' || !(in >> hi)) throw std::invalid_argument("bad range '" + text + "', expected A-B");
  } else {
    hi = lo;
  }
  if (lo < 2 || hi < lo) throw std::invalid_argument("bad range '" + text + "'");
  return {lo, hi};
}

int cmd_table(const Settings& s) {
  const auto [lo, hi] = parse_range(s.range.empty() ? std::to_string(s.n) : s.range);
  std::vector<CountTable> cols;
  bool complete = true;
  std::optional<Catalog> cat;
  for (int n = lo; n <= hi; ++n) {
    if (s.golden) {
      auto g = golden_counts(n);
      if (!g) throw std::invalid_argument("no reference counts for n=" + std::to_string(n));
      cols.push_back(*g);
      continue;
    }
    if (!cat) cat = open_catalog(s);
    PipelineOptions o = options_for(s, n);
    o.checkpoint_dir.reset();
    PipelineResult r = enumerate(*cat, o);
    complete &= r.complete();
    for (const auto& e : r.incompleteness) std::cerr << "incomplete: " << e << "\n";
    cols.push_back(r.census.counts());
  }
  std::cout << render_table(cols);
  return complete ? 0 : kIncomplete;
}

int cmd_verify(const Settings& s) {
  if (s.n < 3 || s.n > 7) throw std::invalid_argument("verify needs 3 <= --n <= 7");
  const Catalog cat = open_catalog(s);
  PipelineOptions o = options_for(s, s.n);
  o.checkpoint_dir.reset();
  PipelineResult r = enumerate(cat, o);
  write_outputs(r, s.out);
  Census oracle = brute_force_census(s.n, s.jobs);
  PipelineResult oracle_result;
  oracle_result.census = oracle;
  write_outputs(oracle_result, s.out, "oracle");

  bool ok = true;
  CensusDiff d = compare_census(r.census, oracle);
  for (const auto& g : d.only_in_first) std::cout << "pipeline only: " << g << "\n";
  for (const auto& g : d.only_in_second) std::cout << "oracle only: " << g << "\n";
  for (const auto& g : d.bucket_mismatch) std::cout << "edge orbit count differs: " << g << "\n";
  std::cout << "oracle equivalence n=" << s.n << ": " << (d.empty() ? "ok" : "FAILED") << "\n";
  ok &= d.empty();

  const CountTable got = r.census.counts();
  const CountTable want = *golden_counts(s.n);
  const bool golden_ok = got == want;
  std::cout << "reference counts n=" << s.n << ": " << (golden_ok ? "ok" : "FAILED") << "\n";
  if (!golden_ok) std::cout << render_table({want, got});
  ok &= golden_ok;
  if (!r.complete()) return kIncomplete;
  return ok ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate connected graphs whose automorphism group has two vertex orbits"};
  Settings s;
  app.add_option("--n", s.n, "Number of vertices");
  app.add_option("--jobs", s.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--catalog", s.catalog, "Transitive group catalog file");
  app.add_flag("--no-prune-minimality", s.no_prune_minimality, "Keep non-minimal subdirect products");
  app.add_flag("--no-prune-essential", s.no_prune_essential, "Skip essential-kernel and diagonal pre-pruning");
  app.add_flag("--no-dedup-round2", s.no_dedup_round2, "Only remove exact duplicate orbital configurations");
  app.add_option("--checkpoint", s.checkpoint, "Checkpoint directory");
  app.add_option("--out", s.out, "Output directory");

  auto* en = app.add_subcommand("enumerate", "Run the census for one n (default)");
  auto* re = app.add_subcommand("resume", "Finish a checkpointed run");
  auto* ta = app.add_subcommand("table", "Print counts by edge orbits for a range of n");
  ta->add_option("--range", s.range, "Range A-B of n");
  ta->add_flag("--golden", s.golden, "Print the reference counts instead of computing");
  auto* ve = app.add_subcommand("verify", "Compare against brute force and reference counts (n <= 7)");
  for (auto* sub : {en, re, ta, ve}) sub->fallthrough();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*re) return cmd_resume(s);
    if (*ta) return cmd_table(s);
    if (*ve) return cmd_verify(s);
    return cmd_enumerate(s);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const CatalogError& e) {
    std::cerr << "catalog error: " << e.what() << "\n";
    return kUsageError;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
