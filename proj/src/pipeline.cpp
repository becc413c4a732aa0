#include "orbigraph/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "orbigraph/goursat.hpp"
#include "orbigraph/minimality.hpp"
#include "orbigraph/parallel.hpp"

namespace orbigraph {

namespace fs = std::filesystem;
using nlohmann::json;

void StageStats::merge_task(const StageStats& t) {
  tasks += t.tasks;
  kernel_pairs += t.kernel_pairs;
  triples += t.triples;
  products += t.products;
  products_kept += t.products_kept;
  for (const auto& [k, v] : t.pruned) pruned[k] += v;
}

json StageStats::to_json() const {
  return {{"tasks", tasks},
          {"kernel_pairs", kernel_pairs},
          {"triples", triples},
          {"products", products},
          {"products_kept", products_kept},
          {"pruned", pruned},
          {"configurations",
           {{"input", configurations.input},
            {"after_round1", configurations.after_round1},
            {"after_round2", configurations.after_round2}}},
          {"graphs",
           {{"emitted", graphs_emitted}, {"connected", graphs_connected}, {"kept", graphs_kept}}}};
}

StageStats StageStats::from_json(const json& j) {
  StageStats s;
  s.tasks = j.at("tasks");
  s.kernel_pairs = j.at("kernel_pairs");
  s.triples = j.at("triples");
  s.products = j.at("products");
  s.products_kept = j.at("products_kept");
  s.pruned = j.at("pruned").get<std::map<std::string, std::uint64_t>>();
  return s;
}

json TaskResult::to_json() const {
  json cfgs = json::array();
  for (const auto& c : configurations) cfgs.push_back(c.to_text());
  json st = {{"tasks", stats.tasks},           {"kernel_pairs", stats.kernel_pairs},
             {"triples", stats.triples},       {"products", stats.products},
             {"products_kept", stats.products_kept}, {"pruned", stats.pruned}};
  return {{"task", id}, {"k", k}, {"stats", st}, {"configurations", cfgs}, {"incompleteness", incompleteness}};
}

TaskResult TaskResult::from_json(const json& j) {
  TaskResult t;
  t.id = j.at("task");
  t.k = j.at("k");
  t.stats = StageStats::from_json(j.at("stats"));
  for (const auto& c : j.at("configurations")) t.configurations.push_back(OrbitalConfiguration::from_text(c));
  t.incompleteness = j.at("incompleteness").get<std::vector<std::string>>();
  return t;
}

namespace {

struct Task {
  int k = 0, l = 0;
  int a = 0, b = 0;  // entry indices within their degree
  std::string id;
};

// Per catalog entry: normal subgroups, quotients and essential flags.
struct PreparedFactor {
  std::optional<Factor> factor;
  std::vector<bool> essential;
  std::string error;
};

std::vector<Task> make_tasks(const Catalog& cat, int n) {
  std::vector<Task> tasks;
  for (int k = 1; 2 * k <= n; ++k) {
    const int l = n - k;
    const auto& as = cat.degree(k);
    const auto& bs = cat.degree(l);
    for (int i = 0; i < static_cast<int>(as.size()); ++i) {
      // with equal degrees the swapped pair gives block-swapped products
      for (int j = k == l ? i : 0; j < static_cast<int>(bs.size()); ++j) {
        tasks.push_back({k, l, i, j, std::to_string(k) + "+" + std::to_string(l) + ":" + as[i].id + "x" + bs[j].id});
      }
    }
  }
  return tasks;
}

json header_json(const Catalog& cat, const PipelineOptions& o) {
  return {{"n", o.n},
          {"catalog", {{"source", cat.source()}, {"checksum", cat.checksum()}}},
          {"toggles",
           {{"prune_minimality", o.prune_minimality},
            {"prune_essential", o.prune_essential},
            {"dedup_round2", o.dedup_round2}}},
          {"caps", o.caps.to_string()}};
}

class TaskLog {
 public:
  TaskLog(const fs::path& path, bool append) {
    out_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!out_) throw CheckpointError("cannot open checkpoint log " + path.string());
  }
  void write(const json& j) {
    std::lock_guard lock(mutex_);
    out_ << j.dump() << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
  std::mutex mutex_;
};

std::uint64_t max_order(const Catalog& cat, int d) {
  std::uint64_t m = 1;
  for (const auto& e : cat.degree(d)) m = std::max(m, e.order);
  return m;
}

TaskResult run_task(const Task& task, const PreparedFactor& pa, const PreparedFactor& pb,
                    const PipelineOptions& o) {
  TaskResult r;
  r.id = task.id;
  r.k = task.k;
  r.stats.tasks = 1;
  if (!pa.error.empty() || !pb.error.empty()) {
    r.incompleteness.push_back(task.id + ": " + (pa.error.empty() ? pb.error : pa.error));
    return r;
  }
  const Factor& fa = *pa.factor;
  const Factor& fb = *pb.factor;
  std::set<std::string> seen;
  try {
    PruneStats pruned;
    auto keep = [&](int i, int j) {
      ++r.stats.kernel_pairs;
      if (!o.prune_essential) return true;
      if (diagonal_shortcut(fa.group(), fb.group(), fa.kernel(i), fb.kernel(j))) {
        pruned.record(PruneReason::diagonal_sym_alt);
        return false;
      }
      if (!pa.essential[i] || !pb.essential[j]) {
        pruned.record(PruneReason::essential_kernel_fail);
        return false;
      }
      return true;
    };
    const auto triples = goursat_triples(fa, fb, true, o.caps, keep);
    r.stats.triples = triples.size();
    for (const auto& t : triples) {
      TwoOrbitGroup c = fiber_product(fa, fb, t);
      ++r.stats.products;
      if (o.prune_minimality) {
        const PruneReport rep = is_minimal(c, o.caps);
        pruned.record(rep);
        if (rep.decision == Decision::non_minimal) continue;
      }
      ++r.stats.products_kept;
      OrbitalConfiguration cfg = orbital_configuration(c);
      if (seen.insert(signature(cfg)).second) r.configurations.push_back(std::move(cfg));
    }
    r.stats.pruned = pruned.counts;
  } catch (const TooLargeError& e) {
    r.incompleteness.push_back(task.id + ": " + e.what());
  }
  return r;
}

PipelineResult run(const Catalog& cat, const PipelineOptions& o, std::map<std::string, TaskResult> done,
                   TaskLog* log) {
  const auto start = std::chrono::steady_clock::now();
  const int n = o.n;
  const std::vector<Task> tasks = make_tasks(cat, n);

  std::vector<const Task*> pending;
  for (const auto& t : tasks) {
    if (!done.count(t.id)) pending.push_back(&t);
  }

  // factors for every entry that a pending task touches
  std::map<std::pair<int, int>, PreparedFactor> factors;
  for (const Task* t : pending) {
    factors[{t->k, t->a}];
    factors[{t->l, t->b}];
  }
  std::vector<std::pair<const std::pair<int, int>, PreparedFactor>*> factor_list;
  for (auto& f : factors) factor_list.push_back(&f);
  parallel_for(factor_list.size(), o.jobs, [&](std::size_t i) {
    const auto [d, idx] = factor_list[i]->first;
    PreparedFactor& pf = factor_list[i]->second;
    const CatalogEntry& e = cat.degree(d).at(idx);
    const int partner = n - d;
    // a common quotient has order at most the larger partner group's order
    const std::uint64_t bound = (d == 1 || partner == 1) ? 1 : std::min(e.order, max_order(cat, partner));
    try {
      pf.factor.emplace(e.group(), bound, o.caps);
      pf.essential = o.prune_essential ? essential_kernels(*pf.factor, o.caps)
                                       : std::vector<bool>(static_cast<std::size_t>(pf.factor->kernel_count()), true);
    } catch (const TooLargeError& ex) {
      pf.error = e.id + ": " + ex.what();
    }
  });

  auto lap = [last = start]() mutable {
    const auto now = std::chrono::steady_clock::now();
    const double d = std::chrono::duration<double>(now - last).count();
    last = now;
    return d;
  };
  json timings;
  timings["factors"] = lap();

  std::vector<TaskResult> fresh(pending.size());
  parallel_for(pending.size(), o.jobs, [&](std::size_t i) {
    const Task& t = *pending[i];
    fresh[i] = run_task(t, factors.at({t.k, t.a}), factors.at({t.l, t.b}), o);
    if (log != nullptr) log->write(fresh[i].to_json());
  });
  for (auto& r : fresh) done[r.id] = std::move(r);
  timings["tasks"] = lap();

  PipelineResult result;
  StageStats& stats = result.stats;
  std::vector<OrbitalConfiguration> configs;
  std::map<int, std::uint64_t> tasks_per_partition;
  for (const auto& t : tasks) {
    const TaskResult& r = done.at(t.id);
    stats.merge_task(r.stats);
    configs.insert(configs.end(), r.configurations.begin(), r.configurations.end());
    result.incompleteness.insert(result.incompleteness.end(), r.incompleteness.begin(), r.incompleteness.end());
    ++tasks_per_partition[t.k];
  }

  const auto reps = dedup_configurations(configs, o.dedup_round2, &stats.configurations, o.jobs);
  timings["dedup"] = lap();

  // graph expansion, sharded over builders that are merged at the end
  std::vector<EdgeOrbitPartition> parts(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    parts[i] = edge_orbits(configs[reps[i]]);
    if (parts[i].orbit_count > o.caps.edge_orbit_subsets) {
      result.incompleteness.push_back("configuration " + configs[reps[i]].to_text() + ": " +
                                      std::to_string(parts[i].orbit_count) + " edge orbits exceed subset cap");
    }
  }
  const std::size_t shards = std::min<std::size_t>(reps.size(), static_cast<std::size_t>(std::max(1, o.jobs)) * 4);
  std::vector<CensusBuilder> builders(shards, CensusBuilder(n));
  std::vector<std::uint64_t> emitted(shards, 0), connected(shards, 0);
  parallel_for(shards, o.jobs, [&](std::size_t s) {
    for (std::size_t i = s; i < reps.size(); i += shards) {
      const auto& p = parts[i];
      if (p.orbit_count > o.caps.edge_orbit_subsets) continue;
      const std::uint64_t count = std::uint64_t{1} << p.orbit_count;
      emitted[s] += count;
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        Graph g = graph_from_subset(p, mask);
        if (!is_connected(g)) continue;
        ++connected[s];
        builders[s].add(g);
      }
    }
  });
  CensusBuilder all(n);
  for (std::size_t s = 0; s < shards; ++s) {
    all.merge(builders[s]);
    stats.graphs_emitted += emitted[s];
    stats.graphs_connected += connected[s];
  }
  result.census = all.census();
  timings["expansion"] = lap();
  stats.graphs_kept = result.census.graphs.size();

  const CountTable counts = result.census.counts();
  json partitions = json::array();
  for (const auto& [k, c] : tasks_per_partition) partitions.push_back({{"k", k}, {"l", n - k}, {"tasks", c}});
  json m = header_json(cat, o);
  m["n_range"] = {n, n};
  m["workers"] = o.jobs;
  m["partitions"] = partitions;
  m["stages"] = stats.to_json();
  m["incompleteness"] = result.incompleteness;
  json rows = json::object();
  for (const auto& [k, c] : counts.rows) rows[std::to_string(k)] = c;
  m["counts"] = rows;
  m["total"] = counts.total();
  m["timings"] = timings;
  m["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.manifest = std::move(m);
  return result;
}

void check_catalog(const Catalog& cat, int n) {
  if (n < 2 || n > Graph::kMaxVertices) throw std::invalid_argument("n must be in 2.." + std::to_string(Graph::kMaxVertices));
  for (int d = 1; d < n; ++d) {
    if (!cat.has_degree(d)) {
      throw std::invalid_argument("catalog " + cat.source() + " lacks degree " + std::to_string(d) +
                                  "; supply one covering degrees 1.." + std::to_string(n - 1) +
                                  " with --catalog");
    }
  }
}

}  // namespace

fs::path checkpoint_file(const fs::path& dir, int n) { return dir / ("tasks_" + std::to_string(n) + ".jsonl"); }

fs::path find_checkpoint(const fs::path& dir, std::optional<int> n) {
  if (n) {
    fs::path p = checkpoint_file(dir, *n);
    if (!fs::exists(p)) throw CheckpointError("no checkpoint log " + p.string());
    return p;
  }
  std::vector<fs::path> found;
  if (fs::is_directory(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("tasks_", 0) == 0 && e.path().extension() == ".jsonl") found.push_back(e.path());
    }
  }
  if (found.size() != 1) {
    throw CheckpointError("expected one checkpoint log in " + dir.string() + ", found " + std::to_string(found.size()));
  }
  return found.front();
}

PipelineResult enumerate(const Catalog& catalog, const PipelineOptions& options) {
  check_catalog(catalog, options.n);
  std::optional<TaskLog> log;
  if (options.checkpoint_dir) {
    fs::create_directories(*options.checkpoint_dir);
    log.emplace(checkpoint_file(*options.checkpoint_dir, options.n), false);
    log->write({{"header", header_json(catalog, options)}});
  }
  return run(catalog, options, {}, log ? &*log : nullptr);
}

namespace {

struct LogContents {
  json header;
  std::map<std::string, TaskResult> done;
};

LogContents read_log(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read checkpoint log " + path.string());
  LogContents c;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      // a torn final record from an interrupted write is dropped
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw CheckpointError(path.string() + ":" + std::to_string(number) + ": malformed record");
    }
    if (number == 1) {
      if (!j.contains("header")) throw CheckpointError(path.string() + ": missing header");
      c.header = j.at("header");
      continue;
    }
    TaskResult r = TaskResult::from_json(j);
    c.done[r.id] = std::move(r);
  }
  if (c.header.is_null()) throw CheckpointError(path.string() + ": empty checkpoint log");
  return c;
}

PipelineOptions options_from_header(const json& h) {
  PipelineOptions o;
  o.n = h.at("n");
  o.prune_minimality = h.at("toggles").at("prune_minimality");
  o.prune_essential = h.at("toggles").at("prune_essential");
  o.dedup_round2 = h.at("toggles").at("dedup_round2");
  o.caps = Caps::parse(h.at("caps").get<std::string>());
  return o;
}

}  // namespace

PipelineOptions checkpoint_options(const fs::path& log) { return options_from_header(read_log(log).header); }

PipelineResult resume_enumeration(const Catalog& catalog, const fs::path& path, int jobs) {
  LogContents c = read_log(path);
  PipelineOptions o = options_from_header(c.header);
  o.jobs = jobs;
  o.checkpoint_dir = path.parent_path();
  if (c.header.at("catalog").at("checksum") != catalog.checksum()) {
    throw CheckpointError("catalog checksum differs from the one recorded in " + path.string());
  }
  check_catalog(catalog, o.n);
  // rewrite the log without any torn tail before appending
  {
    std::ofstream out(path, std::ios::trunc);
    out << json{{"header", c.header}}.dump() << '\n';
    for (const auto& [id, r] : c.done) out << r.to_json().dump() << '\n';
  }
  TaskLog log(path, true);
  return run(catalog, o, std::move(c.done), &log);
}

void write_outputs(const PipelineResult& r, const fs::path& dir, const std::string& prefix) {
  const fs::path out = prefix.empty() ? dir : dir / prefix;
  fs::create_directories(out);
  const std::string n = std::to_string(r.census.n);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(out / name, std::ios::trunc | std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (out / name).string());
    f << text;
  };
  write("two_orbit_" + n + ".g6", r.census.to_g6());
  write("counts_" + n + ".tsv", r.census.counts().to_tsv());
  if (!r.manifest.is_null()) write("manifest_" + n + ".json", r.manifest.dump(2) + "\n");
}

}  // namespace orbigraph
