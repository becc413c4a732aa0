#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbigraph/caps.hpp"
#include "orbigraph/catalog.hpp"
#include "orbigraph/census.hpp"
#include "orbigraph/orbital.hpp"

namespace orbigraph {

struct PipelineOptions {
  int n = 0;
  int jobs = 1;
  bool prune_minimality = true;
  bool prune_essential = true;
  bool dedup_round2 = true;
  Caps caps;
  /// Append-only task log; resumable with resume_enumeration.
  std::optional<std::filesystem::path> checkpoint_dir;
};

/// Statistics that do not depend on scheduling.
struct StageStats {
  std::uint64_t tasks = 0;
  std::uint64_t kernel_pairs = 0;
  std::uint64_t triples = 0;
  std::uint64_t products = 0;
  std::uint64_t products_kept = 0;
  std::map<std::string, std::uint64_t> pruned;  // by reason
  DedupStats configurations;
  std::uint64_t graphs_emitted = 0;
  std::uint64_t graphs_connected = 0;
  std::uint64_t graphs_kept = 0;

  void merge_task(const StageStats& t);
  nlohmann::json to_json() const;
  static StageStats from_json(const nlohmann::json& j);
};

/// One (partition, A, B) unit of work.
struct TaskResult {
  std::string id;
  int k = 0;
  StageStats stats;
  std::vector<OrbitalConfiguration> configurations;
  std::vector<std::string> incompleteness;

  nlohmann::json to_json() const;
  static TaskResult from_json(const nlohmann::json& j);
};

struct PipelineResult {
  Census census;
  StageStats stats;
  std::vector<std::string> incompleteness;
  nlohmann::json manifest;

  bool complete() const { return incompleteness.empty(); }
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every partition n = k + l with 1 <= k <= l, through group pairs,
/// subdirect products, pruning, orbital dedup and graph expansion.
PipelineResult enumerate(const Catalog& catalog, const PipelineOptions& options);

/// Continues the run logged in `log`; the catalog must match the logged
/// checksum. Outputs equal those of an uninterrupted run.
PipelineResult resume_enumeration(const Catalog& catalog, const std::filesystem::path& log, int jobs);

/// Writes two_orbit_<n>.g6, counts_<n>.tsv and manifest_<n>.json.
void write_outputs(const PipelineResult& r, const std::filesystem::path& dir, const std::string& prefix = "");

/// Path of the task log for order n inside a checkpoint directory.
std::filesystem::path checkpoint_file(const std::filesystem::path& dir, int n);

/// The task log in `dir`; with n unset there must be exactly one.
std::filesystem::path find_checkpoint(const std::filesystem::path& dir, std::optional<int> n = std::nullopt);

/// Options recorded in a task log header.
PipelineOptions checkpoint_options(const std::filesystem::path& log);

}  // namespace orbigraph
