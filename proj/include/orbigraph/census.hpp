#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbigraph/graph.hpp"

namespace orbigraph {

/// Graph counts by number of edge orbits for one order n.
struct CountTable {
  int n = 0;
  std::map<int, std::uint64_t> rows;

  std::uint64_t total() const;
  /// "k<TAB>count" per nonempty row, then "total<TAB>count".
  std::string to_tsv() const;
  static CountTable from_tsv(int n, const std::string& text);

  friend bool operator==(const CountTable&, const CountTable&) = default;
};

/// Connected graphs whose automorphism group has two vertex orbits, by
/// canonical graph6 line.
struct Census {
  int n = 0;
  std::map<std::string, int> graphs;  // graph6 -> edge orbit count

  CountTable counts() const;
  /// Sorted graph6 lines, newline terminated.
  std::string to_g6() const;
};

/// Accumulates graphs, deduplicating by canonical form before the costlier
/// orbit checks. Not thread safe; merge one per worker.
class CensusBuilder {
 public:
  explicit CensusBuilder(int n) : census_{n, {}} {}

  /// Returns true when g was a new isomorphism class.
  bool add(const Graph& g);
  void merge(const CensusBuilder& other);
  const Census& census() const { return census_; }
  std::uint64_t classes_seen() const { return seen_.size(); }

 private:
  Census census_;
  std::set<Graph> seen_;  // canonical graphs, kept or not
};

/// Counts from the reference table for 3 <= n <= 13.
std::optional<CountTable> golden_counts(int n);

/// Rows k, columns n, in the reference orientation.
std::string render_table(const std::vector<CountTable>& columns);

}  // namespace orbigraph
