#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orbigraph/perm_group.hpp"

namespace orbigraph {

/// Simple undirected graph on at most 32 vertices, adjacency as bit rows.
class Graph {
 public:
  static constexpr int kMaxVertices = 32;

  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  bool has_edge(int u, int v) const { return (rows_[u] >> v & 1U) != 0; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  std::uint32_t row(int v) const { return rows_[v]; }
  int degree(int v) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  /// Vertex v of this graph becomes vertex p[v].
  Graph relabel(const Permutation& p) const;
  bool is_automorphism(const Permutation& p) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }
  friend bool operator<(const Graph& a, const Graph& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.rows_ < b.rows_;
  }

 private:
  int n_ = 0;
  std::array<std::uint32_t, kMaxVertices> rows_{};
};

/// Orbits of a group on unordered pairs {i, j}, i < j. Ids are assigned in
/// order of each orbit's lexicographically first pair.
struct EdgeOrbitPartition {
  int n = 0;
  int orbit_count = 0;
  std::vector<int> orbit_index;  // indexed by pair_index(i, j)
  std::vector<std::vector<std::pair<int, int>>> orbits;

  static int pair_index(int n, int i, int j);
};

EdgeOrbitPartition edge_orbits(const PermutationGroup& g);

/// Graph for the edge-orbit subset given as a bit mask.
Graph graph_from_subset(const EdgeOrbitPartition& p, std::uint64_t subset);

/// All 2^orbit_count invariant graphs in subset order. Throws TooLargeError
/// when orbit_count exceeds `subset_cap`.
std::vector<Graph> graphs_from_orbits(const EdgeOrbitPartition& p, int subset_cap = 24);

bool is_connected(const Graph& g);

struct CanonicalForm {
  Graph canonical;            // relabeled graph, equal for isomorphic inputs
  std::vector<int> labeling;  // vertex v of the input is vertex labeling[v] of `canonical`
  OrbitPartition aut_orbits;
  std::vector<Permutation> aut_generators;

  std::uint64_t aut_order() const;
};

/// Individualization-refinement with automorphism pruning.
CanonicalForm canonical_form(const Graph& g);

int vertex_orbit_count(const CanonicalForm& cf);
/// Orbits of Aut(G) on the actual edges.
int edge_orbit_count(const Graph& g, const CanonicalForm& cf);
int vertex_orbit_count(const Graph& g);
int edge_orbit_count(const Graph& g);

struct CensusEntry {
  CanonicalForm form;
  int edge_orbits = 0;
  std::string graph6;  // of the canonical graph
};

/// Kept iff connected and Aut(G) has exactly two vertex orbits.
std::optional<CensusEntry> census_filter(const Graph& g);

class Graph6Error : public std::runtime_error {
 public:
  Graph6Error(std::size_t offset, const std::string& what)
      : std::runtime_error("graph6 offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

std::string graph6_encode(const Graph& g);
Graph graph6_decode(std::string_view text);

}  // namespace orbigraph
