#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbigraph/goursat.hpp"
#include "orbigraph/graph.hpp"

namespace orbigraph {

/// Partition of the ordered pairs (i, j), i != j, into orbitals. Points
/// [0, k) form the first block, [k, n) the second.
struct OrbitalConfiguration {
  int n = 0;
  int k = 0;
  int orbital_count = 0;
  std::vector<int> orbital_index;  // n * n entries, -1 on the diagonal

  int at(int i, int j) const { return orbital_index[static_cast<std::size_t>(i * n + j)]; }
  std::vector<int> orbital_sizes() const;

  /// Compact text form "n k i0,i1,..." used by checkpoints.
  std::string to_text() const;
  static OrbitalConfiguration from_text(const std::string& text);

  friend bool operator==(const OrbitalConfiguration&, const OrbitalConfiguration&) = default;
};

OrbitalConfiguration orbital_configuration(const PermutationGroup& g, int k);
OrbitalConfiguration orbital_configuration(const TwoOrbitGroup& c);

/// Edge orbits of the group, recovered from its orbitals.
EdgeOrbitPartition edge_orbits(const OrbitalConfiguration& cfg);

/// Equal iff the two partitions are the same set of pair sets.
std::string signature(const OrbitalConfiguration& cfg);

struct SchemeIsomorphism {
  std::vector<int> psi;    // vertex map
  std::vector<int> sigma;  // orbital map, c1 ids to c2 ids
};

/// Checks cfg2(psi(i), psi(j)) == sigma(cfg1(i, j)) on every ordered pair.
bool verify_scheme_isomorphism(const OrbitalConfiguration& c1, const OrbitalConfiguration& c2,
                               const SchemeIsomorphism& w);

/// psi keeps both blocks in place, or swaps them when the blocks have equal
/// size.
std::optional<SchemeIsomorphism> schemes_isomorphic(const OrbitalConfiguration& c1,
                                                    const OrbitalConfiguration& c2);

struct DedupStats {
  std::uint64_t input = 0;
  std::uint64_t after_round1 = 0;
  std::uint64_t after_round2 = 0;
};

/// Indices into `configs` of one representative per class, in signature
/// order. The representative of a class is its smallest signature. With
/// round2 off only exact duplicates are removed.
std::vector<std::size_t> dedup_configurations(const std::vector<OrbitalConfiguration>& configs,
                                              bool round2 = true, DedupStats* stats = nullptr,
                                              int jobs = 1);

}  // namespace orbigraph
