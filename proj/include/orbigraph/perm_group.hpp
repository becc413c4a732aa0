#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbigraph/permutation.hpp"

namespace orbigraph {

/// Partition of a point set into blocks. Points outside the domain map to -1.
struct OrbitPartition {
  int domain_size = 0;
  std::vector<int> block_index;
  std::vector<std::vector<int>> blocks;

  std::size_t size() const { return blocks.size(); }
};

/// Base and strong generating set. Levels are built with the smallest
/// non-fixed point as the next base point.
class StabilizerChain {
 public:
  struct Level {
    int base_point = 0;
    std::vector<Permutation> generators;
    // transversal[x] maps base_point to x; empty when x is outside the orbit.
    std::vector<std::optional<Permutation>> transversal;
    std::vector<int> orbit;
  };

  StabilizerChain(int degree, const std::vector<Permutation>& generators);

  int degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<int> base() const;
  std::uint64_t order() const;

  /// Sifts g through the chain. Returns the residue and the level at which
  /// sifting stopped (levels().size() when it went all the way through).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;

  /// Calls `visit` on every group element, in a deterministic order.
  template <typename Visit>
  void for_each_element(Visit&& visit) const;

 private:
  void rebuild_orbit(std::size_t level);
  void run();
  template <typename Visit>
  void visit_from(std::size_t level, const Permutation& prefix, Visit& visit) const;

  int degree_;
  std::vector<Level> levels_;
};

/// A permutation group given by generators. Derived data (chain, element
/// list) is computed once on first use and then shared read-only, so copies
/// are cheap and concurrent reads are safe.
class PermutationGroup {
 public:
  static constexpr std::size_t kDefaultElementCap = 5'000'000;

  PermutationGroup();
  PermutationGroup(int degree, std::vector<Permutation> generators);

  static PermutationGroup trivial(int degree);
  static PermutationGroup symmetric(int degree);
  static PermutationGroup alternating(int degree);
  static PermutationGroup cyclic(int degree);

  int degree() const;
  const std::vector<Permutation>& generators() const;

  std::uint64_t order() const;
  bool contains(const Permutation& p) const;
  const StabilizerChain& chain() const;

  /// Explicit elements (identity first). Throws TooLargeError above `cap`.
  const std::vector<Permutation>& elements(std::size_t cap = kDefaultElementCap) const;
  bool has_element_cache() const;

  OrbitPartition orbits() const;
  OrbitPartition orbits(std::span<const int> domain) const;
  bool is_transitive() const;
  bool is_transitive(std::span<const int> domain) const;
  /// Transitivity on the contiguous range [first, first + count).
  bool is_transitive_on_range(int first, int count) const;

  bool is_subgroup_of(const PermutationGroup& other) const;
  bool same_group(const PermutationGroup& other) const;
  bool normalized_by(const Permutation& g) const;

  /// Image of the action on the invariant range [first, first+count).
  PermutationGroup restrict_to(int first, int count) const;

  bool is_trivial() const;
  std::string to_string() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// True iff some s in Sym(degree) has s G s^-1 = H.
bool are_conjugate_in_symmetric(const PermutationGroup& g, const PermutationGroup& h);

/// A conjugating permutation s with s G s^-1 = H, if any.
std::optional<Permutation> conjugating_element(const PermutationGroup& g,
                                               const PermutationGroup& h);

/// Element-order histogram, (order, count) sorted.
std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_histogram(
    const PermutationGroup& g);

// ---------------------------------------------------------------------------

template <typename Visit>
void StabilizerChain::for_each_element(Visit&& visit) const {
  visit_from(0, Permutation(degree_), visit);
}

template <typename Visit>
void StabilizerChain::visit_from(std::size_t level, const Permutation& prefix,
                                 Visit& visit) const {
  if (level == levels_.size()) {
    visit(prefix);
    return;
  }
  const Level& lv = levels_[level];
  for (int x : lv.orbit) visit_from(level + 1, prefix * *lv.transversal[x], visit);
}

}  // namespace orbigraph
