#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "orbigraph/caps.hpp"
#include "orbigraph/perm_group.hpp"

namespace orbigraph {

/// Fixed-size bitset over element indices of an ElementTable.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63) & 1U) != 0; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  bool is_subset_of(const ElementSet& other) const;
  ElementSet& operator|=(const ElementSet& other);
  ElementSet operator&(const ElementSet& other) const;
  std::vector<int> members() const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  std::size_t hash() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

/// A permutation group with its elements enumerated and indexed. Index 0 is
/// the identity. Small groups get a full multiplication table.
class ElementTable {
 public:
  static constexpr std::size_t kTableLimit = 2048;

  explicit ElementTable(const PermutationGroup& group,
                        std::size_t cap = Caps{}.subgroup_lattice);

  const PermutationGroup& group() const { return group_; }
  std::size_t size() const { return elements_.size(); }
  const Permutation& element(int i) const { return elements_[i]; }
  int index_of(const Permutation& p) const;
  int mul(int a, int b) const;
  int inv(int a) const { return inverses_[a]; }
  int conj(int x, int by) const { return mul(mul(by, x), inverses_[by]); }
  std::uint64_t element_order(int a) const { return orders_[a]; }
  const std::vector<int>& generator_indices() const { return generator_indices_; }

  ElementSet closure(const std::vector<int>& gens) const;
  ElementSet closure(const ElementSet& base, const std::vector<int>& extra) const;
  PermutationGroup to_group(const ElementSet& set) const;
  /// Small generating set for an element set that is a subgroup.
  std::vector<int> generators_of(const ElementSet& set) const;
  ElementSet set_of(const PermutationGroup& subgroup) const;
  bool normalizes(int g, const std::vector<int>& subgroup_gens, const ElementSet& subgroup) const;
  ElementSet derived(const ElementSet& set, const std::vector<int>& gens) const;

 private:
  PermutationGroup group_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, int, PermutationHash> index_;
  std::vector<int> inverses_;
  std::vector<std::uint64_t> orders_;
  std::vector<int> table_;
  std::vector<int> generator_indices_;
};

struct LatticeEntry {
  ElementSet members;
  std::vector<int> generators;  // element indices
  std::size_t order = 0;
};

/// Every subgroup of the table's group exactly once, built by cyclic
/// extension (adjoin g normalizing U with g^p in U, p prime) starting from
/// the trivial group and the perfect subgroups. Sorted by order, then by
/// membership bits. Throws TooLargeError when the group exceeds `cap` or the
/// lattice exceeds `max_entries`.
std::vector<LatticeEntry> subgroup_lattice(const ElementTable& table,
                                           std::size_t max_entries = 500'000);

/// Every subgroup of g exactly once; includes the trivial group and g.
std::vector<PermutationGroup> all_subgroups(const PermutationGroup& g,
                                            const Caps& caps = Caps{});

}  // namespace orbigraph
