#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "orbigraph/caps.hpp"
#include "orbigraph/perm_group.hpp"

namespace orbigraph {

/// A finite group given by its multiplication table on ids 0..order-1, with
/// 0 the identity.
class AbstractGroup {
 public:
  AbstractGroup() = default;
  /// Validates the table (identity at 0, Latin square); associativity is
  /// checked only when `check_associativity` is set.
  AbstractGroup(int order, std::vector<int> table, bool check_associativity = false);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverses_[a]; }
  int element_order(int a) const { return element_orders_[a]; }
  const std::vector<int>& table() const { return table_; }

  /// Small generating set, deterministic.
  const std::vector<int>& generators() const { return generators_; }
  /// Sorted (element order, count) pairs.
  std::vector<std::pair<int, int>> order_histogram() const;
  /// Order of the commutator subgroup.
  int derived_order() const;
  bool is_abelian() const;
  /// Subgroup generated by `gens`, as a membership mask.
  std::vector<char> generated(const std::vector<int>& gens) const;

 private:
  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverses_;
  std::vector<int> element_orders_;
  std::vector<int> generators_;
};

struct GroupIsomorphism {
  std::vector<int> map;  // source id -> target id

  friend bool operator==(const GroupIsomorphism&, const GroupIsomorphism&) = default;
};

/// True iff `map` is a bijective homomorphism (checked on all pairs).
bool verify_isomorphism(const AbstractGroup& source, const AbstractGroup& target,
                        const std::vector<int>& map);

/// G/N with a projection from G's elements to coset ids. The coset of the
/// identity is id 0.
class Quotient {
 public:
  Quotient(const PermutationGroup& g, const PermutationGroup& n, std::size_t cap);

  const AbstractGroup& group() const { return group_; }
  /// Coset id of gN; g must be an element of G.
  int project(const Permutation& g) const;
  /// A representative of each coset.
  const Permutation& representative(int coset) const { return reps_[coset]; }

 private:
  Permutation canonical(Permutation g) const;

  PermutationGroup kernel_;
  AbstractGroup group_;
  std::vector<Permutation> reps_;
  std::unordered_map<Permutation, int, PermutationHash> ids_;
};

/// Rejects non-normal N; throws TooLargeError when |G/N| exceeds the cap.
Quotient quotient(const PermutationGroup& g, const PermutationGroup& n,
                  const Caps& caps = Caps{});

/// Smallest normal subgroup of G containing `gens`.
PermutationGroup normal_closure(const PermutationGroup& g, const std::vector<Permutation>& gens);
PermutationGroup derived_subgroup(const PermutationGroup& g);
bool is_normal(const PermutationGroup& g, const PermutationGroup& n);

/// Sym(degree) / Alt(degree) in their natural action, by order and parity.
bool is_natural_symmetric(const PermutationGroup& g);
bool is_natural_alternating(const PermutationGroup& g);

/// All normal subgroups, sorted by order. Throws TooLargeError above the
/// normality cap.
std::vector<PermutationGroup> normal_subgroups(const PermutationGroup& g,
                                               const Caps& caps = Caps{});
std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& g,
                                                       const Caps& caps = Caps{});
/// Maximal proper subgroups. Throws TooLargeError above the lattice cap.
std::vector<PermutationGroup> maximal_subgroups(const PermutationGroup& g,
                                                const Caps& caps = Caps{});

/// All isomorphisms q1 -> q2. Throws TooLargeError when the orders exceed
/// the iso cap or more than `caps.isomorphism_count` maps exist.
std::vector<GroupIsomorphism> isomorphisms(const AbstractGroup& q1, const AbstractGroup& q2,
                                           const Caps& caps = Caps{});
/// One isomorphism per class under post-composition with inner
/// automorphisms of q2.
std::vector<GroupIsomorphism> isomorphisms_mod_inner(const AbstractGroup& q1,
                                                     const AbstractGroup& q2,
                                                     const Caps& caps = Caps{});
/// Cheap necessary condition for q1 ≅ q2.
bool may_be_isomorphic(const AbstractGroup& q1, const AbstractGroup& q2);

}  // namespace orbigraph
