#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbigraph/caps.hpp"
#include "orbigraph/group_structure.hpp"
#include "orbigraph/perm_group.hpp"

namespace orbigraph {

/// A transitive factor A with its normal subgroups and the quotients A/N
/// that are small enough to matter. Read-only after construction.
class Factor {
 public:
  /// Quotients are built only for kernels of index <= max_quotient_order.
  /// With max_quotient_order == 1 the normal subgroup list is just {A}.
  Factor(PermutationGroup group, std::uint64_t max_quotient_order, const Caps& caps = Caps{});

  const PermutationGroup& group() const { return group_; }
  int kernel_count() const { return static_cast<int>(kernels_.size()); }
  const PermutationGroup& kernel(int i) const { return kernels_[i]; }
  /// nullptr when the index of kernel i exceeds the bound.
  const Quotient* quotient(int i) const { return quotients_[i] ? &*quotients_[i] : nullptr; }
  std::uint64_t index(int i) const { return group_.order() / kernels_[i].order(); }

 private:
  PermutationGroup group_;
  std::vector<PermutationGroup> kernels_;
  std::vector<std::optional<Quotient>> quotients_;
};

/// (N_A, N_B, phi) by kernel index into the two factors; phi maps A/N_A to
/// B/N_B.
struct GoursatTriple {
  int kernel_a = 0;
  int kernel_b = 0;
  GroupIsomorphism phi;
};

/// A group on Omega1 = {0..k-1} and Omega2 = {k..k+l-1}.
struct TwoOrbitGroup {
  int k = 0;
  int l = 0;
  PermutationGroup group;
  std::string provenance;

  int n() const { return k + l; }
};

using KernelPairFilter = std::function<bool(int kernel_a, int kernel_b)>;

/// All triples, or one per class of phi modulo inner automorphisms of B/N_B.
/// Kernel pairs rejected by `keep` are skipped before any isomorphism search.
std::vector<GoursatTriple> goursat_triples(const Factor& a, const Factor& b, bool mod_inner = true,
                                           const Caps& caps = Caps{},
                                           const KernelPairFilter& keep = {});

/// C = {(a,b) : phi(a N_A) = b N_B}, by generators.
TwoOrbitGroup fiber_product(const Factor& a, const Factor& b, const GoursatTriple& t);

std::vector<TwoOrbitGroup> subdirect_products(const PermutationGroup& a, const PermutationGroup& b,
                                              const Caps& caps = Caps{});

}  // namespace orbigraph
