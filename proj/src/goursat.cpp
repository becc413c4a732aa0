#include "orbigraph/goursat.hpp"

#include <algorithm>

namespace orbigraph {

Factor::Factor(PermutationGroup group, std::uint64_t max_quotient_order, const Caps& caps)
    : group_(std::move(group)) {
  if (max_quotient_order <= 1) {
    kernels_.push_back(group_);
  } else {
    kernels_ = normal_subgroups(group_, caps);
  }
  for (const auto& n : kernels_) {
    const std::uint64_t idx = group_.order() / n.order();
    if (idx <= max_quotient_order) {
      quotients_.emplace_back(Quotient(group_, n, caps.quotient));
    } else {
      quotients_.emplace_back(std::nullopt);
    }
  }
}

std::vector<GoursatTriple> goursat_triples(const Factor& a, const Factor& b, bool mod_inner,
                                           const Caps& caps, const KernelPairFilter& keep) {
  std::vector<GoursatTriple> out;
  for (int i = 0; i < a.kernel_count(); ++i) {
    const Quotient* qa = a.quotient(i);
    if (qa == nullptr) continue;
    for (int j = 0; j < b.kernel_count(); ++j) {
      const Quotient* qb = b.quotient(j);
      if (qb == nullptr || a.index(i) != b.index(j)) continue;
      if (keep && !keep(i, j)) continue;
      if (!may_be_isomorphic(qa->group(), qb->group())) continue;
      auto isos = mod_inner ? isomorphisms_mod_inner(qa->group(), qb->group(), caps)
                            : isomorphisms(qa->group(), qb->group(), caps);
      for (auto& phi : isos) out.push_back({i, j, std::move(phi)});
    }
  }
  return out;
}

TwoOrbitGroup fiber_product(const Factor& a, const Factor& b, const GoursatTriple& t) {
  const Quotient& qa = *a.quotient(t.kernel_a);
  const Quotient& qb = *b.quotient(t.kernel_b);
  const int k = a.group().degree();
  const int l = b.group().degree();
  std::vector<Permutation> gens;
  for (const auto& x : a.group().generators()) {
    const int coset = t.phi.map[qa.project(x)];
    gens.push_back(x.direct_sum(qb.representative(coset)));
  }
  const Permutation id_a(k);
  for (const auto& y : b.kernel(t.kernel_b).generators()) gens.push_back(id_a.direct_sum(y));
  std::string prov = "|N_A|=" + std::to_string(a.kernel(t.kernel_a).order()) +
                     " |N_B|=" + std::to_string(b.kernel(t.kernel_b).order()) +
                     " |Q|=" + std::to_string(qa.group().order());
  return {k, l, PermutationGroup(k + l, std::move(gens)), std::move(prov)};
}

std::vector<TwoOrbitGroup> subdirect_products(const PermutationGroup& a, const PermutationGroup& b,
                                              const Caps& caps) {
  const std::uint64_t bound = std::min(a.order(), b.order());
  Factor fa(a, bound, caps);
  Factor fb(b, bound, caps);
  std::vector<TwoOrbitGroup> out;
  for (const auto& t : goursat_triples(fa, fb, true, caps)) out.push_back(fiber_product(fa, fb, t));
  return out;
}

}  // namespace orbigraph
