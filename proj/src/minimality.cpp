#include "orbigraph/minimality.hpp"

#include <numeric>
#include <random>

#include "orbigraph/group_structure.hpp"

namespace orbigraph {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::minimal: return "minimal";
    case Decision::non_minimal: return "non-minimal";
    case Decision::pruned_pre_construction: return "pruned-pre-construction";
    case Decision::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(PruneReason r) {
  switch (r) {
    case PruneReason::lcm: return "lcm";
    case PruneReason::witness_derived: return "witness-derived";
    case PruneReason::witness_minimal_normal: return "witness-minimal-normal";
    case PruneReason::witness_maximal: return "witness-maximal";
    case PruneReason::witness_random: return "witness-random";
    case PruneReason::essential_kernel_fail: return "essential-kernel-fail";
    case PruneReason::diagonal_sym_alt: return "diagonal-sym-alt";
    case PruneReason::exhausted: return "exhausted";
    case PruneReason::cap_exceeded: return "cap-exceeded";
  }
  return "?";
}

bool lcm_shortcut(const TwoOrbitGroup& c) {
  return c.group.order() == std::lcm(static_cast<std::uint64_t>(c.k), static_cast<std::uint64_t>(c.l));
}

namespace {

bool natural_sym_or_alt(const PermutationGroup& g) {
  const int d = g.degree();
  return (d >= 3 && is_natural_symmetric(g)) || (d >= 4 && is_natural_alternating(g));
}

PermutationGroup join(const PermutationGroup& a, const PermutationGroup& b) {
  std::vector<Permutation> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return {a.degree(), gens};
}

Permutation random_element(const PermutationGroup& g, std::mt19937_64& rng) {
  Permutation x(g.degree());
  for (const auto& level : g.chain().levels()) {
    const int pt = level.orbit[rng() % level.orbit.size()];
    x = x * *level.transversal[pt];
  }
  return x;
}

bool proper_transitive(const PermutationGroup& m, const PermutationGroup& a) {
  return m.order() < a.order() && m.is_transitive();
}

// Cheap proper transitive subgroups of A to try as N M = A witnesses.
std::vector<PermutationGroup> heuristic_candidates(const PermutationGroup& a) {
  std::vector<PermutationGroup> out;
  const int d = a.degree();
  if (is_natural_symmetric(a) && d >= 3) out.push_back(PermutationGroup::alternating(d));
  PermutationGroup derived = derived_subgroup(a);
  if (proper_transitive(derived, a)) out.push_back(derived);
  std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(d));
  for (int attempt = 0; attempt < 48; ++attempt) {
    Permutation x = random_element(a, rng);
    PermutationGroup m = attempt % 3 == 0 ? PermutationGroup(d, {x})
                                          : PermutationGroup(d, {x, random_element(a, rng)});
    if (proper_transitive(m, a)) out.push_back(std::move(m));
  }
  return out;
}

// Every transitive maximal subgroup; empty when the lattice is over the cap.
std::vector<PermutationGroup> exact_candidates(const PermutationGroup& a, const Caps& caps) {
  std::vector<PermutationGroup> out;
  if (a.order() > caps.subgroup_lattice) return out;
  for (auto& m : maximal_subgroups(a, caps)) {
    if (m.is_transitive()) out.push_back(std::move(m));
  }
  return out;
}

bool has_supplement(const PermutationGroup& n, const PermutationGroup& a,
                    const std::vector<PermutationGroup>& candidates) {
  if (n.is_trivial()) return false;
  for (const auto& m : candidates) {
    if (join(n, m).order() == a.order()) return true;
  }
  return false;
}

}  // namespace

bool diagonal_shortcut(const PermutationGroup& a, const PermutationGroup& b,
                       const PermutationGroup& kernel_a, const PermutationGroup& kernel_b) {
  return kernel_a.is_trivial() && kernel_b.is_trivial() && natural_sym_or_alt(a) &&
         natural_sym_or_alt(b);
}

bool is_two_orbit_witness(const PermutationGroup& h, const TwoOrbitGroup& c) {
  const std::uint64_t order = h.order();
  if (order >= c.group.order()) return false;
  if (order % static_cast<std::uint64_t>(c.k) != 0 || order % static_cast<std::uint64_t>(c.l) != 0) {
    return false;
  }
  return h.is_transitive_on_range(0, c.k) && h.is_transitive_on_range(c.k, c.l);
}

bool is_essential_kernel(const PermutationGroup& n, const PermutationGroup& a, const Caps& caps) {
  if (n.is_trivial()) return true;
  if (has_supplement(n, a, heuristic_candidates(a))) return false;
  return !has_supplement(n, a, exact_candidates(a, caps));
}

std::vector<bool> essential_kernels(const Factor& f, const Caps& caps) {
  std::vector<bool> out(f.kernel_count(), true);
  bool any_nontrivial = false;
  for (int i = 0; i < f.kernel_count(); ++i) any_nontrivial |= !f.kernel(i).is_trivial();
  if (!any_nontrivial) return out;
  auto candidates = heuristic_candidates(f.group());
  for (int i = 0; i < f.kernel_count(); ++i) {
    if (proper_transitive(f.kernel(i), f.group())) candidates.push_back(f.kernel(i));
  }
  bool unresolved = false;
  for (int i = 0; i < f.kernel_count(); ++i) {
    out[i] = !has_supplement(f.kernel(i), f.group(), candidates);
    unresolved |= out[i] && !f.kernel(i).is_trivial();
  }
  // the exact sweep can only turn "essential" into "not essential"
  if (unresolved) {
    const auto exact = exact_candidates(f.group(), caps);
    for (int i = 0; i < f.kernel_count(); ++i) {
      if (out[i]) out[i] = !has_supplement(f.kernel(i), f.group(), exact);
    }
  }
  return out;
}

PruneReport is_minimal(const TwoOrbitGroup& c, const Caps& caps) {
  if (lcm_shortcut(c)) return {Decision::minimal, PruneReason::lcm, std::nullopt};

  PermutationGroup derived = derived_subgroup(c.group);
  if (is_two_orbit_witness(derived, c)) {
    return {Decision::non_minimal, PruneReason::witness_derived, derived};
  }
  const std::uint64_t order = c.group.order();
  if (order <= caps.normality) {
    for (auto& m : minimal_normal_subgroups(c.group, caps)) {
      if (is_two_orbit_witness(m, c)) {
        return {Decision::non_minimal, PruneReason::witness_minimal_normal, std::move(m)};
      }
    }
  }
  // random two-generator subgroups often already are witnesses
  std::mt19937_64 rng(0x2b17 + order);
  for (int attempt = 0; attempt < 16; ++attempt) {
    PermutationGroup h(c.n(), {random_element(c.group, rng), random_element(c.group, rng)});
    if (is_two_orbit_witness(h, c)) return {Decision::non_minimal, PruneReason::witness_random, std::move(h)};
  }
  if (order > caps.subgroup_lattice) {
    return {Decision::unknown, PruneReason::cap_exceeded, std::nullopt};
  }
  // every proper two-orbit subgroup lies in a maximal one, which is then a
  // two-orbit subgroup too, so this sweep decides minimality
  for (auto& m : maximal_subgroups(c.group, caps)) {
    if (is_two_orbit_witness(m, c)) {
      return {Decision::non_minimal, PruneReason::witness_maximal, std::move(m)};
    }
  }
  return {Decision::minimal, PruneReason::exhausted, std::nullopt};
}

void PruneStats::record(const PruneReport& r) { record(r.reason); }

void PruneStats::record(PruneReason r, std::uint64_t times) { counts[to_string(r)] += times; }

void PruneStats::merge(const PruneStats& other) {
  for (const auto& [k, v] : other.counts) counts[k] += v;
}

}  // namespace orbigraph
