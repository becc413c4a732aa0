#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbigraph/caps.hpp"
#include "orbigraph/goursat.hpp"

namespace orbigraph {

enum class Decision { minimal, non_minimal, pruned_pre_construction, unknown };

enum class PruneReason {
  lcm,
  witness_derived,
  witness_minimal_normal,
  witness_maximal,
  witness_random,
  essential_kernel_fail,
  diagonal_sym_alt,
  exhausted,
  cap_exceeded,
};

std::string to_string(Decision d);
std::string to_string(PruneReason r);

struct PruneReport {
  Decision decision = Decision::unknown;
  PruneReason reason = PruneReason::exhausted;
  std::optional<PermutationGroup> witness;
};

/// |C| == lcm(k, l): every two-orbit subgroup has order divisible by k and
/// l, so C has no proper one.
bool lcm_shortcut(const TwoOrbitGroup& c);

/// Both kernels trivial and both factors natural Sym (degree >= 3) or Alt
/// (degree >= 4): the diagonal copy of Alt / V4-or-Alt is a proper witness.
bool diagonal_shortcut(const PermutationGroup& a, const PermutationGroup& b,
                       const PermutationGroup& kernel_a, const PermutationGroup& kernel_b);

/// Proper, order divisible by k and l, transitive on both orbits.
bool is_two_orbit_witness(const PermutationGroup& h, const TwoOrbitGroup& c);

/// False iff some proper transitive M < A has N M = A. Exact when |A| fits
/// the lattice cap (transitive maximal subgroups are scanned); above it only
/// heuristic candidates are tried and "essential" is the conservative answer.
bool is_essential_kernel(const PermutationGroup& n, const PermutationGroup& a,
                         const Caps& caps = Caps{});

/// Essential-kernel verdict for every kernel of the factor, sharing the
/// maximal-subgroup computation.
std::vector<bool> essential_kernels(const Factor& f, const Caps& caps = Caps{});

/// Staged test: lcm, derived subgroup, minimal normal subgroups, maximal
/// subgroups. The maximal-subgroup sweep is exact; when it cannot run (cap)
/// the decision is unknown and callers keep the group.
PruneReport is_minimal(const TwoOrbitGroup& c, const Caps& caps = Caps{});

struct PruneStats {
  std::map<std::string, std::uint64_t> counts;

  void record(const PruneReport& r);
  void record(PruneReason r, std::uint64_t times = 1);
  void merge(const PruneStats& other);
};

}  // namespace orbigraph
