#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace orbigraph {

/// Size limits beyond which structures are not materialized. Every routine
/// that hits a cap either falls back to a conservative answer or raises
/// TooLargeError; none silently drops work.
struct Caps {
  std::size_t element_cache = 5'000'000;
  std::size_t subgroup_lattice = 10'000;
  std::size_t normality = 5'000'000;
  std::size_t quotient = 5'000;
  std::size_t isomorphism = 5'000;
  /// Limit on the number of isomorphisms enumerated between two quotients.
  std::size_t isomorphism_count = 2'000'000;
  int edge_orbit_subsets = 24;

  /// Parses "lattice=20000,quotient=100,..." on top of the defaults.
  /// Keys: elements, lattice, normality, quotient, iso, isocount, subsets.
  static Caps parse(std::string_view spec);
  /// Defaults overridden by the ORBIGRAPH_CAPS environment variable.
  static Caps from_env();
  std::string to_string() const;
};

}  // namespace orbigraph
