#include "orbigraph/oracle.hpp"

#include <bit>
#include <stdexcept>

#include "orbigraph/parallel.hpp"

namespace orbigraph {

Census brute_force_census(int n, int jobs) {
  if (n < 1 || n > 7) throw std::invalid_argument("brute force census needs 1 <= n <= 7");
  const int bits = n * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::size_t shards = static_cast<std::size_t>(std::max(1, jobs)) * 8;
  std::vector<CensusBuilder> parts(shards, CensusBuilder(n));
  parallel_for(shards, jobs, [&](std::size_t s) {
    for (std::uint64_t code = s; code < total; code += shards) {
      Graph g(n);
      int bit = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
          if (code >> bit & 1U) g.add_edge(i, j);
        }
      }
      // two vertex orbits allow at most two distinct degrees
      std::uint32_t degrees = 0;
      for (int v = 0; v < n; ++v) degrees |= 1U << g.degree(v);
      if (std::popcount(degrees) > 2) continue;
      parts[s].add(g);
    }
  });
  CensusBuilder all(n);
  for (const auto& p : parts) all.merge(p);
  return all.census();
}

CensusDiff compare_census(const Census& first, const Census& second) {
  CensusDiff d;
  for (const auto& [g6, k] : first.graphs) {
    auto it = second.graphs.find(g6);
    if (it == second.graphs.end()) {
      d.only_in_first.push_back(g6);
    } else if (it->second != k) {
      d.bucket_mismatch.push_back(g6);
    }
  }
  for (const auto& [g6, k] : second.graphs) {
    if (!first.graphs.count(g6)) d.only_in_second.push_back(g6);
  }
  return d;
}

}  // namespace orbigraph
