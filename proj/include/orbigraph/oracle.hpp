#pragma once

#include <string>
#include <vector>

#include "orbigraph/census.hpp"

namespace orbigraph {

/// Census by testing every labeled graph on n vertices. n <= 7 only.
Census brute_force_census(int n, int jobs = 1);

struct CensusDiff {
  std::vector<std::string> only_in_first;
  std::vector<std::string> only_in_second;
  std::vector<std::string> bucket_mismatch;  // same graph, different edge orbit count

  bool empty() const { return only_in_first.empty() && only_in_second.empty() && bucket_mismatch.empty(); }
};

CensusDiff compare_census(const Census& first, const Census& second);

}  // namespace orbigraph
