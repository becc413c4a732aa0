#include "orbigraph/orbital.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "orbigraph/parallel.hpp"

namespace orbigraph {

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Renumber ids by first appearance in row-major pair order.
void normalize(OrbitalConfiguration& cfg) {
  std::vector<int> remap(static_cast<std::size_t>(cfg.orbital_count), -1);
  int next = 0;
  for (auto& id : cfg.orbital_index) {
    if (id < 0) continue;
    if (remap[id] < 0) remap[id] = next++;
    id = remap[id];
  }
  cfg.orbital_count = next;
}

}  // namespace

std::vector<int> OrbitalConfiguration::orbital_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(orbital_count), 0);
  for (int id : orbital_index) {
    if (id >= 0) ++sizes[id];
  }
  return sizes;
}

std::string OrbitalConfiguration::to_text() const {
  std::ostringstream out;
  out << n << ' ' << k << ' ';
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!first) out << ',';
      out << at(i, j);
      first = false;
    }
  }
  return out.str();
}

OrbitalConfiguration OrbitalConfiguration::from_text(const std::string& text) {
  std::istringstream in(text);
  OrbitalConfiguration cfg;
  std::string body;
  if (!(in >> cfg.n >> cfg.k) || cfg.n < 1 || cfg.n > Graph::kMaxVertices || cfg.k < 0 ||
      cfg.k > cfg.n) {
    throw std::invalid_argument("bad orbital configuration header: " + text);
  }
  in >> body;
  cfg.orbital_index.assign(static_cast<std::size_t>(cfg.n * cfg.n), -1);
  std::istringstream values(body);
  int max_id = -1;
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = 0; j < cfg.n; ++j) {
      if (i == j) continue;
      int id = 0;
      if (!(values >> id) || id < 0) throw std::invalid_argument("bad orbital configuration: " + text);
      values.ignore(1);
      cfg.orbital_index[static_cast<std::size_t>(i * cfg.n + j)] = id;
      max_id = std::max(max_id, id);
    }
  }
  cfg.orbital_count = max_id + 1;
  for (int s : cfg.orbital_sizes()) {
    if (s == 0) throw std::invalid_argument("orbital ids not contiguous: " + text);
  }
  return cfg;
}

OrbitalConfiguration orbital_configuration(const PermutationGroup& g, int k) {
  const int n = g.degree();
  std::vector<int> parent(static_cast<std::size_t>(n * n));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& s : g.generators()) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int a = find(parent, i * n + j);
        int b = find(parent, s[i] * n + s[j]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  OrbitalConfiguration cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.orbital_index.assign(static_cast<std::size_t>(n * n), -1);
  std::vector<int> id_of_root(static_cast<std::size_t>(n * n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int r = find(parent, i * n + j);
      if (id_of_root[r] < 0) id_of_root[r] = cfg.orbital_count++;
      cfg.orbital_index[static_cast<std::size_t>(i * n + j)] = id_of_root[r];
    }
  }
  return cfg;
}

OrbitalConfiguration orbital_configuration(const TwoOrbitGroup& c) {
  return orbital_configuration(c.group, c.k);
}

EdgeOrbitPartition edge_orbits(const OrbitalConfiguration& cfg) {
  const int n = cfg.n;
  // an edge orbit is an orbital fused with its transpose
  std::vector<int> parent(static_cast<std::size_t>(cfg.orbital_count));
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int a = find(parent, cfg.at(i, j));
      int b = find(parent, cfg.at(j, i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  EdgeOrbitPartition p;
  p.n = n;
  p.orbit_index.assign(static_cast<std::size_t>(n * (n - 1) / 2), -1);
  std::vector<int> id_of_root(static_cast<std::size_t>(cfg.orbital_count), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int r = find(parent, cfg.at(i, j));
      if (id_of_root[r] < 0) {
        id_of_root[r] = p.orbit_count++;
        p.orbits.emplace_back();
      }
      p.orbit_index[EdgeOrbitPartition::pair_index(n, i, j)] = id_of_root[r];
      p.orbits[id_of_root[r]].emplace_back(i, j);
    }
  }
  return p;
}

std::string signature(const OrbitalConfiguration& cfg) {
  OrbitalConfiguration c = cfg;
  normalize(c);
  // with ids in first-appearance order the index array is itself canonical
  std::string out;
  out.reserve(c.orbital_index.size() + 2);
  out.push_back(static_cast<char>(c.n));
  out.push_back(static_cast<char>(c.k));
  for (int id : c.orbital_index) {
    if (id < 0) continue;
    out.push_back(static_cast<char>(id & 0xff));
    out.push_back(static_cast<char>(id >> 8));
  }
  return out;
}

bool verify_scheme_isomorphism(const OrbitalConfiguration& c1, const OrbitalConfiguration& c2,
                               const SchemeIsomorphism& w) {
  const int n = c1.n;
  if (c2.n != n || static_cast<int>(w.psi.size()) != n ||
      static_cast<int>(w.sigma.size()) != c1.orbital_count || c1.orbital_count != c2.orbital_count) {
    return false;
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : w.psi) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && c2.at(w.psi[i], w.psi[j]) != w.sigma[c1.at(i, j)]) return false;
    }
  }
  return true;
}

namespace {

// Vertex invariant that does not depend on orbital ids: for each orbital
// touching v, its size and how often it leaves and enters v.
using Profile = std::vector<std::array<int, 3>>;

std::vector<Profile> vertex_profiles(const OrbitalConfiguration& c) {
  const auto sizes = c.orbital_sizes();
  std::vector<Profile> out(static_cast<std::size_t>(c.n));
  std::vector<int> out_count(static_cast<std::size_t>(c.orbital_count));
  std::vector<int> in_count(static_cast<std::size_t>(c.orbital_count));
  for (int v = 0; v < c.n; ++v) {
    std::fill(out_count.begin(), out_count.end(), 0);
    std::fill(in_count.begin(), in_count.end(), 0);
    for (int u = 0; u < c.n; ++u) {
      if (u == v) continue;
      ++out_count[c.at(v, u)];
      ++in_count[c.at(u, v)];
    }
    for (int o = 0; o < c.orbital_count; ++o) {
      if (out_count[o] + in_count[o] > 0) out[v].push_back({sizes[o], out_count[o], in_count[o]});
    }
    std::sort(out[v].begin(), out[v].end());
  }
  return out;
}

std::vector<Profile> block_histogram(const std::vector<Profile>& profiles, int first, int last) {
  std::vector<Profile> h(profiles.begin() + first, profiles.begin() + last);
  std::sort(h.begin(), h.end());
  return h;
}

struct SchemeSearch {
  const OrbitalConfiguration& c1;
  const OrbitalConfiguration& c2;
  std::vector<int> order;                    // c1 vertices in assignment order
  std::vector<std::vector<int>> candidates;  // per c1 vertex
  std::vector<int> psi, sigma, sigma_inv;
  std::vector<bool> used;
  std::vector<int> trail;  // orbitals of c1 whose sigma was set

  bool bind(int o1, int o2) {
    if (sigma[o1] == o2) return true;
    if (sigma[o1] >= 0 || sigma_inv[o2] >= 0) return false;
    sigma[o1] = o2;
    sigma_inv[o2] = o1;
    trail.push_back(o1);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      const int o1 = trail.back();
      trail.pop_back();
      sigma_inv[sigma[o1]] = -1;
      sigma[o1] = -1;
    }
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return true;
    const int v = order[depth];
    for (int w : candidates[v]) {
      if (used[w]) continue;
      const std::size_t mark = trail.size();
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const int u = order[d];
        ok = bind(c1.at(v, u), c2.at(w, psi[u])) && bind(c1.at(u, v), c2.at(psi[u], w));
      }
      if (ok) {
        psi[v] = w;
        used[w] = true;
        if (search(depth + 1)) return true;
        used[w] = false;
        psi[v] = -1;
      }
      undo(mark);
    }
    return false;
  }
};

std::optional<SchemeIsomorphism> search_with_blocks(const OrbitalConfiguration& c1,
                                                    const OrbitalConfiguration& c2,
                                                    const std::vector<Profile>& p1,
                                                    const std::vector<Profile>& p2, bool swap) {
  const int n = c1.n;
  const int k = c1.k;
  auto target_block = [&](int v) {
    const bool first = v < k;
    return first != swap;  // true: first block of c2
  };
  SchemeSearch s{c1, c2, {}, std::vector<std::vector<int>>(static_cast<std::size_t>(n)), {}, {}, {}, {}, {}};
  std::map<Profile, int> frequency;
  for (int v = 0; v < n; ++v) {
    const bool to_first = target_block(v);
    for (int w = to_first ? 0 : c2.k; w < (to_first ? c2.k : n); ++w) {
      if (p1[v] == p2[w]) s.candidates[v].push_back(w);
    }
    if (s.candidates[v].empty()) return std::nullopt;
    ++frequency[p1[v]];
  }
  // rarest profile first, so the orbital map is pinned down early
  s.order.resize(static_cast<std::size_t>(n));
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](int a, int b) { return frequency[p1[a]] < frequency[p1[b]]; });
  s.psi.assign(static_cast<std::size_t>(n), -1);
  s.sigma.assign(static_cast<std::size_t>(c1.orbital_count), -1);
  s.sigma_inv.assign(static_cast<std::size_t>(c2.orbital_count), -1);
  s.used.assign(static_cast<std::size_t>(n), false);
  if (!s.search(0)) return std::nullopt;
  SchemeIsomorphism w{s.psi, s.sigma};
  if (!verify_scheme_isomorphism(c1, c2, w)) throw std::logic_error("scheme isomorphism failed re-check");
  return w;
}

// Key shared by every configuration in a scheme-isomorphism class.
std::string invariant_key(const OrbitalConfiguration& c) {
  std::ostringstream out;
  auto sizes = c.orbital_sizes();
  std::sort(sizes.begin(), sizes.end());
  out << c.n << ':' << std::min(c.k, c.n - c.k) << ':';
  for (int s : sizes) out << s << ',';
  const auto profiles = vertex_profiles(c);
  auto h1 = block_histogram(profiles, 0, c.k);
  auto h2 = block_histogram(profiles, c.k, c.n);
  if (c.k == c.n - c.k && h2 < h1) std::swap(h1, h2);
  for (const auto* h : {&h1, &h2}) {
    out << '|';
    for (const auto& p : *h) {
      out << '[';
      for (const auto& t : p) out << t[0] << ' ' << t[1] << ' ' << t[2] << ';';
      out << ']';
    }
  }
  return out.str();
}

}  // namespace

std::optional<SchemeIsomorphism> schemes_isomorphic(const OrbitalConfiguration& c1,
                                                    const OrbitalConfiguration& c2) {
  if (c1.n != c2.n || c1.orbital_count != c2.orbital_count) return std::nullopt;
  const bool same_layout = c1.k == c2.k;
  const bool swapped_layout = c1.k == c2.n - c2.k;
  if (!same_layout && !swapped_layout) return std::nullopt;
  auto s1 = c1.orbital_sizes();
  auto s2 = c2.orbital_sizes();
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (s1 != s2) return std::nullopt;

  const auto p1 = vertex_profiles(c1);
  const auto p2 = vertex_profiles(c2);
  const int n = c1.n;
  const auto a1 = block_histogram(p1, 0, c1.k), b1 = block_histogram(p1, c1.k, n);
  const auto a2 = block_histogram(p2, 0, c2.k), b2 = block_histogram(p2, c2.k, n);
  if (same_layout && a1 == a2 && b1 == b2) {
    if (auto w = search_with_blocks(c1, c2, p1, p2, false)) return w;
  }
  if (swapped_layout && a1 == b2 && b1 == a2) {
    if (auto w = search_with_blocks(c1, c2, p1, p2, true)) return w;
  }
  return std::nullopt;
}

std::vector<std::size_t> dedup_configurations(const std::vector<OrbitalConfiguration>& configs,
                                              bool round2, DedupStats* stats, int jobs) {
  // Round 1: exact signatures
  std::vector<std::string> sigs(configs.size());
  parallel_for(configs.size(), jobs, [&](std::size_t i) { sigs[i] = signature(configs[i]); });
  std::vector<std::size_t> idx(configs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });
  std::vector<std::size_t> survivors;
  for (std::size_t i : idx) {
    if (survivors.empty() || sigs[survivors.back()] != sigs[i]) survivors.push_back(i);
  }
  if (stats != nullptr) {
    stats->input = configs.size();
    stats->after_round1 = survivors.size();
    stats->after_round2 = survivors.size();
  }
  if (!round2) return survivors;

  // Round 2: pairwise scheme isomorphism inside classes of equal invariants
  std::vector<std::string> keys(survivors.size());
  parallel_for(survivors.size(), jobs,
               [&](std::size_t i) { keys[i] = invariant_key(configs[survivors[i]]); });
  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < survivors.size(); ++i) classes[keys[i]].push_back(survivors[i]);
  std::vector<const std::vector<std::size_t>*> class_list;
  for (const auto& [key, members] : classes) class_list.push_back(&members);
  std::vector<std::vector<std::size_t>> kept(class_list.size());
  parallel_for(class_list.size(), jobs, [&](std::size_t c) {
    for (std::size_t i : *class_list[c]) {
      bool duplicate = false;
      for (std::size_t r : kept[c]) {
        if (schemes_isomorphic(configs[r], configs[i])) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) kept[c].push_back(i);
    }
  });
  std::vector<std::size_t> out;
  for (const auto& k : kept) out.insert(out.end(), k.begin(), k.end());
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });
  if (stats != nullptr) stats->after_round2 = out.size();
  return out;
}

}  // namespace orbigraph
