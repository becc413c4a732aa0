#include "orbigraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace orbigraph {

Graph::Graph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("graph order out of range");
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("loops are not allowed");
  rows_[u] |= 1U << v;
  rows_[v] |= 1U << u;
}

void Graph::remove_edge(int u, int v) {
  rows_[u] &= ~(1U << v);
  rows_[v] &= ~(1U << u);
}

int Graph::degree(int v) const { return std::popcount(rows_[v]); }

int Graph::edge_count() const {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph Graph::relabel(const Permutation& p) const {
  Graph out(n_);
  for (const auto& [i, j] : edges()) out.add_edge(p[i], p[j]);
  return out;
}

bool Graph::is_automorphism(const Permutation& p) const { return relabel(p) == *this; }

// ---------------------------------------------------------------------------
// Edge orbits

int EdgeOrbitPartition::pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  // row-major index into the strict upper triangle
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

EdgeOrbitPartition edge_orbits(const PermutationGroup& g) {
  const int n = g.degree();
  const int pairs = n * (n - 1) / 2;
  UnionFind uf(pairs);
  for (const auto& s : g.generators()) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        uf.unite(EdgeOrbitPartition::pair_index(n, i, j), EdgeOrbitPartition::pair_index(n, s[i], s[j]));
      }
    }
  }
  EdgeOrbitPartition p;
  p.n = n;
  p.orbit_index.assign(pairs, -1);
  std::vector<int> id_of_root(pairs, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int idx = EdgeOrbitPartition::pair_index(n, i, j);
      const int root = uf.find(idx);
      if (id_of_root[root] < 0) {
        id_of_root[root] = p.orbit_count++;
        p.orbits.emplace_back();
      }
      p.orbit_index[idx] = id_of_root[root];
      p.orbits[id_of_root[root]].emplace_back(i, j);
    }
  }
  return p;
}

Graph graph_from_subset(const EdgeOrbitPartition& p, std::uint64_t subset) {
  Graph g(p.n);
  for (int o = 0; o < p.orbit_count; ++o) {
    if ((subset >> o & 1U) == 0) continue;
    for (const auto& [i, j] : p.orbits[o]) g.add_edge(i, j);
  }
  return g;
}

std::vector<Graph> graphs_from_orbits(const EdgeOrbitPartition& p, int subset_cap) {
  if (p.orbit_count > subset_cap || p.orbit_count > 62) {
    throw TooLargeError(std::to_string(p.orbit_count) + " edge orbits exceed the subset cap");
  }
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << p.orbit_count;
  out.reserve(total);
  for (std::uint64_t s = 0; s < total; ++s) out.push_back(graph_from_subset(p, s));
  return out;
}

bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::uint32_t seen = 1U, frontier = 1U;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= g.row(std::countr_zero(f));
    frontier = next & ~seen;
    seen |= next;
  }
  const std::uint32_t all = g.n() == 32 ? ~0U : (1U << g.n()) - 1;
  return seen == all;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

// Ordered partition: lab lists the vertices, len[s] is the length of the
// cell starting at position s (only meaningful at cell starts).
struct Partition {
  int n = 0;
  std::array<int, Graph::kMaxVertices> lab{};
  std::array<int, Graph::kMaxVertices> len{};

  bool discrete() const {
    for (int s = 0; s < n; s += len[s]) {
      if (len[s] > 1) return false;
    }
    return true;
  }
  std::uint32_t mask(int s) const {
    std::uint32_t m = 0;
    for (int i = s; i < s + len[s]; ++i) m |= 1U << lab[i];
    return m;
  }
};

// Split cells by number of neighbours in each splitter cell until the
// partition is equitable. Fragments are ordered by that count, so the result
// depends only on the cells as sets.
void refine(const Graph& g, Partition& p) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < p.n; s += p.len[s]) {
      const std::uint32_t splitter = p.mask(s);
      for (int x = 0; x < p.n;) {
        const int l = p.len[x];
        if (l > 1) {
          std::array<std::pair<int, int>, Graph::kMaxVertices> keyed;
          bool differs = false;
          for (int i = 0; i < l; ++i) {
            const int v = p.lab[x + i];
            keyed[i] = {std::popcount(g.row(v) & splitter), v};
            differs |= keyed[i].first != keyed[0].first;
          }
          if (differs) {
            std::sort(keyed.begin(), keyed.begin() + l);
            int start = x;
            for (int i = 0; i < l; ++i) {
              p.lab[x + i] = keyed[i].second;
              if (i > 0 && keyed[i].first != keyed[i - 1].first) {
                p.len[start] = x + i - start;
                start = x + i;
              }
            }
            p.len[start] = x + l - start;
            changed = true;
          }
        }
        x += l;
      }
    }
  }
}

class CanonSearch {
 public:
  explicit CanonSearch(const Graph& g) : g_(g), n_(g.n()) {}

  CanonicalForm run() {
    Partition root;
    root.n = n_;
    std::iota(root.lab.begin(), root.lab.begin() + n_, 0);
    root.len[0] = n_;
    visit(root, 0);

    CanonicalForm cf;
    cf.canonical = best_graph_;
    cf.labeling.assign(n_, 0);
    for (int i = 0; i < n_; ++i) cf.labeling[best_lab_[i]] = i;
    cf.aut_generators = autos_;
    UnionFind uf(n_);
    for (const auto& a : autos_) {
      for (int v = 0; v < n_; ++v) uf.unite(v, a[v]);
    }
    cf.aut_orbits.domain_size = n_;
    cf.aut_orbits.block_index.assign(n_, -1);
    for (int v = 0; v < n_; ++v) {
      const int r = uf.find(v);
      if (cf.aut_orbits.block_index[r] < 0) {
        cf.aut_orbits.block_index[r] = static_cast<int>(cf.aut_orbits.blocks.size());
        cf.aut_orbits.blocks.emplace_back();
      }
      cf.aut_orbits.block_index[v] = cf.aut_orbits.block_index[r];
      cf.aut_orbits.blocks[cf.aut_orbits.block_index[v]].push_back(v);
    }
    return cf;
  }

 private:
  // Returns the level to unwind to after an automorphism was found, or -1.
  int visit(Partition p, int level) {
    refine(g_, p);
    if (p.discrete()) return leaf(p);

    int target = -1, target_len = 0;
    for (int s = 0; s < n_; s += p.len[s]) {
      if (p.len[s] > target_len) {
        target = s;
        target_len = p.len[s];
      }
    }
    std::vector<int> cell(p.lab.begin() + target, p.lab.begin() + target + target_len);
    std::sort(cell.begin(), cell.end());
    std::vector<int> explored;
    for (int v : cell) {
      if (!explored.empty() && pruned(v, explored)) continue;
      explored.push_back(v);
      Partition q = p;
      auto pos = std::find(q.lab.begin() + target, q.lab.begin() + target + target_len, v);
      std::iter_swap(q.lab.begin() + target, pos);
      q.len[target] = 1;
      q.len[target + 1] = target_len - 1;
      path_.push_back(v);
      const int jump = visit(q, level + 1);
      path_.pop_back();
      if (jump >= 0 && jump < level) return jump;
    }
    return -1;
  }

  // v is equivalent to an explored sibling under automorphisms found so far
  // that fix the current path pointwise.
  bool pruned(int v, const std::vector<int>& explored) const {
    UnionFind uf(n_);
    for (const auto& a : autos_) {
      bool fixes = true;
      for (int u : path_) fixes = fixes && a[u] == u;
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) uf.unite(x, a[x]);
    }
    const int rv = uf.find(v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return uf.find(u) == rv; });
  }

  Graph relabeled(const Partition& p) const {
    std::array<int, Graph::kMaxVertices> pos{};
    for (int i = 0; i < n_; ++i) pos[p.lab[i]] = i;
    Graph h(n_);
    for (int i = 0; i < n_; ++i) {
      for (std::uint32_t r = g_.row(p.lab[i]); r != 0; r &= r - 1) {
        const int j = pos[std::countr_zero(r)];
        if (i < j) h.add_edge(i, j);
      }
    }
    return h;
  }

  int common_prefix(const std::vector<int>& other) const {
    std::size_t d = 0;
    while (d < path_.size() && d < other.size() && path_[d] == other[d]) ++d;
    return static_cast<int>(d);
  }

  void record_automorphism(const std::array<int, Graph::kMaxVertices>& from, const Partition& to) {
    std::vector<int> images(n_);
    for (int i = 0; i < n_; ++i) images[from[i]] = to.lab[i];
    Permutation a = Permutation::from_images(images);
    if (!a.is_identity()) autos_.push_back(a);
  }

  int leaf(const Partition& p) {
    Graph h = relabeled(p);
    if (!have_first_) {
      have_first_ = true;
      first_lab_ = best_lab_ = p.lab;
      first_graph_ = best_graph_ = h;
      first_path_ = best_path_ = path_;
      return -1;
    }
    if (h == first_graph_) {
      record_automorphism(first_lab_, p);
      return common_prefix(first_path_);
    }
    if (h == best_graph_) {
      record_automorphism(best_lab_, p);
      return common_prefix(best_path_);
    }
    if (h < best_graph_) {
      best_graph_ = h;
      best_lab_ = p.lab;
      best_path_ = path_;
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<int> path_;
  std::vector<Permutation> autos_;
  bool have_first_ = false;
  std::array<int, Graph::kMaxVertices> first_lab_{}, best_lab_{};
  Graph first_graph_, best_graph_;
  std::vector<int> first_path_, best_path_;
};

}  // namespace

std::uint64_t CanonicalForm::aut_order() const {
  if (aut_generators.empty()) return 1;
  return PermutationGroup(canonical.n(), aut_generators).order();
}

CanonicalForm canonical_form(const Graph& g) {
  if (g.n() < 1) throw std::invalid_argument("canonical form needs at least one vertex");
  return CanonSearch(g).run();
}

int vertex_orbit_count(const CanonicalForm& cf) { return static_cast<int>(cf.aut_orbits.size()); }

int edge_orbit_count(const Graph& g, const CanonicalForm& cf) {
  const int n = g.n();
  UnionFind uf(n * n);
  for (const auto& a : cf.aut_generators) {
    for (const auto& [i, j] : g.edges()) {
      const int x = std::min(a[i], a[j]), y = std::max(a[i], a[j]);
      uf.unite(i * n + j, x * n + y);
    }
  }
  std::vector<char> root_seen(n * n, 0);
  int count = 0;
  for (const auto& [i, j] : g.edges()) {
    const int r = uf.find(i * n + j);
    if (!root_seen[r]) {
      root_seen[r] = 1;
      ++count;
    }
  }
  return count;
}

int vertex_orbit_count(const Graph& g) { return vertex_orbit_count(canonical_form(g)); }
int edge_orbit_count(const Graph& g) { return edge_orbit_count(g, canonical_form(g)); }

std::optional<CensusEntry> census_filter(const Graph& g) {
  if (!is_connected(g)) return std::nullopt;
  CanonicalForm cf = canonical_form(g);
  if (vertex_orbit_count(cf) != 2) return std::nullopt;
  const int k = edge_orbit_count(g, cf);
  std::string g6 = graph6_encode(cf.canonical);
  return CensusEntry{std::move(cf), k, std::move(g6)};
}

// ---------------------------------------------------------------------------
// graph6

std::string graph6_encode(const Graph& g) {
  const int n = g.n();
  std::string out(1, static_cast<char>(n + 63));
  int acc = 0, bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = acc << 1 | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

Graph graph6_decode(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw Graph6Error(0, "empty line");
  const int n = text[0] - 63;
  if (n < 0 || n > 62) throw Graph6Error(0, "unsupported vertex count byte");
  if (n > Graph::kMaxVertices) throw Graph6Error(0, "more than 32 vertices");
  const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t expected = 1 + (nbits + 5) / 6;
  if (text.size() != expected) {
    throw Graph6Error(std::min(text.size(), expected),
                      "expected " + std::to_string(expected) + " bytes, got " + std::to_string(text.size()));
  }
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < 63 || text[i] > 126) throw Graph6Error(i, "byte out of range");
  }
  Graph g(n);
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      const int byte = text[1 + bit / 6] - 63;
      if (byte >> (5 - bit % 6) & 1) g.add_edge(i, j);
    }
  }
  if (nbits % 6 != 0) {
    const int last = text.back() - 63;
    if ((last & ((1 << (6 - nbits % 6)) - 1)) != 0) {
      throw Graph6Error(text.size() - 1, "nonzero padding bits");
    }
  }
  return g;
}

}  // namespace orbigraph
