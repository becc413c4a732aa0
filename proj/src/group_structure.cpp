#include "orbigraph/group_structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "orbigraph/lattice.hpp"

namespace orbigraph {

// ---------------------------------------------------------------------------
// AbstractGroup

AbstractGroup::AbstractGroup(int order, std::vector<int> table, bool check_associativity)
    : order_(order), table_(std::move(table)) {
  if (order < 1 || table_.size() != static_cast<std::size_t>(order) * order) {
    throw std::invalid_argument("multiplication table has the wrong size");
  }
  for (int a = 0; a < order; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) {
      throw std::invalid_argument("element 0 is not the identity");
    }
  }
  std::vector<char> row_seen(order), col_seen(order);
  for (int a = 0; a < order; ++a) {
    std::fill(row_seen.begin(), row_seen.end(), 0);
    std::fill(col_seen.begin(), col_seen.end(), 0);
    for (int b = 0; b < order; ++b) {
      const int r = mul(a, b);
      const int c = mul(b, a);
      if (r < 0 || r >= order || c < 0 || c >= order || row_seen[r] || col_seen[c]) {
        throw std::invalid_argument("multiplication table is not a Latin square");
      }
      row_seen[r] = col_seen[c] = 1;
    }
  }
  if (check_associativity) {
    for (int a = 0; a < order; ++a) {
      for (int b = 0; b < order; ++b) {
        for (int c = 0; c < order; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw std::invalid_argument("multiplication table is not associative");
          }
        }
      }
    }
  }
  inverses_.assign(order, 0);
  element_orders_.assign(order, 1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (mul(a, b) == 0) {
        inverses_[a] = b;
        break;
      }
    }
    int x = a;
    while (x != 0) {
      x = mul(x, a);
      ++element_orders_[a];
    }
  }
  // greedy generators, large element orders first
  std::vector<int> by_order(order);
  for (int a = 0; a < order; ++a) by_order[a] = a;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](int a, int b) { return element_orders_[a] > element_orders_[b]; });
  std::vector<char> reached = generated({});
  int reached_count = 1;
  for (int a : by_order) {
    if (reached_count == order) break;
    if (reached[a]) continue;
    generators_.push_back(a);
    reached = generated(generators_);
    reached_count = static_cast<int>(std::count(reached.begin(), reached.end(), 1));
  }
}

std::vector<char> AbstractGroup::generated(const std::vector<int>& gens) const {
  std::vector<char> in(order_, 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (int g : gens) {
      const int y = mul(queue[qi], g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return in;
}

std::vector<std::pair<int, int>> AbstractGroup::order_histogram() const {
  std::map<int, int> hist;
  for (int o : element_orders_) ++hist[o];
  return {hist.begin(), hist.end()};
}

bool AbstractGroup::is_abelian() const {
  for (int a : generators_) {
    for (int b : generators_) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

int AbstractGroup::derived_order() const {
  std::vector<int> comm;
  for (int a : generators_) {
    for (int b : generators_) {
      const int c = mul(mul(inv(a), inv(b)), mul(a, b));
      if (c != 0) comm.push_back(c);
    }
  }
  std::vector<char> in = generated(comm);
  for (bool changed = true; changed;) {
    changed = false;
    for (int h = 0; h < order_ && !changed; ++h) {
      if (!in[h]) continue;
      for (int g : generators_) {
        const int c = mul(mul(g, h), inv(g));
        if (!in[c]) {
          comm.push_back(c);
          in = generated(comm);
          changed = true;
          break;
        }
      }
    }
  }
  return static_cast<int>(std::count(in.begin(), in.end(), 1));
}

bool verify_isomorphism(const AbstractGroup& source, const AbstractGroup& target,
                        const std::vector<int>& map) {
  const int n = source.order();
  if (target.order() != n || static_cast<int>(map.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int x : map) {
    if (x < 0 || x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (map[source.mul(a, b)] != target.mul(map[a], map[b])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Quotients

Quotient::Quotient(const PermutationGroup& g, const PermutationGroup& n, std::size_t cap)
    : kernel_(n) {
  const std::uint64_t index = g.order() / n.order();
  if (index > cap) {
    throw TooLargeError("quotient of order " + std::to_string(index) + " exceeds cap " +
                        std::to_string(cap));
  }
  const auto& gens = g.generators();
  reps_.push_back(canonical(Permutation(g.degree())));
  ids_.emplace(reps_[0], 0);
  std::vector<int> parent{-1}, via{-1};
  // left action of each generator on cosets
  std::vector<std::vector<int>> action(gens.size());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation c = canonical(gens[s] * reps_[i]);
      auto [it, fresh] = ids_.emplace(c, static_cast<int>(reps_.size()));
      if (fresh) {
        reps_.push_back(c);
        parent.push_back(static_cast<int>(i));
        via.push_back(static_cast<int>(s));
      }
      action[s].push_back(it->second);
    }
  }
  const int m = static_cast<int>(reps_.size());
  if (static_cast<std::uint64_t>(m) != index) {
    throw std::logic_error("coset enumeration found " + std::to_string(m) + " cosets, expected " +
                           std::to_string(index));
  }
  // coset i = s * coset parent(i), so row i = action_s applied to row parent(i)
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int j = 0; j < m; ++j) table[j] = j;
  for (int i = 1; i < m; ++i) {
    const auto& act = action[via[i]];
    const std::size_t prow = static_cast<std::size_t>(parent[i]) * m;
    for (int j = 0; j < m; ++j) table[static_cast<std::size_t>(i) * m + j] = act[table[prow + j]];
  }
  group_ = AbstractGroup(m, std::move(table));
}

// Lexicographically least base image over the coset gN.
Permutation Quotient::canonical(Permutation g) const {
  for (const auto& level : kernel_.chain().levels()) {
    int best = -1;
    int best_image = g.degree();
    for (int delta : level.orbit) {
      if (g[delta] < best_image) {
        best_image = g[delta];
        best = delta;
      }
    }
    g = g * *level.transversal[best];
  }
  return g;
}

int Quotient::project(const Permutation& g) const {
  auto it = ids_.find(canonical(g));
  if (it == ids_.end()) throw std::invalid_argument("element is not in the group");
  return it->second;
}

Quotient quotient(const PermutationGroup& g, const PermutationGroup& n, const Caps& caps) {
  if (!is_normal(g, n)) throw std::invalid_argument("subgroup is not normal");
  return Quotient(g, n, caps.quotient);
}

// ---------------------------------------------------------------------------
// Normal structure

bool is_normal(const PermutationGroup& g, const PermutationGroup& n) {
  if (!n.is_subgroup_of(g)) return false;
  for (const auto& x : g.generators()) {
    if (!n.normalized_by(x)) return false;
  }
  return true;
}

PermutationGroup normal_closure(const PermutationGroup& g, const std::vector<Permutation>& gens) {
  std::vector<Permutation> current;
  for (const auto& x : gens) {
    if (!x.is_identity()) current.push_back(x);
  }
  PermutationGroup h(g.degree(), current);
  for (std::size_t i = 0; i < current.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation c = conjugate(current[i], s);
      if (!h.contains(c)) {
        current.push_back(c);
        h = PermutationGroup(g.degree(), current);
      }
    }
  }
  return h;
}

PermutationGroup derived_subgroup(const PermutationGroup& g) {
  std::vector<Permutation> comm;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      comm.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
    }
  }
  return normal_closure(g, comm);
}

namespace {

std::uint64_t factorial_or_zero(int d) {
  std::uint64_t f = 1;
  for (int i = 2; i <= d; ++i) {
    if (f > UINT64_MAX / static_cast<std::uint64_t>(i)) return 0;
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

// Index of an equal group in `list`, or -1.
int find_group(const std::vector<PermutationGroup>& list, const PermutationGroup& h) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].order() == h.order() && h.is_subgroup_of(list[i])) return static_cast<int>(i);
  }
  return -1;
}

PermutationGroup join(const PermutationGroup& a, const PermutationGroup& b) {
  std::vector<Permutation> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return {a.degree(), gens};
}

}  // namespace

bool is_natural_symmetric(const PermutationGroup& g) {
  const std::uint64_t f = factorial_or_zero(g.degree());
  return f != 0 && g.order() == f;
}

bool is_natural_alternating(const PermutationGroup& g) {
  const std::uint64_t f = factorial_or_zero(g.degree());
  if (f < 2 || g.order() != f / 2) return false;
  return std::all_of(g.generators().begin(), g.generators().end(),
                     [](const Permutation& p) { return p.is_even(); });
}

std::vector<PermutationGroup> normal_subgroups(const PermutationGroup& g, const Caps& caps) {
  const int d = g.degree();
  if (g.is_trivial()) return {g};
  if (d >= 5 && is_natural_symmetric(g)) {
    return {PermutationGroup::trivial(d), PermutationGroup::alternating(d), g};
  }
  if (d >= 5 && is_natural_alternating(g)) return {PermutationGroup::trivial(d), g};
  if (g.order() > caps.normality) {
    throw TooLargeError("normal subgroups: group order " + std::to_string(g.order()) +
                        " exceeds cap");
  }

  // normal closures of class representatives, then all joins
  const auto& elements = g.elements(std::max(caps.normality, caps.element_cache));
  std::unordered_map<Permutation, int, PermutationHash> index;
  index.reserve(elements.size() * 2);
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<int>(i));
  std::vector<char> seen(elements.size(), 0);
  std::vector<PermutationGroup> found{PermutationGroup::trivial(d)};
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cls{static_cast<int>(i)};
    seen[i] = 1;
    for (std::size_t qi = 0; qi < cls.size(); ++qi) {
      for (const auto& s : g.generators()) {
        const int c = index.at(conjugate(elements[cls[qi]], s));
        if (!seen[c]) {
          seen[c] = 1;
          cls.push_back(c);
        }
      }
    }
    PermutationGroup n = normal_closure(g, {elements[i]});
    if (find_group(found, n) < 0) found.push_back(n);
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      PermutationGroup h = join(found[i], found[j]);
      if (find_group(found, h) < 0) found.push_back(h);
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.order() < b.order();
  });
  return found;
}

std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& g,
                                                       const Caps& caps) {
  const auto all = normal_subgroups(g, caps);
  std::vector<PermutationGroup> out;
  for (const auto& n : all) {
    if (n.is_trivial()) continue;
    const bool minimal = std::none_of(all.begin(), all.end(), [&](const PermutationGroup& m) {
      return !m.is_trivial() && m.order() < n.order() && n.order() % m.order() == 0 &&
             m.is_subgroup_of(n);
    });
    if (minimal) out.push_back(n);
  }
  return out;
}

std::vector<PermutationGroup> maximal_subgroups(const PermutationGroup& g, const Caps& caps) {
  ElementTable table(g, caps.subgroup_lattice);
  const auto lattice = subgroup_lattice(table);
  std::vector<const LatticeEntry*> maximal;
  for (auto it = lattice.rbegin(); it != lattice.rend(); ++it) {
    if (it->order == table.size()) continue;
    const bool covered = std::any_of(maximal.begin(), maximal.end(), [&](const LatticeEntry* m) {
      return it->members.is_subset_of(m->members);
    });
    if (!covered) maximal.push_back(&*it);
  }
  std::vector<PermutationGroup> out;
  for (const LatticeEntry* m : maximal) {
    std::vector<Permutation> gens;
    for (int x : m->generators) gens.push_back(table.element(x));
    out.emplace_back(g.degree(), gens);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphisms

bool may_be_isomorphic(const AbstractGroup& q1, const AbstractGroup& q2) {
  return q1.order() == q2.order() && q1.order_histogram() == q2.order_histogram() &&
         q1.derived_order() == q2.derived_order();
}

namespace {

// Backtracking over images of q1's generators. A partial assignment is
// extended to the subgroup generated so far by BFS over words; conflicts
// (two words, two images) or collisions (non-injective) prune the branch.
class IsoSearch {
 public:
  IsoSearch(const AbstractGroup& q1, const AbstractGroup& q2, std::size_t limit)
      : q1_(q1), q2_(q2), gens_(q1.generators()), limit_(limit) {}

  std::vector<GroupIsomorphism> run() {
    images_.resize(gens_.size());
    std::vector<int> map(q1_.order(), -1), back(q2_.order(), -1);
    map[0] = 0;
    back[0] = 0;
    search(0, map, back);
    return std::move(found_);
  }

 private:
  void search(std::size_t depth, const std::vector<int>& map, const std::vector<int>& back) {
    if (depth == gens_.size()) {
      found_.push_back({map});
      if (found_.size() > limit_) {
        throw TooLargeError("more than " + std::to_string(limit_) + " isomorphisms");
      }
      return;
    }
    const int x = gens_[depth];
    for (int y = 0; y < q2_.order(); ++y) {
      if (q2_.element_order(y) != q1_.element_order(x)) continue;
      if (map[x] >= 0 && map[x] != y) continue;
      if (map[x] < 0 && back[y] >= 0) continue;
      images_[depth] = y;
      std::vector<int> m = map, b = back;
      if (extend(depth + 1, m, b)) search(depth + 1, m, b);
    }
  }

  bool extend(std::size_t used, std::vector<int>& map, std::vector<int>& back) const {
    std::vector<int> queue;
    for (int a = 0; a < q1_.order(); ++a) {
      if (map[a] >= 0) queue.push_back(a);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int a = queue[qi];
      for (std::size_t i = 0; i < used; ++i) {
        const int src = q1_.mul(a, gens_[i]);
        const int dst = q2_.mul(map[a], images_[i]);
        if (map[src] >= 0) {
          if (map[src] != dst) return false;
          continue;
        }
        if (back[dst] >= 0) return false;
        map[src] = dst;
        back[dst] = src;
        queue.push_back(src);
      }
    }
    return true;
  }

  const AbstractGroup& q1_;
  const AbstractGroup& q2_;
  const std::vector<int>& gens_;
  std::size_t limit_;
  std::vector<int> images_;
  std::vector<GroupIsomorphism> found_;
};

}  // namespace

std::vector<GroupIsomorphism> isomorphisms(const AbstractGroup& q1, const AbstractGroup& q2,
                                           const Caps& caps) {
  if (static_cast<std::size_t>(std::max(q1.order(), q2.order())) > caps.isomorphism) {
    throw TooLargeError("isomorphism search: group order exceeds cap");
  }
  if (q1.order() != q2.order() || q1.order_histogram() != q2.order_histogram()) return {};
  return IsoSearch(q1, q2, caps.isomorphism_count).run();
}

std::vector<GroupIsomorphism> isomorphisms_mod_inner(const AbstractGroup& q1,
                                                     const AbstractGroup& q2, const Caps& caps) {
  const auto all = isomorphisms(q1, q2, caps);
  const auto& gens = q1.generators();
  std::set<std::vector<int>> covered;
  std::vector<GroupIsomorphism> out;
  for (const auto& phi : all) {
    std::vector<int> key;
    for (int x : gens) key.push_back(phi.map[x]);
    if (covered.count(key)) continue;
    out.push_back(phi);
    for (int c = 0; c < q2.order(); ++c) {
      std::vector<int> conj_key;
      for (int y : key) conj_key.push_back(q2.mul(q2.mul(c, y), q2.inv(c)));
      covered.insert(std::move(conj_key));
    }
  }
  return out;
}

}  // namespace orbigraph
