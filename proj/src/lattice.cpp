#include "orbigraph/lattice.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace orbigraph {

// ---------------------------------------------------------------------------
// ElementSet

std::size_t ElementSet::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ElementSet ElementSet::operator&(const ElementSet& other) const {
  ElementSet out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
  return out;
}

std::vector<int> ElementSet::members() const {
  std::vector<int> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      out.push_back(static_cast<int>(wi * 64 + bit));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// ElementTable

ElementTable::ElementTable(const PermutationGroup& group, std::size_t cap) : group_(group) {
  if (group.order() > cap) {
    throw TooLargeError("group of order " + std::to_string(group.order()) +
                        " exceeds explicit-table cap " + std::to_string(cap));
  }
  elements_ = group.elements(cap);
  const std::size_t n = elements_.size();
  index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], static_cast<int>(i));
  inverses_.resize(n);
  orders_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inverses_[i] = index_.at(elements_[i].inverse());
    orders_[i] = elements_[i].order();
  }
  if (n <= kTableLimit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table_[a * n + b] = index_.at(elements_[a] * elements_[b]);
      }
    }
  }
  for (const auto& g : group.generators()) generator_indices_.push_back(index_.at(g));
}

int ElementTable::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int ElementTable::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return index_.at(elements_[a] * elements_[b]);
}

ElementSet ElementTable::closure(const std::vector<int>& gens) const {
  ElementSet set(size());
  std::vector<int> queue{0};
  set.set(0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int x = queue[qi];
    for (int g : gens) {
      const int y = mul(x, g);
      if (!set.test(y)) {
        set.set(y);
        queue.push_back(y);
      }
    }
  }
  return set;
}

ElementSet ElementTable::closure(const ElementSet& base, const std::vector<int>& extra) const {
  std::vector<int> gens = generators_of(base);
  gens.insert(gens.end(), extra.begin(), extra.end());
  return closure(gens);
}

std::vector<int> ElementTable::generators_of(const ElementSet& set) const {
  std::vector<int> gens;
  ElementSet current(size());
  current.set(0);
  // Prefer elements of large order: fewer generators on average.
  std::vector<int> members = set.members();
  std::stable_sort(members.begin(), members.end(),
                   [&](int a, int b) { return orders_[a] > orders_[b]; });
  const std::size_t target = set.count();
  for (int x : members) {
    if (current.count() == target) break;
    if (current.test(x)) continue;
    gens.push_back(x);
    current = closure(gens);
  }
  return gens;
}

PermutationGroup ElementTable::to_group(const ElementSet& set) const {
  std::vector<Permutation> gens;
  for (int g : generators_of(set)) gens.push_back(elements_[g]);
  return {group_.degree(), gens};
}

ElementSet ElementTable::set_of(const PermutationGroup& subgroup) const {
  std::vector<int> gens;
  for (const auto& g : subgroup.generators()) {
    const int idx = index_of(g);
    if (idx < 0) throw std::invalid_argument("generator is not an element of the group");
    gens.push_back(idx);
  }
  return closure(gens);
}

bool ElementTable::normalizes(int g, const std::vector<int>& subgroup_gens,
                              const ElementSet& subgroup) const {
  for (int h : subgroup_gens) {
    if (!subgroup.test(conj(h, g))) return false;
  }
  return true;
}

ElementSet ElementTable::derived(const ElementSet& set, const std::vector<int>& gens) const {
  std::vector<int> comm;
  for (int a : gens) {
    for (int b : gens) {
      const int c = mul(mul(inverses_[a], inverses_[b]), mul(a, b));
      if (c != 0) comm.push_back(c);
    }
  }
  ElementSet k = closure(comm);
  (void)set;
  // normal closure inside <gens>
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<int> kgens = comm;
    for (int g : gens) {
      for (int h : kgens) {
        const int c = conj(h, g);
        if (!k.test(c)) {
          comm.push_back(c);
          k = closure(comm);
          changed = true;
        }
      }
    }
  }
  return k;
}

// ---------------------------------------------------------------------------
// Lattice

namespace {

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

class LatticeBuilder {
 public:
  LatticeBuilder(const ElementTable& table, std::size_t max_entries)
      : table_(table), max_entries_(max_entries) {}

  std::vector<LatticeEntry> run() {
    ElementSet trivial(table_.size());
    trivial.set(0);
    add(trivial, {});
    for (auto& [set, gens] : perfect_subgroups()) add(set, gens);

    for (std::size_t i = 0; i < entries_.size(); ++i) extend(i);

    std::vector<LatticeEntry> out = std::move(entries_);
    std::sort(out.begin(), out.end(), [](const LatticeEntry& a, const LatticeEntry& b) {
      if (a.order != b.order) return a.order < b.order;
      return a.members.members() < b.members.members();
    });
    return out;
  }

 private:
  bool add(const ElementSet& set, std::vector<int> gens) {
    if (!seen_.insert(set).second) return false;
    if (entries_.size() >= max_entries_) {
      throw TooLargeError("subgroup lattice exceeds " + std::to_string(max_entries_) +
                          " entries");
    }
    entries_.push_back({set, std::move(gens), set.count()});
    return true;
  }

  void extend(std::size_t index) {
    const ElementSet u = entries_[index].members;
    const std::vector<int> ugens = entries_[index].generators;
    ElementSet covered = u;
    const int n = static_cast<int>(table_.size());
    for (int g = 0; g < n; ++g) {
      if (covered.test(g)) continue;
      if (!table_.normalizes(g, ugens, u)) continue;
      std::uint64_t m = 1;
      int power = g;
      while (!u.test(power)) {
        power = table_.mul(power, g);
        ++m;
      }
      if (!is_prime(m)) continue;
      // V = U <g> = union of the cosets U g^i, i < m
      ElementSet v = u;
      const std::vector<int> umembers = u.members();
      int gi = 0;
      for (std::uint64_t i = 1; i < m; ++i) {
        gi = table_.mul(gi, g);
        for (int x : umembers) v.set(table_.mul(x, gi));
      }
      covered |= v;
      std::vector<int> vgens = ugens;
      vgens.push_back(g);
      add(v, std::move(vgens));
    }
  }

  // Perfect subgroups seed the extension; they cannot be reached from a
  // proper normal subgroup of prime index. Candidates are the perfect
  // 2-generated subgroups <x, y> of the perfect residual with x running over
  // class representatives, closed under joins and conjugation.
  std::vector<std::pair<ElementSet, std::vector<int>>> perfect_subgroups() {
    std::vector<std::pair<ElementSet, std::vector<int>>> out;
    ElementSet full(table_.size());
    std::vector<int> all(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) {
      full.set(i);
      all[i] = static_cast<int>(i);
    }
    ElementSet residual = full;
    std::vector<int> rgens = table_.generator_indices();
    for (;;) {
      if (rgens.empty()) return out;
      ElementSet next = table_.derived(residual, rgens);
      if (next == residual) break;
      residual = next;
      rgens = table_.generators_of(residual);
    }
    if (residual.count() == 1) return out;

    const std::vector<int> rmembers = residual.members();
    const auto& ggens = table_.generator_indices();
    ElementSet classified(table_.size());
    std::vector<int> reps;
    for (int x : rmembers) {
      if (x == 0 || classified.test(x)) continue;
      reps.push_back(x);
      std::vector<int> cls{x};
      classified.set(x);
      for (std::size_t qi = 0; qi < cls.size(); ++qi) {
        for (int g : ggens) {
          const int c = table_.conj(cls[qi], g);
          if (!classified.test(c)) {
            classified.set(c);
            cls.push_back(c);
          }
        }
      }
    }

    std::unordered_set<ElementSet, ElementSetHash> tried;
    std::unordered_set<ElementSet, ElementSetHash> found;
    for (int x : reps) {
      ElementSet cyclic_x = table_.closure(std::vector<int>{x});
      for (int y : rmembers) {
        if (cyclic_x.test(y)) continue;
        ElementSet h = table_.closure(std::vector<int>{x, y});
        if (!tried.insert(h).second) continue;
        if (table_.derived(h, {x, y}) == h && found.insert(h).second) {
          out.emplace_back(h, std::vector<int>{x, y});
        }
      }
    }
    // joins of perfect subgroups are perfect
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<int> gens = out[i].second;
        gens.insert(gens.end(), out[j].second.begin(), out[j].second.end());
        ElementSet h = table_.closure(gens);
        if (found.insert(h).second) out.emplace_back(h, table_.generators_of(h));
      }
    }
    // all conjugates
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (int g : ggens) {
        std::vector<int> gens;
        for (int h : out[i].second) gens.push_back(table_.conj(h, g));
        ElementSet c = table_.closure(gens);
        if (found.insert(c).second) out.emplace_back(c, gens);
      }
    }
    return out;
  }

  const ElementTable& table_;
  std::size_t max_entries_;
  std::vector<LatticeEntry> entries_;
  std::unordered_set<ElementSet, ElementSetHash> seen_;
};

}  // namespace

std::vector<LatticeEntry> subgroup_lattice(const ElementTable& table, std::size_t max_entries) {
  return LatticeBuilder(table, max_entries).run();
}

std::vector<PermutationGroup> all_subgroups(const PermutationGroup& g, const Caps& caps) {
  ElementTable table(g, caps.subgroup_lattice);
  std::vector<PermutationGroup> out;
  for (const auto& entry : subgroup_lattice(table)) {
    std::vector<Permutation> gens;
    for (int x : entry.generators) gens.push_back(table.element(x));
    out.emplace_back(g.degree(), gens);
  }
  return out;
}

}  // namespace orbigraph
