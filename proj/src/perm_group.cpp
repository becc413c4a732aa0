#include "orbigraph/perm_group.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace orbigraph {

// ---------------------------------------------------------------------------
// StabilizerChain

StabilizerChain::StabilizerChain(int degree, const std::vector<Permutation>& generators)
    : degree_(degree) {
  for (const auto& g : generators) {
    if (g.is_identity()) continue;
    bool fixes_base = true;
    for (const auto& lv : levels_) {
      if (g[lv.base_point] != lv.base_point) {
        fixes_base = false;
        break;
      }
    }
    if (fixes_base) {
      Level lv;
      lv.base_point = g.first_moved_point();
      levels_.push_back(std::move(lv));
    }
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const auto& g : generators) {
      if (g.is_identity()) continue;
      bool fixes = true;
      for (std::size_t j = 0; j < i; ++j) {
        if (g[levels_[j].base_point] != levels_[j].base_point) {
          fixes = false;
          break;
        }
      }
      if (fixes) levels_[i].generators.push_back(g);
    }
    rebuild_orbit(i);
  }
  run();
}

void StabilizerChain::rebuild_orbit(std::size_t level) {
  Level& lv = levels_[level];
  lv.transversal.assign(degree_, std::nullopt);
  lv.orbit.clear();
  lv.transversal[lv.base_point] = Permutation(degree_);
  lv.orbit.push_back(lv.base_point);
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    const int x = lv.orbit[i];
    for (const auto& g : lv.generators) {
      const int y = g[x];
      if (!lv.transversal[y]) {
        lv.transversal[y] = g * *lv.transversal[x];
        lv.orbit.push_back(y);
      }
    }
  }
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(Permutation g,
                                                           std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    const int beta = g[lv.base_point];
    if (!lv.transversal[beta]) return {g, i};
    g = lv.transversal[beta]->inverse() * g;
  }
  return {g, levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, level] = strip(g);
  return level == levels_.size() && residue.is_identity();
}

// Deterministic Schreier-Sims: every Schreier generator at every level is
// sifted; a non-trivial residue extends the chain and the scan restarts at
// the deepest level that changed.
void StabilizerChain::run() {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool complete = true;
    Level& lv = levels_[i];
    for (std::size_t oi = 0; oi < lv.orbit.size() && complete; ++oi) {
      const int beta = lv.orbit[oi];
      for (std::size_t gi = 0; gi < levels_[i].generators.size(); ++gi) {
        const Level& cur = levels_[i];
        const Permutation& x = cur.generators[gi];
        const Permutation schreier =
            cur.transversal[x[beta]]->inverse() * x * *cur.transversal[beta];
        if (schreier.is_identity()) continue;
        auto [residue, j] = strip(schreier, static_cast<std::size_t>(i) + 1);
        if (j < levels_.size() || !residue.is_identity()) {
          complete = false;
          if (j == levels_.size()) {
            Level fresh;
            fresh.base_point = residue.first_moved_point();
            levels_.push_back(std::move(fresh));
          }
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
            levels_[l].generators.push_back(residue);
            rebuild_orbit(l);
          }
          i = static_cast<std::ptrdiff_t>(j);
          break;
        }
      }
    }
    if (complete) --i;
  }
}

std::vector<int> StabilizerChain::base() const {
  std::vector<int> out;
  for (const auto& lv : levels_) out.push_back(lv.base_point);
  return out;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t result = 1;
  for (const auto& lv : levels_) {
    const std::uint64_t len = lv.orbit.size();
    if (result > UINT64_MAX / len) throw TooLargeError("group order overflows 64 bits");
    result *= len;
  }
  return result;
}

// ---------------------------------------------------------------------------
// PermutationGroup

struct PermutationGroup::State {
  int degree = 0;
  std::vector<Permutation> generators;
  std::once_flag chain_once;
  std::unique_ptr<StabilizerChain> chain;
  std::once_flag elements_once;
  std::vector<Permutation> elements;
  std::atomic<bool> elements_ready{false};
};

PermutationGroup::PermutationGroup() : PermutationGroup(1, {}) {}

PermutationGroup::PermutationGroup(int degree, std::vector<Permutation> generators)
    : state_(std::make_shared<State>()) {
  if (degree < 0 || degree > Permutation::kMaxDegree) {
    throw std::invalid_argument("group degree out of range");
  }
  state_->degree = degree;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (auto& g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (g.is_identity() || !seen.insert(g).second) continue;
    state_->generators.push_back(g);
  }
}

PermutationGroup PermutationGroup::trivial(int degree) { return {degree, {}}; }

PermutationGroup PermutationGroup::symmetric(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> cycle(degree);
    std::iota(cycle.begin(), cycle.end(), 0);
    gens.push_back(Permutation::from_cycles(degree, {{0, 1}}));
    if (degree >= 3) gens.push_back(Permutation::from_cycles(degree, {cycle}));
  }
  return {degree, gens};
}

PermutationGroup PermutationGroup::alternating(int degree) {
  std::vector<Permutation> gens;
  for (int i = 2; i < degree; ++i) {
    gens.push_back(Permutation::from_cycles(degree, {{0, 1, i}}));
  }
  return {degree, gens};
}

PermutationGroup PermutationGroup::cyclic(int degree) {
  if (degree < 2) return trivial(degree);
  std::vector<int> cycle(degree);
  std::iota(cycle.begin(), cycle.end(), 0);
  return {degree, {Permutation::from_cycles(degree, {cycle})}};
}

int PermutationGroup::degree() const { return state_->degree; }

const std::vector<Permutation>& PermutationGroup::generators() const {
  return state_->generators;
}

const StabilizerChain& PermutationGroup::chain() const {
  std::call_once(state_->chain_once, [this] {
    state_->chain = std::make_unique<StabilizerChain>(state_->degree, state_->generators);
  });
  return *state_->chain;
}

std::uint64_t PermutationGroup::order() const { return chain().order(); }

bool PermutationGroup::contains(const Permutation& p) const {
  return chain().contains(p);
}

const std::vector<Permutation>& PermutationGroup::elements(std::size_t cap) const {
  if (!state_->elements_ready.load(std::memory_order_acquire) && order() > cap) {
    throw TooLargeError("group of order " + std::to_string(order()) +
                        " exceeds element cap " + std::to_string(cap));
  }
  std::call_once(state_->elements_once, [this] {
    std::vector<Permutation> out;
    out.reserve(order());
    chain().for_each_element([&](const Permutation& p) { out.push_back(p); });
    // the identity is the all-identity transversal product, which comes first
    state_->elements = std::move(out);
    state_->elements_ready.store(true, std::memory_order_release);
  });
  return state_->elements;
}

bool PermutationGroup::has_element_cache() const {
  return state_->elements_ready.load(std::memory_order_acquire);
}

OrbitPartition PermutationGroup::orbits() const {
  std::vector<int> domain(degree());
  std::iota(domain.begin(), domain.end(), 0);
  return orbits(domain);
}

OrbitPartition PermutationGroup::orbits(std::span<const int> domain) const {
  OrbitPartition part;
  part.domain_size = degree();
  part.block_index.assign(degree(), -1);
  std::vector<int> parent(degree());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& g : generators()) {
    for (int x = 0; x < degree(); ++x) {
      const int a = find(x);
      const int b = find(g[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> sorted(domain.begin(), domain.end());
  std::sort(sorted.begin(), sorted.end());
  std::map<int, int> root_to_block;
  for (int x : sorted) {
    const int r = find(x);
    auto [it, inserted] = root_to_block.emplace(r, static_cast<int>(part.blocks.size()));
    if (inserted) part.blocks.emplace_back();
    part.blocks[it->second].push_back(x);
    part.block_index[x] = it->second;
  }
  return part;
}

bool PermutationGroup::is_transitive() const { return orbits().size() <= 1; }

bool PermutationGroup::is_transitive(std::span<const int> domain) const {
  return orbits(domain).size() <= 1;
}

bool PermutationGroup::is_transitive_on_range(int first, int count) const {
  std::vector<int> domain(count);
  std::iota(domain.begin(), domain.end(), first);
  return is_transitive(domain);
}

bool PermutationGroup::is_subgroup_of(const PermutationGroup& other) const {
  if (degree() != other.degree()) return false;
  for (const auto& g : generators()) {
    if (!other.contains(g)) return false;
  }
  return true;
}

bool PermutationGroup::same_group(const PermutationGroup& other) const {
  return degree() == other.degree() && order() == other.order() && is_subgroup_of(other);
}

bool PermutationGroup::normalized_by(const Permutation& g) const {
  for (const auto& h : generators()) {
    if (!contains(conjugate(h, g))) return false;
  }
  return true;
}

PermutationGroup PermutationGroup::restrict_to(int first, int count) const {
  std::vector<Permutation> gens;
  for (const auto& g : generators()) gens.push_back(g.restrict_to(first, count));
  return {count, gens};
}

bool PermutationGroup::is_trivial() const { return generators().empty(); }

std::string PermutationGroup::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators().size(); ++i) {
    if (i > 0) out += ", ";
    out += generators()[i].to_cycle_string();
  }
  return out + ">";
}

// ---------------------------------------------------------------------------
// Conjugacy in Sym(n)

std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_histogram(
    const PermutationGroup& g) {
  std::map<std::uint64_t, std::uint64_t> counts;
  g.chain().for_each_element([&](const Permutation& p) { ++counts[p.order()]; });
  return {counts.begin(), counts.end()};
}

namespace {

std::vector<std::size_t> orbit_lengths(const PermutationGroup& g) {
  std::vector<std::size_t> lengths;
  for (const auto& b : g.orbits().blocks) lengths.push_back(b.size());
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::map<std::vector<int>, std::uint64_t> cycle_type_histogram(const PermutationGroup& g) {
  std::map<std::vector<int>, std::uint64_t> counts;
  g.chain().for_each_element([&](const Permutation& p) { ++counts[p.cycle_type()]; });
  return counts;
}

// Shrinks a generating set: tries random pairs first, then greedily drops
// redundant generators.
std::vector<Permutation> small_generating_set(const PermutationGroup& g) {
  const auto& gens = g.generators();
  if (gens.size() <= 2) return gens;
  const std::uint64_t order = g.order();
  if (g.has_element_cache() || order <= 100'000) {
    const auto& elems = g.elements();
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Permutation& a = elems[pick(rng)];
      const Permutation& b = elems[pick(rng)];
      if (PermutationGroup(g.degree(), {a, b}).order() == order) return {a, b};
    }
  }
  std::vector<Permutation> kept;
  std::uint64_t current = 1;
  for (const auto& x : gens) {
    std::vector<Permutation> trial = kept;
    trial.push_back(x);
    const std::uint64_t o = PermutationGroup(g.degree(), trial).order();
    if (o > current) {
      kept = std::move(trial);
      current = o;
    }
    if (current == order) break;
  }
  return kept;
}

// Tries to extend s on each G-orbit from the chosen representative images,
// following s(g_i(x)) = h_i(s(x)).
bool propagate(const std::vector<Permutation>& g_gens, const std::vector<Permutation>& h_imgs,
               std::vector<int>& s, std::uint64_t& used) {
  std::vector<int> queue;
  for (int x = 0; x < static_cast<int>(s.size()); ++x) {
    if (s[x] >= 0) queue.push_back(x);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int x = queue[qi];
    for (std::size_t i = 0; i < g_gens.size(); ++i) {
      const int y = g_gens[i][x];
      const int sy = h_imgs[i][s[x]];
      if (s[y] >= 0) {
        if (s[y] != sy) return false;
        continue;
      }
      if ((used >> sy & 1U) != 0) return false;
      s[y] = sy;
      used |= std::uint64_t{1} << sy;
      queue.push_back(y);
    }
  }
  return true;
}

}  // namespace

std::optional<Permutation> conjugating_element(const PermutationGroup& g,
                                               const PermutationGroup& h) {
  const int n = g.degree();
  if (n != h.degree()) return std::nullopt;
  if (g.order() != h.order()) return std::nullopt;
  if (orbit_lengths(g) != orbit_lengths(h)) return std::nullopt;
  if (g.order() == 1) return Permutation(n);
  if (g.order() <= 50'000'000 && cycle_type_histogram(g) != cycle_type_histogram(h)) {
    return std::nullopt;
  }

  const std::vector<Permutation> g_gens = small_generating_set(g);
  const auto& h_elems = h.elements();
  const auto g_orbits = g.orbits();
  const auto h_orbits = h.orbits();

  // Candidate images of each generator: H-elements of the same cycle type.
  std::vector<std::vector<const Permutation*>> candidates(g_gens.size());
  for (std::size_t i = 0; i < g_gens.size(); ++i) {
    const auto type = g_gens[i].cycle_type();
    for (const auto& e : h_elems) {
      if (e.cycle_type() == type) candidates[i].push_back(&e);
    }
    if (candidates[i].empty()) return std::nullopt;
  }

  // The first image is taken up to H-conjugacy.
  std::vector<const Permutation*> first_reps;
  {
    std::unordered_set<Permutation, PermutationHash> covered;
    for (const Permutation* c : candidates[0]) {
      if (covered.count(*c) != 0) continue;
      first_reps.push_back(c);
      std::vector<Permutation> cls{*c};
      covered.insert(*c);
      for (std::size_t qi = 0; qi < cls.size(); ++qi) {
        for (const auto& t : h.generators()) {
          Permutation next = conjugate(cls[qi], t);
          if (covered.insert(next).second) cls.push_back(next);
        }
      }
    }
  }

  std::vector<const Permutation*> chosen(g_gens.size(), nullptr);
  std::optional<Permutation> found;

  // For a full choice of generator images, try every assignment of G-orbit
  // representatives to H-points with matching orbit lengths.
  auto try_images = [&]() -> bool {
    std::vector<Permutation> imgs;
    for (const auto* c : chosen) imgs.push_back(*c);
    std::vector<int> s(n, -1);
    std::uint64_t used = 0;
    const auto& blocks = g_orbits.blocks;
    std::function<bool(std::size_t)> assign = [&](std::size_t bi) -> bool {
      if (bi == blocks.size()) return true;
      const int rep = blocks[bi].front();
      if (s[rep] >= 0) return assign(bi + 1);
      for (int target = 0; target < n; ++target) {
        if ((used >> target & 1U) != 0) continue;
        if (h_orbits.blocks[h_orbits.block_index[target]].size() != blocks[bi].size()) continue;
        std::vector<int> saved_s = s;
        const std::uint64_t saved_used = used;
        s[rep] = target;
        used |= std::uint64_t{1} << target;
        if (propagate(g_gens, imgs, s, used) && assign(bi + 1)) return true;
        s = std::move(saved_s);
        used = saved_used;
      }
      return false;
    };
    if (!assign(0)) return false;
    Permutation sp = Permutation::from_images(s);
    for (const auto& x : g.generators()) {
      if (!h.contains(conjugate(x, sp))) return false;
    }
    found = sp;
    return true;
  };

  std::function<bool(std::size_t)> choose = [&](std::size_t i) -> bool {
    if (i == g_gens.size()) return try_images();
    const auto& pool = i == 0 ? first_reps : candidates[i];
    for (const Permutation* c : pool) {
      // Products of images must match cycle types of products of generators.
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = (g_gens[j] * g_gens[i]).cycle_type() == (*chosen[j] * *c).cycle_type();
      }
      if (!ok) continue;
      chosen[i] = c;
      if (choose(i + 1)) return true;
    }
    return false;
  };
  choose(0);
  return found;
}

bool are_conjugate_in_symmetric(const PermutationGroup& g, const PermutationGroup& h) {
  return conjugating_element(g, h).has_value();
}

}  // namespace orbigraph
