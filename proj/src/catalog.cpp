#include "orbigraph/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "orbigraph/lattice.hpp"

namespace orbigraph {

Catalog::Catalog(std::map<int, std::vector<CatalogEntry>> entries, std::string source,
                 std::string checksum)
    : entries_(std::move(entries)), source_(std::move(source)), checksum_(std::move(checksum)) {}

const std::vector<CatalogEntry>& Catalog::degree(int d) const {
  auto it = entries_.find(d);
  if (it == entries_.end()) {
    throw std::out_of_range("catalog " + source_ + " has no degree " + std::to_string(d));
  }
  return it->second;
}

std::size_t Catalog::size() const {
  std::size_t n = 0;
  for (const auto& [d, list] : entries_) n += list.size();
  return n;
}

// ---------------------------------------------------------------------------

std::vector<CatalogEntry> compute_transitive_groups(int d, int self_compute_cap) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  if (d > self_compute_cap) {
    throw TooLargeError("degree " + std::to_string(d) +
                        " is above the self-compute cap; use a loaded catalog");
  }
  const PermutationGroup sym = PermutationGroup::symmetric(d);
  ElementTable table(sym, 1'000'000);
  const auto lattice = subgroup_lattice(table);

  std::unordered_map<ElementSet, int, ElementSetHash> index;
  std::vector<int> transitive;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    std::vector<Permutation> gens;
    for (int x : lattice[i].generators) gens.push_back(table.element(x));
    if (PermutationGroup(d, gens).is_transitive()) {
      index.emplace(lattice[i].members, static_cast<int>(transitive.size()));
      transitive.push_back(static_cast<int>(i));
    }
  }
  // conjugacy classes: orbits of Sym(d) acting on the transitive subgroups
  std::vector<int> cls(transitive.size(), -1);
  std::vector<std::vector<int>> classes;
  for (std::size_t t = 0; t < transitive.size(); ++t) {
    if (cls[t] >= 0) continue;
    const int c = static_cast<int>(classes.size());
    classes.push_back({static_cast<int>(t)});
    cls[t] = c;
    for (std::size_t qi = 0; qi < classes[c].size(); ++qi) {
      const ElementSet& set = lattice[transitive[classes[c][qi]]].members;
      for (int g : table.generator_indices()) {
        ElementSet image(table.size());
        for (int x : set.members()) image.set(table.conj(x, g));
        const int u = index.at(image);
        if (cls[u] < 0) {
          cls[u] = c;
          classes[c].push_back(u);
        }
      }
    }
  }

  std::vector<CatalogEntry> out;
  for (const auto& members : classes) {
    // representative: the class member with the smallest generator text
    CatalogEntry best;
    std::string best_key;
    for (int t : members) {
      const auto& entry = lattice[transitive[t]];
      std::vector<Permutation> gens;
      for (int x : table.generators_of(entry.members)) gens.push_back(table.element(x));
      std::sort(gens.begin(), gens.end());
      std::string key;
      for (const auto& g : gens) key += g.to_cycle_string() + ";";
      if (best_key.empty() || key < best_key) {
        best_key = key;
        best = {d, "", gens, entry.order, ""};
      }
    }
    out.push_back(std::move(best));
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.generators < b.generators;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].id = "d" + std::to_string(d) + "#" + std::to_string(i + 1);
  }
  return out;
}

Catalog computed_catalog(int max_degree) {
  std::map<int, std::vector<CatalogEntry>> entries;
  for (int d = 1; d <= max_degree; ++d) entries[d] = compute_transitive_groups(d, max_degree);
  return {std::move(entries), "computed", ""};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Catalog parse_catalog(std::istream& in, const std::string& source) {
  std::stringstream raw;
  raw << in.rdbuf();
  const std::string text = raw.str();
  std::istringstream lines(text);

  std::map<int, std::vector<CatalogEntry>> entries;
  std::set<std::string> ids;
  int current_degree = 0;
  CatalogEntry* current = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::string comment;
    if (auto hash = line.find('#', 0); hash != std::string::npos) {
      // '#' inside an id like d6#11 is part of the token; a comment starts at
      // a '#' that begins a word
      std::size_t pos = hash;
      while (pos != std::string::npos && pos > 0 && line[pos - 1] != ' ' && line[pos - 1] != '\t') {
        pos = line.find('#', pos + 1);
      }
      if (pos != std::string::npos) {
        comment = trim(line.substr(pos + 1));
        line = line.substr(0, pos);
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    if (keyword == "degree") {
      int d = 0;
      std::string extra;
      if (!(words >> d) || (words >> extra) || d < 1 || d > Permutation::kMaxDegree) {
        throw CatalogError(lineno, "malformed degree header: " + line);
      }
      if (d != current_degree + 1) {
        throw CatalogError(lineno, "degree " + std::to_string(d) + " follows degree " +
                                       std::to_string(current_degree) +
                                       " (degrees must be 1, 2, 3, ... without gaps)");
      }
      current_degree = d;
      entries[d];
      current = nullptr;
    } else if (keyword == "group") {
      if (current_degree == 0) throw CatalogError(lineno, "group before any degree header");
      std::string id, order_kw, extra;
      unsigned long long order = 0;
      if (!(words >> id >> order_kw >> order) || order_kw != "order" || (words >> extra) ||
          order == 0) {
        throw CatalogError(lineno, "malformed group header: " + line);
      }
      if (!ids.insert(id).second) throw CatalogError(lineno, "duplicate id " + id);
      entries[current_degree].push_back({current_degree, id, {}, order, comment});
      current = &entries[current_degree].back();
    } else if (keyword[0] == '(' || keyword[0] == '[') {
      if (current == nullptr) throw CatalogError(lineno, "generator outside a group entry");
      try {
        current->generators.push_back(Permutation::parse(line, current_degree));
      } catch (const std::invalid_argument& e) {
        throw CatalogError(lineno, std::string("bad generator: ") + e.what());
      }
    } else {
      throw CatalogError(lineno, "unrecognized line: " + line);
    }
  }
  if (entries.empty()) throw CatalogError(lineno, "catalog has no degrees");
  return {std::move(entries), source, fnv1a_hex(text)};
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read catalog " + path.string());
  return parse_catalog(in, path.string());
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("ORBIGRAPH_CATALOG")) return env;
  return std::filesystem::path(ORBIGRAPH_DATA_DIR) / "transitive_groups.txt";
}

// ---------------------------------------------------------------------------
// Verification

CatalogReport verify_catalog(const Catalog& catalog, int self_compute_cap) {
  CatalogReport report;
  for (const auto& [d, list] : catalog.entries()) {
    report.counts[d] = list.size();
    std::vector<PermutationGroup> groups;
    for (const auto& e : list) {
      PermutationGroup g = e.group();
      if (!g.is_transitive()) report.failures.push_back(e.id + ": not transitive");
      if (g.order() != e.order) {
        report.failures.push_back(e.id + ": stated order " + std::to_string(e.order) +
                                  ", generated order " + std::to_string(g.order()));
      }
      groups.push_back(g);
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (groups[i].order() != groups[j].order()) continue;
        if (are_conjugate_in_symmetric(groups[i], groups[j])) {
          report.failures.push_back(list[i].id + " and " + list[j].id + " are conjugate");
        }
      }
    }
    if (d <= self_compute_cap) {
      const auto computed = compute_transitive_groups(d, self_compute_cap);
      if (computed.size() != list.size()) {
        report.failures.push_back("degree " + std::to_string(d) + ": " +
                                  std::to_string(list.size()) + " entries, expected " +
                                  std::to_string(computed.size()));
      }
      for (const auto& c : computed) {
        const PermutationGroup cg = c.group();
        const bool matched = std::any_of(groups.begin(), groups.end(), [&](const auto& g) {
          return g.order() == cg.order() && are_conjugate_in_symmetric(g, cg);
        });
        if (!matched) {
          report.failures.push_back("degree " + std::to_string(d) + ": no entry conjugate to " +
                                    cg.to_string());
        }
      }
      report.notes.push_back("degree " + std::to_string(d) + ": checked against self-computed list");
    } else {
      report.notes.push_back("degree " + std::to_string(d) +
                             ": completeness taken on trust from the data source");
    }
  }
  return report;
}

}  // namespace orbigraph
