#include "orbigraph/census.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace orbigraph {

std::uint64_t CountTable::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, c] : rows) t += c;
  return t;
}

std::string CountTable::to_tsv() const {
  std::ostringstream out;
  for (const auto& [k, c] : rows) {
    if (c > 0) out << k << '\t' << c << '\n';
  }
  out << "total\t" << total() << '\n';
  return out.str();
}

CountTable CountTable::from_tsv(int n, const std::string& text) {
  CountTable t{n, {}};
  std::istringstream in(text);
  std::string key;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> total;
  while (in >> key >> count) {
    if (key == "total") {
      total = count;
    } else {
      t.rows[std::stoi(key)] = count;
    }
  }
  if (!total || *total != t.total()) throw std::invalid_argument("count table total mismatch");
  return t;
}

CountTable Census::counts() const {
  CountTable t{n, {}};
  for (const auto& [g6, k] : graphs) ++t.rows[k];
  return t;
}

std::string Census::to_g6() const {
  std::string out;
  for (const auto& [g6, k] : graphs) {
    out += g6;
    out += '\n';
  }
  return out;
}

bool CensusBuilder::add(const Graph& g) {
  if (!is_connected(g)) return false;
  CanonicalForm cf = canonical_form(g);
  if (!seen_.insert(cf.canonical).second) return false;
  if (vertex_orbit_count(cf) == 2) {
    census_.graphs.emplace(graph6_encode(cf.canonical), edge_orbit_count(g, cf));
  }
  return true;
}

void CensusBuilder::merge(const CensusBuilder& other) {
  seen_.insert(other.seen_.begin(), other.seen_.end());
  census_.graphs.insert(other.census_.graphs.begin(), other.census_.graphs.end());
}

namespace {

// rows k = 1..10, columns n = 3..13
constexpr std::array<std::array<std::uint64_t, 11>, 10> kGolden{{
    {1, 1, 2, 4, 3, 6, 5, 5, 5, 8, 6},
    {0, 2, 4, 18, 12, 46, 29, 43, 38, 98, 59},
    {0, 0, 0, 12, 4, 54, 34, 74, 41, 270, 92},
    {0, 0, 0, 2, 0, 30, 12, 52, 16, 331, 55},
    {0, 0, 0, 0, 0, 6, 4, 17, 3, 284, 20},
    {0, 0, 0, 0, 0, 2, 0, 1, 0, 183, 6},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 110, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 53, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 22, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0},
}};

}  // namespace

std::optional<CountTable> golden_counts(int n) {
  if (n < 3 || n > 13) return std::nullopt;
  CountTable t{n, {}};
  for (std::size_t k = 0; k < kGolden.size(); ++k) {
    if (kGolden[k][n - 3] > 0) t.rows[static_cast<int>(k) + 1] = kGolden[k][n - 3];
  }
  return t;
}

std::string render_table(const std::vector<CountTable>& columns) {
  int max_k = 1;
  for (const auto& c : columns) {
    if (!c.rows.empty()) max_k = std::max(max_k, c.rows.rbegin()->first);
  }
  std::ostringstream out;
  out << std::setw(6) << "k\\n";
  for (const auto& c : columns) out << std::setw(8) << c.n;
  out << '\n';
  for (int k = 1; k <= max_k; ++k) {
    out << std::setw(6) << k;
    for (const auto& c : columns) {
      auto it = c.rows.find(k);
      out << std::setw(8) << (it == c.rows.end() ? 0 : it->second);
    }
    out << '\n';
  }
  out << std::setw(6) << "total";
  for (const auto& c : columns) out << std::setw(8) << c.total();
  out << '\n';
  return out.str();
}

}  // namespace orbigraph
