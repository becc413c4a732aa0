#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbigraph/perm_group.hpp"

namespace orbigraph {

struct CatalogEntry {
  int degree = 0;
  std::string id;
  std::vector<Permutation> generators;
  std::uint64_t order = 0;
  std::string name;  // free-text comment from the file, may be empty

  PermutationGroup group() const { return {degree, generators}; }
};

class CatalogError : public std::runtime_error {
 public:
  CatalogError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class Catalog {
 public:
  Catalog() = default;
  Catalog(std::map<int, std::vector<CatalogEntry>> entries, std::string source,
          std::string checksum);

  bool has_degree(int d) const { return entries_.count(d) != 0; }
  /// Throws std::out_of_range for a degree the catalog does not cover.
  const std::vector<CatalogEntry>& degree(int d) const;
  int max_degree() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
  const std::map<int, std::vector<CatalogEntry>>& entries() const { return entries_; }
  std::size_t size() const;
  const std::string& source() const { return source_; }
  /// FNV-1a 64 of the file bytes, hex.
  const std::string& checksum() const { return checksum_; }

 private:
  std::map<int, std::vector<CatalogEntry>> entries_;
  std::string source_;
  std::string checksum_;
};

/// Transitive subgroups of Sym(d) up to conjugacy, ordered by group order and
/// then by generator text. Throws TooLargeError above `self_compute_cap`.
std::vector<CatalogEntry> compute_transitive_groups(int d, int self_compute_cap = 6);

/// Throws CatalogError (with line number) on a syntax error, a degree gap or
/// a duplicate id; std::runtime_error if the file cannot be read.
Catalog load_catalog(const std::filesystem::path& path);
Catalog parse_catalog(std::istream& in, const std::string& source = "<stream>");

/// Same as a catalog built from compute_transitive_groups for 1..max_degree.
Catalog computed_catalog(int max_degree);

struct CatalogReport {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::map<int, std::size_t> counts;

  bool ok() const { return failures.empty(); }
};

/// Transitivity, stated order and pairwise non-conjugacy of every entry; for
/// d <= self_compute_cap, a bijection up to conjugacy with the computed list.
CatalogReport verify_catalog(const Catalog& catalog, int self_compute_cap = 6);

/// Location of the shipped catalog (ORBIGRAPH_CATALOG env var overrides).
std::filesystem::path default_catalog_path();

}  // namespace orbigraph
