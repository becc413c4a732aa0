#include "orbigraph/caps.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace orbigraph {

Caps Caps::parse(std::string_view spec) {
  Caps caps;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    const std::string_view item = spec.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("cap override must be key=value: " + std::string(item));
    }
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    std::size_t parsed = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(value, &parsed);
    } catch (const std::exception&) {
      parsed = 0;
    }
    if (parsed != value.size() || value.empty()) {
      throw std::invalid_argument("bad cap value: " + std::string(item));
    }
    if (key == "elements") {
      caps.element_cache = v;
    } else if (key == "lattice") {
      caps.subgroup_lattice = v;
    } else if (key == "normality") {
      caps.normality = v;
    } else if (key == "quotient") {
      caps.quotient = v;
    } else if (key == "iso") {
      caps.isomorphism = v;
    } else if (key == "isocount") {
      caps.isomorphism_count = v;
    } else if (key == "subsets") {
      caps.edge_orbit_subsets = static_cast<int>(v);
    } else {
      throw std::invalid_argument("unknown cap: " + key);
    }
  }
  return caps;
}

Caps Caps::from_env() {
  const char* env = std::getenv("ORBIGRAPH_CAPS");
  return env == nullptr ? Caps{} : parse(env);
}

std::string Caps::to_string() const {
  std::ostringstream out;
  out << "elements=" << element_cache << ",lattice=" << subgroup_lattice
      << ",normality=" << normality << ",quotient=" << quotient << ",iso=" << isomorphism
      << ",isocount=" << isomorphism_count << ",subsets=" << edge_orbit_subsets;
  return out.str();
}

}  // namespace orbigraph
