#include "orbigraph/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace orbigraph {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > Permutation::kMaxDegree) {
    throw std::invalid_argument("permutation degree out of range: " +
                                std::to_string(degree));
  }
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace

Permutation::Permutation(int degree) {
  check_degree(degree);
  degree_ = static_cast<std::uint8_t>(degree);
  for (int i = 0; i < degree; ++i) images_[i] = static_cast<std::uint8_t>(i);
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int degree = static_cast<int>(images.size());
  check_degree(degree);
  Permutation p;
  p.degree_ = static_cast<std::uint8_t>(degree);
  std::uint64_t seen = 0;
  for (int i = 0; i < degree; ++i) {
    const int image = images[i];
    if (image < 0 || image >= degree || (seen >> image & 1U) != 0) {
      throw std::invalid_argument("image list is not a bijection");
    }
    seen |= std::uint64_t{1} << image;
    p.images_[i] = static_cast<std::uint8_t>(image);
  }
  return p;
}

Permutation Permutation::from_cycles(
    int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p(degree);
  std::uint64_t seen = 0;
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int a = cycle[i];
      if (a < 0 || a >= degree || (seen >> a & 1U) != 0) {
        throw std::invalid_argument("invalid or repeated point in cycle");
      }
      seen |= std::uint64_t{1} << a;
      p.images_[a] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    }
  }
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree_; ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.degree_ = degree_;
  for (int i = 0; i < degree_; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  for (int len : cycle_type()) {
    result = result / gcd64(result, static_cast<std::uint64_t>(len)) * len;
  }
  return result;
}

bool Permutation::is_even() const {
  int transpositions = 0;
  for (int len : cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

Permutation Permutation::power(std::int64_t exponent) const {
  Permutation base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);
  Permutation result(degree_);
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

int Permutation::first_moved_point() const {
  for (int i = 0; i < degree_; ++i) {
    if (images_[i] != i) return i;
  }
  return -1;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> result;
  std::uint64_t seen = 0;
  for (int i = 0; i < degree_; ++i) {
    if ((seen >> i & 1U) != 0 || images_[i] == i) continue;
    std::vector<int> cycle;
    for (int j = i; (seen >> j & 1U) == 0; j = images_[j]) {
      seen |= std::uint64_t{1} << j;
      cycle.push_back(j);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::uint64_t seen = 0;
  for (int i = 0; i < degree_; ++i) {
    if ((seen >> i & 1U) != 0) continue;
    int len = 0;
    for (int j = i; (seen >> j & 1U) == 0; j = images_[j]) {
      seen |= std::uint64_t{1} << j;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<int> Permutation::images() const {
  return std::vector<int>(images_.begin(), images_.begin() + degree_);
}

std::string Permutation::to_cycle_string() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& cycle : cs) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out;
}

std::string Permutation::to_image_string() const {
  std::string out = "[";
  for (int i = 0; i < degree_; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(images_[i]);
  }
  out += ']';
  return out;
}

Permutation Permutation::parse(std::string_view text, int degree) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> int {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) {
      throw std::invalid_argument("expected integer at offset " + std::to_string(start) +
                                  " in '" + std::string(text) + "'");
    }
    return std::stoi(std::string(text.substr(start, pos - start)));
  };

  skip_space();
  if (pos < text.size() && text[pos] == '[') {
    ++pos;
    std::vector<int> images;
    skip_space();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
    } else {
      for (;;) {
        images.push_back(read_int());
        skip_space();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ']') {
          ++pos;
          break;
        }
        throw std::invalid_argument("malformed image list: '" + std::string(text) + "'");
      }
    }
    skip_space();
    if (pos != text.size()) {
      throw std::invalid_argument("trailing text after image list");
    }
    if (degree >= 0 && degree != static_cast<int>(images.size())) {
      throw std::invalid_argument("image list length does not match degree");
    }
    return from_images(images);
  }

  std::vector<std::vector<int>> cycles;
  int max_point = -1;
  while (true) {
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != '(') {
      throw std::invalid_argument("expected '(' at offset " + std::to_string(pos) +
                                  " in '" + std::string(text) + "'");
    }
    ++pos;
    std::vector<int> cycle;
    skip_space();
    while (pos < text.size() && text[pos] != ')') {
      cycle.push_back(read_int());
      max_point = std::max(max_point, cycle.back());
      skip_space();
      if (pos < text.size() && text[pos] == ',') ++pos;
      skip_space();
    }
    if (pos == text.size()) throw std::invalid_argument("unterminated cycle");
    ++pos;
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
  }
  if (degree < 0) degree = max_point + 1;
  if (max_point >= degree) {
    throw std::invalid_argument("cycle point exceeds degree in '" + std::string(text) + "'");
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::restrict_to(int first, int count) const {
  Permutation r(count);
  for (int i = 0; i < count; ++i) {
    const int image = images_[first + i] - first;
    if (image < 0 || image >= count) {
      throw std::invalid_argument("permutation does not preserve the range");
    }
    r.images_[i] = static_cast<std::uint8_t>(image);
  }
  return r;
}

Permutation Permutation::direct_sum(const Permutation& other) const {
  Permutation r(degree_ + other.degree_);
  for (int i = 0; i < degree_; ++i) r.images_[i] = images_[i];
  for (int i = 0; i < other.degree_; ++i) {
    r.images_[degree_ + i] = static_cast<std::uint8_t>(other.images_[i] + degree_);
  }
  return r;
}

std::size_t Permutation::hash() const {
  std::uint64_t words[4];
  std::memcpy(words, images_.data(), sizeof(words));
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ degree_;
  for (std::uint64_t w : words) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree_ != q.degree_) {
    throw std::invalid_argument("cannot compose permutations of degrees " +
                                std::to_string(p.degree_) + " and " +
                                std::to_string(q.degree_));
  }
  Permutation r;
  r.degree_ = p.degree_;
  for (int i = 0; i < p.degree_; ++i) r.images_[i] = p.images_[q.images_[i]];
  return r;
}

std::vector<Permutation> closure(int degree, const std::vector<Permutation>& generators,
                                 std::size_t cap) {
  for (const auto& g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
  }
  std::vector<Permutation> elements{Permutation(degree)};
  std::unordered_set<Permutation, PermutationHash> seen{elements.front()};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      Permutation next = g * elements[i];
      if (seen.insert(next).second) {
        if (elements.size() >= cap) {
          throw TooLargeError("closure exceeds element cap " + std::to_string(cap));
        }
        elements.push_back(next);
      }
    }
  }
  return elements;
}

}  // namespace orbigraph
