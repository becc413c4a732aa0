#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbigraph {

/// A bijection on {0, ..., degree-1}. Degrees up to kMaxDegree are supported;
/// the storage is inline so permutations are cheap to copy and hash.
class Permutation {
 public:
  static constexpr int kMaxDegree = 32;

  Permutation() = default;
  explicit Permutation(int degree);

  /// Throws std::invalid_argument unless `images` is a bijection.
  static Permutation from_images(std::span<const int> images);
  static Permutation from_cycles(int degree,
                                 const std::vector<std::vector<int>>& cycles);

  int degree() const { return degree_; }
  int operator[](int point) const { return images_[point]; }
  int apply(int point) const { return images_[point]; }

  bool is_identity() const;
  Permutation inverse() const;
  /// Smallest m > 0 with p^m = identity.
  std::uint64_t order() const;
  bool is_even() const;
  Permutation power(std::int64_t exponent) const;
  /// Lexicographically first point moved, or -1.
  int first_moved_point() const;

  std::vector<std::vector<int>> cycles() const;
  std::vector<int> cycle_type() const;
  std::vector<int> images() const;

  /// "(0 1)(2 3 4)"; the identity prints as "()".
  std::string to_cycle_string() const;
  /// "[1,0,3,4,2]"
  std::string to_image_string() const;

  /// Accepts cycle notation (space or comma separated) or image-list
  /// notation. Cycle notation needs `degree`; image lists carry their own.
  static Permutation parse(std::string_view text, int degree = -1);

  /// Restriction to a contiguous point range that the permutation maps into
  /// itself, relabelled to start at 0.
  Permutation restrict_to(int first, int count) const;

  /// Disjoint sum: this on {0..d-1}, other on {d..d+e-1}.
  Permutation direct_sum(const Permutation& other) const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.degree_ == b.degree_ && a.images_ == b.images_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.images_ < b.images_;
  }

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxDegree> images_{};
  std::uint8_t degree_ = 0;

  friend Permutation compose(const Permutation& p, const Permutation& q);
};

/// (p o q)(i) = p(q(i)). Throws std::invalid_argument on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// g h g^-1
inline Permutation conjugate(const Permutation& h, const Permutation& g) {
  return g * h * g.inverse();
}

/// All distinct products of `generators` including the identity.
/// Throws TooLargeError once more than `cap` elements are found.
std::vector<Permutation> closure(int degree,
                                 const std::vector<Permutation>& generators,
                                 std::size_t cap = 5'000'000);

/// Raised by routines that refuse to materialize structures beyond a cap.
class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace orbigraph

template <>
struct std::hash<orbigraph::Permutation> {
  std::size_t operator()(const orbigraph::Permutation& p) const {
    return p.hash();
  }
};
