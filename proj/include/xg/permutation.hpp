#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace xg {

/// Permutation of {0, …, n-1} acting on the right: point·(p*q) = (point·p)·q.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::size_t point) const { return images_[point]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// Apply *this first, then rhs.
  Permutation operator*(const Permutation& rhs) const;
  Permutation pow(long k) const;
  std::size_t order() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

std::string to_string(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace xg
