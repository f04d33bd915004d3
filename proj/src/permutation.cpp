#include "xg/permutation.hpp"

#include <sstream>

#include "xg/errors.hpp"

namespace xg {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ArgumentError("image list is not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) throw ArgumentError("degree mismatch in permutation product");
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[i] = rhs.images_[images_[i]];
  return p;
}

Permutation Permutation::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Permutation result = identity(degree()), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::size_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t order = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::string to_string(const Permutation& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.degree(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out << '(';
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      out << j << (p(j) == i ? "" : ",");
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "()";
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace xg
