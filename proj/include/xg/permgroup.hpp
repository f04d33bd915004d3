#pragma once

// Finite permutation groups: stabilizer chains, element sets under a size
// guard, subgroup constructions, series, nilpotency and Engel checks.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "xg/enumerator.hpp"
#include "xg/permutation.hpp"
#include "xg/words.hpp"

namespace xg {

namespace detail {
class StabilizerChain;
}

inline constexpr std::size_t kDefaultGuard = 100'000;

class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t guard = kDefaultGuard);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::size_t guard() const { return guard_; }
  Permutation identity() const { return Permutation::identity(degree_); }

  /// Exact order from a stabilizer chain.
  std::uint64_t order() const;
  bool contains(const Permutation& g) const;
  /// Sorted element list. Throws GuardError when the order exceeds the guard.
  const std::vector<Permutation>& elements() const;
  /// Position of g in elements(), or npos.
  std::size_t element_index(const Permutation& g) const;

  bool is_trivial() const { return order() == 1; }
  bool is_abelian() const;
  bool is_subgroup_of(const PermGroup& other) const;
  /// Same degree and same element set.
  bool operator==(const PermGroup& other) const;

 private:
  struct Cache;
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::size_t guard_;
  std::shared_ptr<Cache> cache_;
};

/// Product of the images of the letters of w; `images[i]` is generator i.
Permutation evaluate(std::span<const Permutation> images, const Word& w);
/// x⁻¹y⁻¹xy
Permutation commutator(const Permutation& x, const Permutation& y);
/// Permutation of degree Σ degᵢ acting on consecutive blocks.
Permutation direct_sum(std::span<const Permutation> parts);

/// Regular representation of the group presented by a closed coset table
/// over the trivial subgroup.
PermGroup perm_realization(const CosetTable& table, std::size_t guard = kDefaultGuard);

PermGroup subgroup(const PermGroup& g, std::vector<Permutation> gens);
/// Smallest subgroup of g containing gens and normalised by g's generators.
PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> gens);
/// Element filtering under the guard of the smaller group.
PermGroup intersection(const PermGroup& h, const PermGroup& k);
PermGroup center(const PermGroup& g);
/// Subgroup of h commuting elementwise with every generator of k.
PermGroup centralizer(const PermGroup& h, const PermGroup& k);
/// [H, K] as the normal closure in `parent` of the generator commutators.
PermGroup commutator_subgroup(const PermGroup& parent, const PermGroup& h, const PermGroup& k);
PermGroup derived_subgroup(const PermGroup& g);
/// γ₁ = G, γᵢ₊₁ = [γᵢ, G], until a term repeats.
std::vector<PermGroup> lower_central_series(const PermGroup& g);
/// Action of g on the orbits of a normal subgroup n. For a regular g this
/// is a faithful realization of g/n.
PermGroup quotient_action(const PermGroup& g, const PermGroup& n);

struct NotNilpotent {
  /// Order of the term at which the lower central series stabilised.
  std::uint64_t stable_order = 0;
};
using NilpotencyClass = std::variant<int, NotNilpotent>;

/// Number of steps for the lower central series to reach 1; the trivial
/// group has class 0.
NilpotencyClass nilpotency_class(const PermGroup& g);
bool is_perfect(const PermGroup& g);

struct ExceedsCap {
  int cap = 0;
  Permutation a, b;  // a pair with γ_cap(a, b) ≠ 1
};
using EngelClass = std::variant<int, ExceedsCap>;

/// γₙ(a,b) = 1 for all a, b. Exhaustive over elements; b runs over
/// conjugacy class representatives.
bool is_n_engel(const PermGroup& g, int n);
/// Least n ≤ cap with g n-Engel; abelian groups, including the trivial
/// group, return 1.
EngelClass minimal_engel_class(const PermGroup& g, int cap);

/// Conjugacy class representatives (least element of each class).
std::vector<Permutation> class_representatives(const PermGroup& g);

/// Homomorphism given by generator images. Construction checks that the
/// images lie in the target and define a homomorphism (the graph subgroup
/// projects isomorphically onto the source).
class GroupHom {
 public:
  GroupHom(PermGroup source, PermGroup target, std::vector<Permutation> images);

  const PermGroup& source() const { return source_; }
  const PermGroup& target() const { return target_; }
  const std::vector<Permutation>& images() const { return images_; }

  Permutation apply(const Permutation& x) const;
  PermGroup kernel() const;
  PermGroup image() const;

 private:
  PermGroup source_, target_;
  std::vector<Permutation> images_;
  PermGroup kernel_;
  // Graph subgroup on target points then source points, with the source
  // points as leading base points.
  std::shared_ptr<const detail::StabilizerChain> graph_chain_;
};

}  // namespace xg
