#pragma once

// Finitely generated abelian groups with a right group action, given by one
// integer matrix per acting generator (x ↦ x·A on row vectors).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "xg/intlinalg.hpp"
#include "xg/permgroup.hpp"

namespace xg {

class QModule {
 public:
  QModule() = default;
  /// ℤʳ / rowspace(relations) with the given action matrices (each r×r).
  /// `inverse_action`, when given, holds the matrices of the inverse
  /// generators.
  QModule(std::size_t rank, IntMatrix<BigInt> relations, std::vector<IntMatrix<BigInt>> action,
          std::vector<IntMatrix<BigInt>> inverse_action = {});

  std::size_t rank() const { return quotient_.ambient_rank(); }
  const AbelianQuotient& quotient() const { return quotient_; }
  const FinAbGroup& underlying() const { return quotient_.group(); }
  const IntMatrix<BigInt>& relations() const { return quotient_.relations(); }
  const std::vector<IntMatrix<BigInt>>& action() const { return action_; }
  const std::vector<IntMatrix<BigInt>>& inverse_action() const { return inverse_action_; }

  /// Every matrix preserves the relation lattice and is onto modulo it, so
  /// it induces an automorphism; inverse matrices, if present, invert it.
  bool action_is_automorphic() const;
  /// Acting generator i corresponds to generator i of `acting`; each relator
  /// of `acting` must act as the identity.
  bool respects(std::span<const Word> acting_relators) const;
  /// Matrix of a word in the acting generators. Inverse letters need the
  /// inverse matrices.
  IntMatrix<BigInt> word_action(const Word& w) const;

  /// Rows are the same elements of the module.
  bool equal_in(const IntMatrix<BigInt>& a, const IntMatrix<BigInt>& b) const;

 private:
  AbelianQuotient quotient_;
  std::vector<IntMatrix<BigInt>> action_, inverse_action_;
};

/// Same ambient rank, same relation lattice, and action matrices that agree
/// modulo it.
bool same_module(const QModule& a, const QModule& b);

/// Subgroup spanned by the rows of `span` (ambient coordinates).
std::optional<BigInt> span_order(const QModule& v, const IntMatrix<BigInt>& span);
/// Exponent of that subgroup; 0 if it is infinite.
BigInt span_exponent(const QModule& v, const IntMatrix<BigInt>& span);
bool span_is_zero(const QModule& v, const IntMatrix<BigInt>& span);

/// Spanning rows of S·Aug: every row times (A − I) for every acting matrix.
/// S must be a submodule.
IntMatrix<BigInt> augmentation_step(const QModule& v, const IntMatrix<BigInt>& span);
/// Spanning rows of V·Augʲ for j = 0..steps.
std::vector<IntMatrix<BigInt>> augmentation_series(const QModule& v, std::size_t steps);

struct NotNilpotentAction {
  int cap = 0;
};
using ActionClass = std::variant<int, NotNilpotentAction>;

/// Least s ≤ cap with V·Augˢ = 0. The zero module has class 0.
ActionClass action_nilpotency_class(const QModule& v, int cap);
/// |V| + 3 for a finite module; throws ArgumentError for an infinite one.
int default_class_cap(const QModule& v);

struct AugmentationIdentities {
  BigInt k;                   // |V/2V|
  bool two_v_aug2_zero;       // 2·V·Aug² = 0
  bool v_aug_k_plus_3_zero;   // V·Aug^{k+3} = 0
};
AugmentationIdentities augmentation_identities(const QModule& v);

/// Aug(ℤG)/I₂ on the basis {g − 1 : g ≠ 1}, g in element order of G, acted
/// on by right multiplication with G's generators.
QModule aug_mod_I2(const PermGroup& g);

/// H/N for an abelian section, on the basis `basis` of elements of H, with
/// conjugation by `acting` (which must normalise H and N). Throws
/// ArgumentError if the section is not abelian or the basis does not
/// generate it.
QModule section_module(const PermGroup& h, std::span<const Permutation> basis, const PermGroup& n,
                       std::span<const Permutation> acting);

/// A = G′/G″ with conjugation by G's generators.
QModule derived_section(const PermGroup& g);
/// ((G′/G″) ⊗ (G′/G″)) modulo a^q ⊗ b^{q⁻¹} − a ⊗ b, with G's generators
/// acting on the first factor.
QModule module_M(const PermGroup& g);

}  // namespace xg
