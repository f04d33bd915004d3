#pragma once

// Finite realizations of 𝔛(G) and machine checks of its structure.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xg/enumerator.hpp"
#include "xg/permgroup.hpp"
#include "xg/presentation.hpp"
#include "xg/zqmodules.hpp"

namespace xg {

struct BuildOptions {
  std::size_t max_cosets = kDefaultMaxCosets;
  std::size_t guard = kDefaultGuard;
  /// Throw VerificationError on the first failed check instead of recording it.
  bool strict = true;
  /// The ℓ-identities are checked on all pairs up to this |G|, else sampled.
  std::size_t ell_exhaustive_limit = 100;
  std::size_t ell_samples = 2000;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // empty when the check passes
};

struct XRealization {
  Presentation base, doubled;
  CosetTable base_table, table;
  /// Shortlex word for each element of G, indexed by coset.
  std::vector<Word> g_words;

  PermGroup G;   // regular realization of G
  PermGroup X;   // regular realization of 𝔛(G)
  PermGroup G3;  // G × G × G on three blocks of points
  std::vector<Permutation> gen_images;  // X generators in alphabet order
  /// ℓ_g = g⁻¹ḡ for g ≠ 1, g running over G.elements() (identity excluded).
  std::vector<Permutation> ell;

  PermGroup D, L, W, DL, G_image, im_rho, ker_rho;
  std::optional<GroupHom> rho, pi;

  std::vector<CheckResult> checks;
  bool all_pass() const;

  /// Image in X of a word over the double's alphabet.
  Permutation image(const Word& w) const;
  /// ρ(w) as an element of G3.
  Permutation rho_image(const Word& w) const;
  /// Image in X of a word over the base alphabet, on either copy.
  Permutation lift_image(const Word& w, bool barred) const;
};

/// Enumerates G and 𝔛(G) (AllElements witnesses), assembles D, L, W, ρ, π
/// and runs the structural checks.
XRealization build(const Presentation& p, const BuildOptions& options = {});

CheckResult check_im_rho(const XRealization& x);
CheckResult ell_identity_check(const XRealization& x, std::size_t samples, std::uint64_t seed = 1);

struct NilpotenceReport {
  NilpotencyClass class_G, class_X;
  /// Holds unless G is nilpotent and 𝔛(G) is not.
  bool pass = true;
};
NilpotenceReport nilpotence_report(const XRealization& x);

struct EngelCertificate {
  int n = 0, d = 0, s = 0, m = 0;
  bool verdict = false;
  /// Least Engel degree of 𝔛(G), when it is at most m.
  std::optional<int> minimal_engel_X;
};
/// Throws ArgumentError if G is not Engel.
EngelCertificate engel_certificate(const XRealization& x);

/// L/L′ on the basis ℓ_g (same order as x.ell), acted on by conjugation
/// with the unbarred generators.
QModule l_abelianization(const XRealization& x);
/// W with conjugation by all generators of 𝔛(G).
QModule w_module(const XRealization& x);
/// s: class of the action of G on L/L′, computed on Aug(ℤG)/I₂.
int action_class_s(const XRealization& x);

struct ModuleConsistency {
  FinAbGroup aug, l_mod_l_prime;
  bool lattices_agree = false;  // ℓ_g ↦ g − 1 is an isomorphism of modules
  AugmentationIdentities identities;
  int s = 0;
  std::vector<CheckResult> checks;
};
ModuleConsistency module_consistency(const XRealization& x);

struct WStructureReport {
  int s = 0;
  BigInt order_M, exponent_M, order_W, order_N, exponent_N;
  std::uint64_t order_W_cap_L_prime = 0;
  bool g_prime_perfect = false;
  std::optional<int> w_action_class;
  std::vector<CheckResult> checks;
};
WStructureReport w_structure_checks(const XRealization& x);

}  // namespace xg
