#pragma once

// Van Kampen area certificates w = ∏ θᵢ⁻¹ rᵢ^{±1} θᵢ, checked by free reduction.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "xg/presentation.hpp"
#include "xg/words.hpp"

namespace xg {

struct CertificateFactor {
  Word theta;
  std::size_t relator = 0;
  int sign = 1;

  bool operator==(const CertificateFactor&) const = default;
};

struct AreaCertificate {
  Word word;
  std::vector<CertificateFactor> factors;

  std::size_t area() const { return factors.size(); }
  std::size_t radius() const;
};

/// ∏ θᵢ⁻¹ rᵢ^{±1} θᵢ, freely reduced. Throws ArgumentError on a relator
/// index out of range.
Word certificate_product(const Presentation& p, const AreaCertificate& c);
bool check_certificate(const Presentation& p, const AreaCertificate& c);

/// Writes f as θ⁻¹ r^{±1} θ for a relator r of p, if f is such a conjugate.
std::optional<CertificateFactor> as_relator_conjugate(const Presentation& p, const Word& f);

/// ⟨a, b | [a, b]⟩
Presentation commutator_presentation();
/// n² conjugates of [a,b] with conjugators aⁱbʲ, 0 ≤ i, j < n, for [aⁿ, bⁿ].
AreaCertificate grid_certificate(int n);

struct AreaSearchResult {
  std::optional<std::size_t> minimum;  // nullopt: Unknown within the bounds
  std::optional<AreaCertificate> certificate;
  std::size_t distinct_conjugates = 0;
  /// A product level hit `max_level_size`; larger areas were not examined.
  bool truncated = false;
};
/// Exhaustive search over conjugators of length ≤ max_radius in shortlex
/// order, meeting in the middle on products of conjugates. Areas whose
/// exponent sums cannot match are skipped.
AreaSearchResult minimal_area_search(const Presentation& p, const Word& w, std::size_t max_area,
                                     std::size_t max_radius,
                                     std::size_t max_level_size = 4'000'000);

struct CentralCost {
  std::uint64_t commutations = 0;          // swaps of a central letter past a quotient letter
  std::uint64_t relator_applications = 0;  // uses of rᵢσᵢ = 1
  std::uint64_t total = 0;
  std::uint64_t n = 0, area = 0, radius = 0, mu = 0;
  /// n² + μ·N·ρ + N + (n + μN)² with the certificate's own N and ρ.
  std::uint64_t itemized_bound = 0;
  /// n² + μδ² + δ + (n + μδ)² at δ = max(N, ρ).
  std::uint64_t closed_form_bound = 0;
  bool within_bound = false;
};

struct CentralTransform {
  /// Certificate over the total presentation for w·(central part).
  AreaCertificate certificate;
  Word central_part;
  CentralCost cost;
};

/// Lifts a certificate over G/C to one over G: every rᵢ is traded for σᵢ⁻¹
/// using rᵢσᵢ = 1, then the central letters are commuted to the right.
/// Generators are matched by name. `lifting.sigma[i]` is over the total
/// alphabet. Without `verify`, each rᵢσᵢ must be a relator of `total` up to
/// cyclic permutation and inversion; otherwise `verify` decides.
CentralTransform central_transform(const Presentation& quotient, const Presentation& total,
                                   const LiftingData& lifting, const AreaCertificate& c,
                                   const std::function<bool(const Word&)>& verify = {});

/// {a, b, la, lb}: la and lb stand for ℓ_a = a⁻¹ā and ℓ_b = b⁻¹b̄.
Alphabet cn_alphabet();
/// {la, lb, lambda} with λ = ℓ_aℓ_bℓ_{ab}⁻¹.
Alphabet l_alphabet();
/// {a, b, a~, b~}
Alphabet double_ab_alphabet();

struct CnWord {
  /// ℓ_aⁿ · ℓ_bⁿ · (b⁻ⁿ ℓ_aⁿ bⁿ ℓ_bⁿ)⁻¹ letter for letter, before reduction.
  std::vector<Letter> spelling;
  Word word;  // the same, freely reduced
};
CnWord c_n_word(int n);

/// Words over cn_alphabet() or l_alphabet() expanded over double_ab_alphabet().
Word cn_to_double(const Word& w);
Word l_to_double(const Word& w);

struct FreeAreaReduction {
  Word V;  // over {la, lb}
  struct Factor {
    Word theta;  // over {la, lb}
    int sign = 1;
  };
  std::vector<Factor> factors;
  bool round_trip = false;    // w = V · ∏ λ^{±θᵢ} freely
  bool pbar_trivial = false;  // the image killing a, b is trivial
  bool v_empty = false;
  /// Image under the map killing barred letters: a certificate over
  /// ⟨a, b | [a,b]⟩ for ρ₁(V⁻¹w), with conjugators θᵢ(a⁻¹, b⁻¹). This is
  /// ρ₁(w) itself when V is empty.
  AreaCertificate projected;
  bool projected_valid = false;
};
/// Uses vu^v = uv to push every λ^{±1} to the right.
FreeAreaReduction reduce_to_free_area(const Word& w);

struct DistortionBracket {
  std::size_t lower = 0;  // n², from the projected certificate
  std::optional<std::size_t> upper;
};
/// Lower bound only: an upper bound needs an L-word for c_n certified in
/// 𝔛(F), which this library does not construct.
DistortionBracket distortion_bracket(int n);

}  // namespace xg
