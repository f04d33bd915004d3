#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xg/intlinalg.hpp"
#include "xg/words.hpp"

namespace xg {

inline constexpr std::size_t kDefaultMaxCosets = 1'000'000;

/// Central-extension lifting data: generators spanning the central subgroup
/// and, per relator of the quotient presentation, a correction word σᵢ in
/// those generators with rᵢσᵢ = 1 in the extension.
struct LiftingData {
  std::vector<std::string> central_gens;
  std::vector<Word> sigma;
};

struct PresentationMeta {
  std::string witness_policy;
  /// Set when the witness set is a length bound on an infinite (or
  /// unenumerated) group: the result may only be a pre-image of 𝔛(G).
  bool may_be_proper_preimage = false;
};

/// ⟨X | R⟩ with relators stored freely and cyclically reduced. Trivial
/// relators are dropped.
class Presentation {
 public:
  Presentation() = default;
  Presentation(Alphabet generators, std::vector<Word> relators);

  const Alphabet& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t rank() const { return generators_.size(); }

  void add_relator(const Word& r);

  PresentationMeta meta;
  std::optional<LiftingData> lifting;

  bool operator==(const Presentation& o) const {
    return generators_ == o.generators_ && relators_ == o.relators_;
  }

 private:
  Alphabet generators_;
  std::vector<Word> relators_;
};

/// Grammar: `'<' gens '|' relators '>'`, comma separated. Generators may be
/// declared barred (`a~`). Relators use the word grammar of parse_word.
Presentation parse_presentation(std::string_view text);
std::string to_string(const Presentation& p);

/// Witness set = one word per nontrivial element of a finite G, obtained by
/// coset enumeration within `max_cosets`.
struct AllElements {
  std::size_t max_cosets = kDefaultMaxCosets;
};
/// Witness set = all reduced words of length ≤ k.
struct LengthBound {
  int k = 2;
};
/// AllElements when enumeration fits the budget, LengthBound(2) otherwise.
struct AutoWitness {
  std::size_t max_cosets = kDefaultMaxCosets;
};
using WitnessPolicy = std::variant<AllElements, LengthBound, AutoWitness>;

std::string describe(const WitnessPolicy& policy);
/// `all`, `len:k` or `auto`.
WitnessPolicy parse_witness_policy(std::string_view text, std::size_t max_cosets);

/// The witness words w used for the relators [w, w̄]: identity skipped and
/// inverse pairs deduplicated. Words are over P's generators.
std::vector<Word> witness_words(const Presentation& p, const WitnessPolicy& policy,
                                bool* exhaustive = nullptr);

/// Presentation of 𝔛(G) = (G ∗ Ḡ)/⟨⟨[g,ḡ]⟩⟩ on X ∪ X̄: relators R ∪ R̄ ∪ {[w,w̄]}.
/// P must not already contain barred generators.
Presentation sidki_double(const Presentation& p, const WitnessPolicy& policy);

/// Embeds a word over P's generators into the double's alphabet, optionally
/// on the barred copy.
Word lift_to_double(const Word& w, const Alphabet& base, const Alphabet& doubled, bool barred);

/// Abelianisation G/G′ from the relator exponent-sum matrix.
FinAbGroup abelianization(const Presentation& p);
/// Exponent-sum matrix: one row per relator, one column per generator.
IntMatrix<BigInt> exponent_matrix(const Presentation& p);

/// Clashing generator names get suffixes `_1` (left) and `_2` (right).
Presentation free_product(const Presentation& left, const Presentation& right);
Presentation direct_product(const Presentation& left, const Presentation& right);

}  // namespace xg
