#pragma once

// Todd–Coxeter coset enumeration.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xg/permutation.hpp"
#include "xg/presentation.hpp"
#include "xg/words.hpp"

namespace xg {

enum class Strategy {
  hlt,     // relator scanning with lookahead when the table fills
  felsch,  // definitions in table order, deductions processed eagerly
};

struct EnumerationOptions {
  std::size_t max_cosets = kDefaultMaxCosets;
  Strategy strategy = Strategy::hlt;
};

/// Closed coset table: right action of every generator on the cosets of the
/// subgroup. Coset 0 is the subgroup itself; numbering is discovery order
/// with dead cosets compacted away.
class CosetTable {
 public:
  CosetTable() : CosetTable({}, {}) {}
  CosetTable(std::vector<std::vector<std::uint32_t>> actions, std::vector<Word> subgroup_words);

  std::size_t size() const { return size_; }
  std::size_t rank() const { return forward_.size(); }
  const std::vector<Word>& subgroup_words() const { return subgroup_words_; }

  std::uint32_t act(std::size_t coset, Letter l) const {
    return sign_of(l) > 0 ? forward_[index_of(l)][coset] : backward_[index_of(l)][coset];
  }
  std::size_t apply(std::size_t coset, const Word& w) const;

  /// Permutation induced by generator i.
  Permutation generator_permutation(std::size_t i) const { return Permutation(forward_[i]); }

  /// Shortlex-least word leading from coset 0 to each coset (BFS over the
  /// generators in alphabet order, positive letter before inverse).
  std::vector<Word> transversal() const;

  /// Every relator fixes every coset and every subgroup word fixes coset 0.
  bool is_consistent_with(const Presentation& p) const;

 private:
  std::size_t size_ = 0;
  std::vector<std::vector<std::uint32_t>> forward_, backward_;
  std::vector<Word> subgroup_words_;
};

/// Enumerates cosets of ⟨subgens⟩ in the group presented by P. Throws
/// CosetOverflow when live cosets exceed the budget.
CosetTable enumerate(const Presentation& p, std::span<const Word> subgens,
                     const EnumerationOptions& options = {});

/// Induced permutation of a word. With a trivial subgroup this is the
/// regular representation, so w = 1 in G iff the image is the identity.
Permutation word_image(const CosetTable& table, const Word& w);

}  // namespace xg
