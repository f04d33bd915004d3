#pragma once

// Free-group words over a two-sorted alphabet X ∪ X̄.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xg/errors.hpp"

namespace xg {

/// A generator name together with the copy it belongs to (g or ḡ).
/// Inversion is carried by the sign of a `Letter`, not by the symbol.
struct GenSymbol {
  std::string base;
  bool barred = false;

  auto operator<=>(const GenSymbol&) const = default;
  std::string text() const { return barred ? base + "~" : base; }
};

/// Letter +(i+1) is generator i of an alphabet and -(i+1) is its inverse.
using Letter = std::int32_t;

constexpr Letter letter_of(std::size_t index, int sign = 1) {
  return sign > 0 ? static_cast<Letter>(index + 1) : -static_cast<Letter>(index + 1);
}
constexpr std::size_t index_of(Letter l) { return static_cast<std::size_t>(l > 0 ? l : -l) - 1; }
constexpr int sign_of(Letter l) { return l > 0 ? 1 : -1; }

class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<GenSymbol> symbols);

  /// Adds `s` and returns its index. Throws ArgumentError on a duplicate or
  /// a name that is not an identifier.
  std::size_t add(GenSymbol s);
  std::optional<std::size_t> find(const GenSymbol& s) const;
  /// Throws AlphabetError if `s` is not declared.
  std::size_t index(const GenSymbol& s) const;
  Letter letter(const GenSymbol& s, int sign = 1) const { return letter_of(index(s), sign); }

  const GenSymbol& symbol(std::size_t i) const { return symbols_.at(i); }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<GenSymbol>& symbols() const { return symbols_; }

  /// Index of the symbol with the same base and the opposite bar flag.
  std::size_t partner(std::size_t i) const;
  bool has_bar_copies() const;

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<GenSymbol> symbols_;
  std::map<GenSymbol, std::size_t> lookup_;
};

bool is_identifier(std::string_view name);

/// Freely reduced word. Every constructor and operation re-establishes
/// reduction, so two words are equal in the free group iff they compare equal.
class Word {
 public:
  Word() = default;
  explicit Word(Letter l) : letters_{l} {}

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);
  static Word reduce(std::initializer_list<Letter> raw) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()));
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word pow(long k) const;
  /// by⁻¹ · w · by
  Word conjugate(const Word& by) const;
  /// Shortest cyclic conjugate obtained by stripping inverse end pairs.
  Word cyclic_reduction() const;
  bool is_cyclically_reduced() const;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  bool operator==(const Word&) const = default;
  /// Shortlex order.
  std::strong_ordering operator<=>(const Word& o) const;

 private:
  std::vector<Letter> letters_;
};

/// [u,v] = u⁻¹v⁻¹uv
Word commutator(const Word& u, const Word& v);
/// [w₁,…,wₙ] = [[w₁,…,wₙ₋₁],wₙ]; a single word is returned unchanged.
Word left_normed(std::span<const Word> ws);
/// γ₁(x,y) = [x,y], γₙ₊₁(x,y) = [γₙ(x,y), y]. Throws ArgumentError for n < 1.
Word engel_word(const Word& x, const Word& y, int n);

/// Images of a word under the letter maps of 𝔛(G). All outputs are words in
/// the unbarred letters of the same alphabet, except `bar`.
struct StructuralImages {
  Word bar;    // swaps g and ḡ
  Word pi;     // g, ḡ ↦ g
  Word pibar;  // g ↦ 1, ḡ ↦ g
  std::array<Word, 3> rho;  // g ↦ (g,g,1), ḡ ↦ (1,g,g)
};

StructuralImages structural_maps(const Alphabet& alphabet, const Word& w);
Word bar(const Alphabet& alphabet, const Word& w);

/// Applies a letter-by-letter substitution: generator i maps to images[i].
Word substitute(const Word& w, std::span<const Word> images);

/// Exponent sum of each generator.
std::vector<long> exponent_sums(const Word& w, std::size_t alphabet_size);

// Text form: juxtaposition or `*`, `^k`, `^-k`, `( … )`, `[u,v,…]`
// (left-normed), `~` suffix for barred generators, `l_g` for g⁻¹ḡ, `1`.
Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string to_string(const Word& w, const Alphabet& alphabet);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace xg
