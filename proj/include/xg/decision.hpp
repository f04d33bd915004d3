#pragma once

// Word problem in 𝔛(G) on top of a word-problem oracle for G, and growth of
// Cayley balls from equality oracles.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xg/errors.hpp"
#include "xg/isoperimetry.hpp"
#include "xg/permutation.hpp"
#include "xg/presentation.hpp"
#include "xg/sidki.hpp"

namespace xg {

enum class Decision { trivial, nontrivial };

struct WPOracle {
  Alphabet alphabet;
  std::function<Decision(const Word&)> decide;
};

WPOracle free_group_oracle(const Alphabet& a);
/// Trivial iff every exponent sum vanishes.
WPOracle free_abelian_oracle(const Alphabet& a);
/// Regular representation from a closed coset table over the trivial subgroup.
WPOracle finite_group_oracle(const Presentation& p, std::size_t max_cosets = kDefaultMaxCosets);

struct WPBudget {
  std::size_t max_area = 4;
  std::size_t max_radius = 2;
  std::size_t max_quotient_degree = 32;
  std::size_t random_attempts = 200;  // random permutation images per degree per lap
  std::size_t laps = 6;
  std::size_t max_level_size = 200'000;  // products kept per certificate-search level
  std::uint64_t seed = 1;
  bool concurrent = true;
};

struct Verdict {
  enum class Kind { trivial, nontrivial, unknown };
  Kind kind = Kind::unknown;
  /// "realization", "rho", "certificate" or "quotient"; empty when unknown.
  std::string method;
  std::optional<AreaCertificate> certificate;  // over the double
  int rho_coordinate = -1;                      // first nontrivial coordinate of ρ(w)
  Word rho_witness;                             // that coordinate, over G's alphabet
  std::vector<Permutation> quotient_images;     // one per generator of the double
  struct Spent {
    std::size_t area = 0, radius = 0, quotient_degree = 0, laps = 0;
  } spent;
};

std::string to_string(Verdict::Kind k);

class XWordProblem {
 public:
  /// `base` presents G with `oracle` deciding its word problem; `doubled` is
  /// its Sidki double.
  XWordProblem(Presentation base, WPOracle oracle, Presentation doubled);
  /// Uses the finite realization for exact answers.
  explicit XWordProblem(std::shared_ptr<const XRealization> realization);

  const Presentation& doubled() const { return doubled_; }
  bool has_fast_path() const { return !fwd_.empty(); }

  /// Throws AlphabetError for a letter outside the double's alphabet.
  Verdict decide(const Word& w, const WPBudget& budget = {}) const;
  /// decide() without the fast path.
  Verdict decide_general(const Word& w, const WPBudget& budget = {}) const;

 private:
  bool fast_trivial(const Word& w) const;

  Presentation base_, doubled_;
  WPOracle oracle_;
  std::vector<std::vector<std::uint32_t>> fwd_, bwd_;
};

/// Convenience wrapper around XWordProblem::decide.
Verdict xg_word_problem(const XWordProblem& setup, const Word& w, const WPBudget& budget = {});

/// Decides u = v, i.e. whether u·v⁻¹ is trivial. Returning nullopt means
/// the oracle could not decide.
using EqualityOracle = std::function<std::optional<bool>(const Word&, const Word&)>;

/// Thrown when an equality query comes back undecided.
class IncompleteGrowth : public BudgetError {
 public:
  IncompleteGrowth(std::vector<std::size_t> partial)
      : BudgetError("equality oracle returned Unknown; partial ball sizes kept"),
        partial_(std::move(partial)) {}
  const std::vector<std::size_t>& partial() const { return partial_; }

 private:
  std::vector<std::size_t> partial_;
};

/// Every generator letter and its inverse.
std::vector<Word> symmetric_generators(const Alphabet& a);
/// |B(n)| for n = 0..radius by breadth-first search with pairwise equality
/// tests against the ball found so far.
std::vector<std::size_t> ball_sizes(const std::vector<Word>& gens, const EqualityOracle& eq,
                                    std::size_t radius);
EqualityOracle equality_from(const WPOracle& oracle);

struct GrowthClass {
  enum class Kind { polynomial, exponential, inconclusive };
  Kind kind = Kind::inconclusive;
  int degree = 0;     // polynomial
  double rate = 0;    // exponential
  double slope = 0;   // log-log slope on the upper half
  bool heuristic = true;
};
/// Needs at least four sizes; throws ArgumentError otherwise.
GrowthClass growth_classifier(const std::vector<std::size_t>& sizes);
std::string to_string(const GrowthClass& g);

}  // namespace xg
