#pragma once

// Independent reference computations shared by the tests. Deliberately naive.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "xg/permutation.hpp"
#include "xg/words.hpp"

namespace oracle {

/// All elements generated by `gens`, by closure under right multiplication.
inline std::set<xg::Permutation> closure(const std::vector<xg::Permutation>& gens, std::size_t degree) {
  std::set<xg::Permutation> seen{xg::Permutation::identity(degree)};
  std::vector<xg::Permutation> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    xg::Permutation x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      xg::Permutation y = x * g;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

/// Letter sequence with cancellation done by a stack, independent of Word.
inline std::vector<xg::Letter> stack_reduce(const std::vector<xg::Letter>& raw) {
  std::vector<xg::Letter> out;
  for (auto l : raw) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline std::vector<xg::Letter> random_letters(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), gen(0, rank - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<xg::Letter> out(len(rng));
  for (auto& l : out) l = xg::letter_of(gen(rng), sign(rng) ? 1 : -1);
  return out;
}

inline xg::Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  return xg::Word::reduce(random_letters(rng, rank, max_len));
}

}  // namespace oracle
