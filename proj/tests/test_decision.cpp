#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "xg/decision.hpp"

using namespace xg;

namespace {

using Kind = Verdict::Kind;

const char* kS3 = "<a,b|a^2,b^2,(a*b)^3>";

std::shared_ptr<const XRealization> realize(const char* text) {
  return std::make_shared<const XRealization>(build(parse_presentation(text)));
}

// Ball sizes by breadth-first search on the permutation realization.
std::vector<std::size_t> perm_balls(const PermGroup& g, std::size_t radius) {
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) {
    gens.push_back(x);
    gens.push_back(x.inverse());
  }
  std::set<Permutation> seen{g.identity()};
  std::vector<Permutation> frontier{g.identity()};
  std::vector<std::size_t> sizes{1};
  for (std::size_t r = 0; r < radius; ++r) {
    std::vector<Permutation> next;
    for (const auto& x : frontier)
      for (const auto& s : gens)
        if (seen.insert(x * s).second) next.push_back(x * s);
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

}  // namespace

TEST_CASE("base oracles") {
  Alphabet ab{{"a", false}, {"b", false}};
  auto fr = free_group_oracle(ab);
  auto fa = free_abelian_oracle(ab);
  Word c = parse_word("[a,b]", ab);
  CHECK(fr.decide(c) == Decision::nontrivial);
  CHECK(fa.decide(c) == Decision::trivial);
  CHECK(fr.decide(Word{}) == Decision::trivial);
  auto s3 = finite_group_oracle(parse_presentation(kS3));
  CHECK(s3.decide(parse_word("(a*b)^3", ab)) == Decision::trivial);
  CHECK(s3.decide(parse_word("a*b", ab)) == Decision::nontrivial);
}

TEST_CASE("fast path agrees with the realization on random words") {
  for (const char* t : {"<a|a^2>", kS3, "<a,b|a^4,b^2,(a*b)^2>"}) {
    auto x = realize(t);
    XWordProblem wp(x);
    REQUIRE(wp.has_fast_path());
    std::mt19937_64 rng(53);
    for (int i = 0; i < 2000; ++i) {
      Word w = oracle::random_word(rng, x->doubled.rank(), 20);
      auto v = xg_word_problem(wp, w);
      CHECK(v.kind == (x->image(w).is_identity() ? Kind::trivial : Kind::nontrivial));
    }
  }
}

TEST_CASE("general path agrees with the fast path on the double of C2") {
  auto base = parse_presentation("<a|a^2>");
  auto doubled = sidki_double(base, AllElements{});
  XWordProblem general(base, finite_group_oracle(base), doubled);
  XWordProblem fast(realize("<a|a^2>"));
  std::mt19937_64 rng(59);
  for (int i = 0; i < 300; ++i) {
    Word w = oracle::random_word(rng, 2, 10);
    auto g = general.decide(w);
    auto f = fast.decide(w);
    CHECK(g.kind != Kind::unknown);
    CHECK(g.kind == f.kind);
    if (g.kind == Kind::trivial && g.method == "certificate") {
      REQUIRE(g.certificate);
      CHECK(check_certificate(doubled, *g.certificate));
    }
  }
}

TEST_CASE("rho separates whatever it can") {
  auto base = parse_presentation(kS3);
  XWordProblem wp(base, finite_group_oracle(base), sidki_double(base, AllElements{}));
  const Alphabet& A = wp.doubled().generators();
  auto v = wp.decide(parse_word("a*b~", A));
  CHECK(v.kind == Kind::nontrivial);
  CHECK(v.method == "rho");
  CHECK(v.rho_coordinate == 0);
  auto rel = wp.decide(parse_word("b^-1*[a,a~]*b", A));
  CHECK(rel.kind == Kind::trivial);
  REQUIRE(rel.certificate);
  CHECK(rel.certificate->area() == 1);
}

TEST_CASE("a nontrivial element of W is separated by a finite quotient") {
  auto x = realize("<a,b|a^4,b^2,(a*b)^2>");
  REQUIRE(x->W.order() == 2);
  const auto& base = x->base;
  XWordProblem general(base, finite_group_oracle(base), x->doubled);
  XWordProblem fast(x);
  // Find a word with trivial ρ that is not trivial in 𝔛(D₄).
  std::mt19937_64 rng(61);
  std::optional<Word> w;
  const Alphabet& A = x->doubled.generators();
  for (int i = 0; i < 20000 && !w; ++i) {
    Word u = oracle::random_word(rng, A.size(), 6), v = oracle::random_word(rng, A.size(), 6);
    Word c = commutator(u, v);
    if (x->rho_image(c).is_identity() && !x->image(c).is_identity()) w = c;
  }
  REQUIRE(w);
  CHECK(fast.decide(*w).kind == Kind::nontrivial);
  // 𝔛(D₄) has order 256, so its regular action is among the candidates.
  WPBudget budget;
  budget.max_quotient_degree = 256;
  budget.laps = 7;
  auto v = general.decide(*w, budget);
  CHECK(v.kind == Kind::nontrivial);
  CHECK(v.method == "quotient");
  REQUIRE(v.quotient_images.size() == A.size());
  CHECK_FALSE(evaluate(v.quotient_images, *w).is_identity());
  for (const auto& r : x->doubled.relators()) CHECK(evaluate(v.quotient_images, r).is_identity());
}

TEST_CASE("concurrent and sequential runs agree") {
  auto base = parse_presentation("<a|a^2>");
  XWordProblem wp(base, finite_group_oracle(base), sidki_double(base, AllElements{}));
  std::mt19937_64 rng(67);
  WPBudget seq;
  seq.concurrent = false;
  for (int i = 0; i < 100; ++i) {
    Word w = oracle::random_word(rng, 2, 10);
    CHECK(wp.decide(w).kind == wp.decide(w, seq).kind);
  }
}

TEST_CASE("letters outside the double are rejected") {
  XWordProblem wp(realize("<a|a^2>"));
  CHECK_THROWS_AS(wp.decide(Word(letter_of(5))), AlphabetError);
}

TEST_CASE("ball sizes of Z, Z squared, the free group and the double of Z") {
  Alphabet a1{{"a", false}};
  auto z = ball_sizes(symmetric_generators(a1), equality_from(free_group_oracle(a1)), 6);
  for (std::size_t n = 0; n < z.size(); ++n) CHECK(z[n] == 2 * n + 1);

  auto dz = sidki_double(parse_presentation("<a|>"), LengthBound{2});
  const Alphabet& D = dz.generators();
  auto xz = ball_sizes(symmetric_generators(D), equality_from(free_abelian_oracle(D)), 8);
  REQUIRE(xz.size() == 9);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(xz[n] == 2 * n * n + 2 * n + 1);

  Alphabet ab{{"a", false}, {"b", false}};
  auto f2 = ball_sizes(symmetric_generators(ab), equality_from(free_group_oracle(ab)), 4);
  for (std::size_t n = 0; n < f2.size(); ++n) CHECK(f2[n] == 2 * std::size_t(std::pow(3, n)) - 1);
}

TEST_CASE("ball sizes through the word problem match the realization") {
  auto x = realize(kS3);
  auto wp = std::make_shared<XWordProblem>(x);
  EqualityOracle eq = [wp](const Word& u, const Word& v) -> std::optional<bool> {
    return wp->decide(u * v.inverse()).kind == Kind::trivial;
  };
  auto sizes = ball_sizes(symmetric_generators(x->doubled.generators()), eq, 8);
  CHECK(sizes == perm_balls(x->X, 8));
  CHECK(sizes.back() == 108);
}

TEST_CASE("ball sizes do not depend on generator order") {
  auto x = realize(kS3);
  auto wp = std::make_shared<XWordProblem>(x);
  EqualityOracle eq = [wp](const Word& u, const Word& v) -> std::optional<bool> {
    return wp->decide(u * v.inverse()).kind == Kind::trivial;
  };
  auto gens = symmetric_generators(x->doubled.generators());
  auto forward = ball_sizes(gens, eq, 5);
  std::reverse(gens.begin(), gens.end());
  CHECK(ball_sizes(gens, eq, 5) == forward);
}

TEST_CASE("undecided equality stops the ball search with partial sizes") {
  Alphabet a1{{"a", false}};
  EqualityOracle eq = [](const Word& u, const Word& v) -> std::optional<bool> {
    if (u.length() + v.length() > 3) return std::nullopt;
    return u == v;
  };
  try {
    ball_sizes(symmetric_generators(a1), eq, 5);
    FAIL("expected IncompleteGrowth");
  } catch (const IncompleteGrowth& e) {
    CHECK_FALSE(e.partial().empty());
    CHECK(e.partial()[0] == 1);
  }
}

TEST_CASE("growth classifier") {
  auto poly = [](int d, int n) {
    std::vector<std::size_t> s;
    for (int r = 0; r <= n; ++r) s.push_back(std::size_t(std::pow(r + 1, d)));
    return s;
  };
  CHECK(to_string(growth_classifier({1, 5, 13, 25, 41, 61, 85, 113, 145})) == "PolynomialDegree(2)");
  CHECK(to_string(growth_classifier({1, 3, 5, 7, 9, 11, 13})) == "PolynomialDegree(1)");
  CHECK(to_string(growth_classifier(poly(3, 10))) == "PolynomialDegree(3)");
  std::vector<std::size_t> z3;
  for (std::size_t n = 0; n <= 10; ++n) z3.push_back((2 * n + 1) * (2 * n * n + 2 * n + 3) / 3);
  CHECK(to_string(growth_classifier(z3)) == "PolynomialDegree(3)");
  auto e = growth_classifier({1, 5, 17, 53, 161});
  CHECK(e.kind == GrowthClass::Kind::exponential);
  CHECK(e.rate == doctest::Approx(3.08).epsilon(0.02));
  CHECK(e.heuristic);
  CHECK(growth_classifier({1, 3, 7, 15, 31, 63}).kind == GrowthClass::Kind::exponential);
  auto fin = growth_classifier({1, 5, 15, 37, 69, 97, 108, 108, 108});
  CHECK(fin.kind == GrowthClass::Kind::polynomial);
  CHECK(fin.degree == 0);
  CHECK_THROWS_AS(growth_classifier({1, 3, 5}), ArgumentError);
}
