#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "xg/io.hpp"
#include "xg/isoperimetry.hpp"

using namespace xg;

namespace {

// Product of the factors by naive concatenation and stack cancellation.
std::vector<Letter> naive_product(const Presentation& p, const AreaCertificate& c) {
  std::vector<Letter> raw;
  for (const auto& f : c.factors) {
    Word r = f.sign > 0 ? p.relators()[f.relator] : p.relators()[f.relator].inverse();
    Word ti = f.theta.inverse();
    raw.insert(raw.end(), ti.letters().begin(), ti.letters().end());
    raw.insert(raw.end(), r.letters().begin(), r.letters().end());
    raw.insert(raw.end(), f.theta.letters().begin(), f.theta.letters().end());
  }
  return oracle::stack_reduce(raw);
}

std::vector<Letter> letters(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

Word ab_word(const char* t) { return parse_word(t, commutator_presentation().generators()); }

Presentation heisenberg() { return load_presentation(XG_DATA_DIR "/heisenberg.json"); }

}  // namespace

TEST_CASE("grid certificates have area n^2 and radius 2n-2") {
  auto p = commutator_presentation();
  for (int n = 1; n <= 10; ++n) {
    auto c = grid_certificate(n);
    CHECK(c.area() == std::size_t(n * n));
    CHECK(c.radius() == std::size_t(2 * n - 2));
    CHECK(check_certificate(p, c));
    Word an = ab_word("a").pow(n), bn = ab_word("b").pow(n);
    CHECK(c.word == commutator(an, bn));
    CHECK(naive_product(p, c) == letters(c.word));
  }
}

TEST_CASE("tampered certificates are rejected") {
  auto p = commutator_presentation();
  auto c = grid_certificate(3);
  c.factors[4].sign = -c.factors[4].sign;
  CHECK_FALSE(check_certificate(p, c));
  auto d = grid_certificate(3);
  d.factors.pop_back();
  CHECK_FALSE(check_certificate(p, d));
  auto e = grid_certificate(2);
  e.factors[0].relator = 3;
  CHECK_THROWS_AS(certificate_product(p, e), ArgumentError);
}

TEST_CASE("random certificates round trip through the checker") {
  auto p = parse_presentation("<a,b|a^3,b^2,(a*b)^2>");
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    AreaCertificate c;
    int k = int(rng() % 5);
    for (int j = 0; j < k; ++j)
      c.factors.push_back({oracle::random_word(rng, 2, 6), rng() % p.relators().size(), rng() % 2 ? 1 : -1});
    c.word = Word::reduce(naive_product(p, c));
    CHECK(check_certificate(p, c));
    CHECK(letters(certificate_product(p, c)) == naive_product(p, c));
  }
}

TEST_CASE("recognising single relator conjugates") {
  auto p = parse_presentation("<a,b|a^3,[a,b]>");
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    Word theta = oracle::random_word(rng, 2, 7);
    std::size_t r = rng() % 2;
    int sign = rng() % 2 ? 1 : -1;
    Word rel = sign > 0 ? p.relators()[r] : p.relators()[r].inverse();
    Word f = rel.conjugate(theta);
    auto found = as_relator_conjugate(p, f);
    REQUIRE(found);
    Word back = (found->sign > 0 ? p.relators()[found->relator] : p.relators()[found->relator].inverse())
                    .conjugate(found->theta);
    CHECK(back == f);
  }
  CHECK_FALSE(as_relator_conjugate(p, parse_word("a", p.generators())));
  CHECK_FALSE(as_relator_conjugate(p, parse_word("a^6", p.generators())));
}

TEST_CASE("minimal area of [a^2,b^2] is 4") {
  auto p = commutator_presentation();
  auto r = minimal_area_search(p, commutator(ab_word("a^2"), ab_word("b^2")), 4, 4);
  REQUIRE(r.minimum);
  CHECK(*r.minimum == 4);
  CHECK(r.distinct_conjugates == 288);
  CHECK_FALSE(r.truncated);
  REQUIRE(r.certificate);
  CHECK(check_certificate(p, *r.certificate));
  CHECK(r.certificate->area() == 4);
}

TEST_CASE("area search corner cases") {
  auto p = commutator_presentation();
  auto zero = minimal_area_search(p, Word{}, 3, 2);
  CHECK(zero.minimum == 0u);
  auto one = minimal_area_search(p, ab_word("b^-1*[a,b]*b"), 3, 2);
  CHECK(one.minimum == 1u);
  // [a³,b³] needs nine relators, so a bound of four leaves it undecided.
  auto unknown = minimal_area_search(p, commutator(ab_word("a^3"), ab_word("b^3")), 4, 4);
  CHECK_FALSE(unknown.minimum);
  // a is not trivial at all; exponent sums rule out every area.
  CHECK_FALSE(minimal_area_search(p, ab_word("a"), 4, 3).minimum);
}

TEST_CASE("area search never beats a known certificate and its answer checks") {
  auto p = parse_presentation("<a,b|a^2,b^2,(a*b)^3>");
  std::mt19937_64 rng(37);
  for (int i = 0; i < 25; ++i) {
    AreaCertificate c;
    int k = 1 + int(rng() % 2);
    for (int j = 0; j < k; ++j)
      c.factors.push_back({oracle::random_word(rng, 2, 1), rng() % p.relators().size(), rng() % 2 ? 1 : -1});
    c.word = certificate_product(p, c);
    auto r = minimal_area_search(p, c.word, 2, 1);
    REQUIRE(r.minimum);
    CHECK(*r.minimum <= std::size_t(k));
    if (*r.minimum > 0) CHECK(check_certificate(p, *r.certificate));
  }
}

TEST_CASE("central transform on the Heisenberg lifting") {
  auto total = heisenberg();
  REQUIRE(total.lifting);
  auto quotient = central_quotient(total, total.lifting->central_gens);
  CHECK(quotient.rank() == 2);
  for (int n : {1, 2, 3}) {
    CAPTURE(n);
    auto ct = central_transform(quotient, total, *total.lifting, grid_certificate(n));
    CHECK(check_certificate(total, ct.certificate));
    Word c = parse_word("c", total.generators());
    CHECK(ct.central_part == c.pow(-n * n));
    // Independent recomputation of the closed-form bound with |w| = 4n.
    const std::uint64_t len = 4 * n, mu = ct.cost.mu, N = n * n, rho = 2 * n - 2;
    const std::uint64_t delta = std::max(N, rho);
    CHECK(ct.cost.closed_form_bound == len * len + mu * delta * delta + delta + (len + mu * delta) * (len + mu * delta));
    CHECK(ct.cost.total <= ct.cost.closed_form_bound);
    CHECK(ct.cost.within_bound);
  }
}

TEST_CASE("central transform rejects a sigma that does not lift") {
  auto total = heisenberg();
  auto quotient = central_quotient(total, total.lifting->central_gens);
  LiftingData bad = *total.lifting;
  bad.sigma[0] = parse_word("c", total.generators());
  CHECK_THROWS(central_transform(quotient, total, bad, grid_certificate(2)));
}

TEST_CASE("c_n words") {
  auto D = double_ab_alphabet();
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    auto cn = c_n_word(n);
    CHECK(cn.spelling.size() == std::size_t(6 * n));
    CHECK(cn.word.length() == std::size_t(4 * n));
    CHECK(Word::reduce(cn.spelling) == cn.word);
    auto m = structural_maps(D, cn_to_double(cn.word));
    Word an = Word(D.letter({"a", false})).pow(n), bn = Word(D.letter({"b", false})).pow(n);
    CHECK(m.rho[0] == commutator(an, bn));
    CHECK(m.rho[1].empty());
    CHECK(m.rho[2].empty());
  }
}

TEST_CASE("reduction to free area on random words over la, lb, lambda") {
  auto D = double_ab_alphabet();
  auto p = commutator_presentation();
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    Word w = oracle::random_word(rng, 3, 12);
    auto r = reduce_to_free_area(w);
    CHECK(r.round_trip);
    CHECK(r.projected_valid);
    CHECK(check_certificate(p, r.projected));
    CHECK(r.factors.size() <= w.length());
    // V is w with λ deleted, and the factor signs add up to the λ exponent sum.
    std::vector<Letter> no_lambda;
    for (Letter l : w.letters())
      if (index_of(l) != 2) no_lambda.push_back(l);
    CHECK(r.V == Word::reduce(no_lambda));
    long signed_count = 0;
    for (const auto& f : r.factors) signed_count += f.sign;
    CHECK(exponent_sums(w, 3)[2] == signed_count);
    // The projection killing barred letters, computed independently.
    CHECK(r.projected.word == structural_maps(D, l_to_double(r.V.inverse() * w)).rho[0]);
  }
}

TEST_CASE("products of lambda conjugates reduce with empty V and trivial pbar image") {
  auto D = double_ab_alphabet();
  std::mt19937_64 rng(47);
  const Word lambda(3);
  for (int i = 0; i < 100; ++i) {
    Word w;
    int k = 1 + int(rng() % 4);
    for (int j = 0; j < k; ++j) w *= (rng() % 2 ? lambda : lambda.inverse()).conjugate(oracle::random_word(rng, 2, 4));
    auto r = reduce_to_free_area(w);
    CHECK(r.round_trip);
    CHECK(r.v_empty);
    CHECK(r.pbar_trivial);
    CHECK(r.projected_valid);
    CHECK(r.factors.size() <= w.length());
    auto m = structural_maps(D, l_to_double(w));
    CHECK(m.pibar.empty());
    CHECK(r.projected.word == m.rho[0]);
  }
}

TEST_CASE("distortion bracket lower bound") {
  for (int n = 1; n <= 4; ++n) {
    auto b = distortion_bracket(n);
    CHECK(b.lower == std::size_t(n * n));
    CHECK_FALSE(b.upper);
  }
}
