#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "xg/sidki.hpp"

using namespace xg;

namespace {

struct Row {
  const char* name;
  const char* text;
  std::uint64_t X, D, L, W, im_rho;
};

// Orders of 𝔛(G) and its subgroups, frozen from the independent
// computations in the first test case below.
const Row kTable[] = {
    {"C2", "<a|a^2>", 4, 1, 2, 1, 4},
    {"C3", "<a|a^3>", 9, 1, 3, 1, 9},
    {"C2xC2", "<a,b|a^2,b^2,[a,b]>", 32, 2, 8, 2, 16},
    {"C4", "<a|a^4>", 16, 1, 4, 1, 16},
    {"S3", "<a,b|a^2,b^2,(a*b)^3>", 108, 3, 18, 1, 108},
    {"D4", "<a,b|a^4,b^2,(a*b)^2>", 256, 4, 32, 2, 128},
    {"Q8", "<a,b|a^4,a^2*b^-2,b^-1*a*b*a>", 128, 2, 16, 1, 128},
};

std::set<Permutation> conjugation_closure(const std::vector<Permutation>& gens,
                                          const std::vector<Permutation>& by, std::size_t degree) {
  std::vector<Permutation> all = gens;
  auto elems = oracle::closure(by, degree);
  for (const auto& g : gens)
    for (const auto& e : elems) all.push_back(e.inverse() * g * e);
  return oracle::closure(all, degree);
}

}  // namespace

TEST_CASE("orders against independent computations") {
  for (const auto& row : kTable) {
    CAPTURE(row.name);
    auto p = parse_presentation(row.text);
    auto x = build(p);
    // Felsch enumeration of the double is independent of the table the build used.
    EnumerationOptions felsch;
    felsch.strategy = Strategy::felsch;
    CHECK(enumerate(x.doubled, {}, felsch).size() == row.X);

    const std::size_t r = p.rank();
    const std::size_t deg = x.X.degree();
    std::vector<Permutation> cross;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) cross.push_back(commutator(x.gen_images[i], x.gen_images[r + j]));
    auto D = conjugation_closure(cross, x.gen_images, deg);
    auto L = oracle::closure(x.ell, deg);
    std::set<Permutation> W;
    for (const auto& d : D)
      if (L.count(d)) W.insert(d);
    std::vector<Permutation> rho_gens;
    for (std::size_t j = 0; j < 2 * r; ++j) rho_gens.push_back(x.rho->images()[j]);
    auto im = oracle::closure(rho_gens, x.G3.degree());

    CHECK(x.X.order() == row.X);
    CHECK(D.size() == row.D);
    CHECK(L.size() == row.L);
    CHECK(W.size() == row.W);
    CHECK(im.size() == row.im_rho);
    CHECK(x.D.order() == D.size());
    CHECK(x.L.order() == L.size());
    CHECK(x.W.order() == W.size());
    CHECK(x.im_rho.order() == im.size());
  }
}

TEST_CASE("every structural check passes on the suite") {
  for (const auto& row : kTable) {
    CAPTURE(row.name);
    BuildOptions o;
    o.strict = false;
    auto x = build(parse_presentation(row.text), o);
    CHECK(x.all_pass());
    for (const auto& c : x.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
    CHECK(x.X.order() == x.W.order() * x.im_rho.order());
  }
}

TEST_CASE("rho on words matches the three coordinates") {
  auto x = build(parse_presentation("<a,b|a^2,b^2,(a*b)^3>"));
  const Alphabet& A = x.doubled.generators();
  std::mt19937_64 rng(41);
  const std::size_t n = x.G.degree();
  for (int i = 0; i < 300; ++i) {
    Word w = oracle::random_word(rng, A.size(), 14);
    auto m = structural_maps(A, w);
    Permutation t = x.rho_image(w);
    for (int k = 0; k < 3; ++k) {
      // Coordinate k of G³ acts on points k·n .. k·n + n − 1.
      std::size_t base_point = std::size_t(k) * n;
      std::uint32_t image = t(base_point) - std::uint32_t(base_point);
      CHECK(image == evaluate(x.G.generators(), m.rho[k])(0));
    }
  }
}

TEST_CASE("pi splits: X is L semidirect G") {
  for (const auto& row : kTable) {
    auto x = build(parse_presentation(row.text));
    CHECK(x.L.order() * x.G_image.order() == x.X.order());
    CHECK(intersection(x.L, x.G_image).is_trivial());
    CHECK(x.pi->kernel() == x.L);
  }
}

TEST_CASE("C2 double is abelian of order 4") {
  auto x = build(parse_presentation("<a|a^2>"));
  CHECK(x.X.order() == 4);
  CHECK(x.X.is_abelian());
}

TEST_CASE("nilpotence report") {
  auto cls = [](const char* t) { return nilpotence_report(build(parse_presentation(t))); };
  auto d4 = cls("<a,b|a^4,b^2,(a*b)^2>");
  CHECK(d4.pass);
  CHECK(std::get<int>(d4.class_X) == 3);
  CHECK(std::get<int>(cls("<a,b|a^4,a^2*b^-2,b^-1*a*b*a>").class_X) == 2);
  CHECK(std::get<int>(cls("<a,b|a^2,b^2,[a,b]>").class_X) == 2);
  CHECK(std::get<int>(cls("<a|a^4>").class_X) == 1);
  auto s3 = cls("<a,b|a^2,b^2,(a*b)^3>");
  CHECK(std::holds_alternative<NotNilpotent>(s3.class_X));
  CHECK(s3.pass);
}

TEST_CASE("Engel certificates") {
  auto d4 = engel_certificate(build(parse_presentation("<a,b|a^4,b^2,(a*b)^2>")));
  CHECK(d4.n == 2);
  CHECK(d4.d == 2);
  CHECK(d4.s == 2);
  CHECK(d4.m == 9);
  CHECK(d4.verdict);
  CHECK(d4.minimal_engel_X == 3);
  auto q8 = engel_certificate(build(parse_presentation("<a,b|a^4,a^2*b^-2,b^-1*a*b*a>")));
  CHECK(q8.m == 9);
  CHECK(q8.minimal_engel_X == 2);
  CHECK(engel_certificate(build(parse_presentation("<a,b|a^2,b^2,[a,b]>"))).m == 7);
  CHECK_THROWS_AS(engel_certificate(build(parse_presentation("<a,b|a^2,b^2,(a*b)^3>"))), ArgumentError);
}

TEST_CASE("module consistency: Aug/I2 matches L/L'") {
  for (const auto& row : kTable) {
    CAPTURE(row.name);
    auto mc = module_consistency(build(parse_presentation(row.text)));
    CHECK(mc.aug == mc.l_mod_l_prime);
    CHECK(mc.lattices_agree);
    CHECK(mc.identities.two_v_aug2_zero);
    CHECK(mc.identities.v_aug_k_plus_3_zero);
    for (const auto& c : mc.checks) CHECK(c.pass);
  }
}

TEST_CASE("W structure") {
  auto s3 = w_structure_checks(build(parse_presentation("<a,b|a^2,b^2,(a*b)^3>")));
  CHECK(s3.order_M == 3);
  CHECK(s3.order_N == 1);
  CHECK(s3.order_M % s3.order_N == 0);
  CHECK(BigInt(3) % s3.exponent_N == 0);
  for (const char* t : {"<a|a^2>", "<a|a^4>", "<a,b|a^2,b^2,[a,b]>"}) {
    auto r = w_structure_checks(build(parse_presentation(t)));
    REQUIRE(r.w_action_class);
    CHECK(*r.w_action_class <= 3 + r.s);
    for (const auto& c : r.checks) CHECK(c.pass);
  }
}

TEST_CASE("a sampled ell identity check agrees with the exhaustive one") {
  auto x = build(parse_presentation("<a,b|a^4,b^2,(a*b)^2>"));
  CHECK(ell_identity_check(x, 0).pass);
  CHECK(ell_identity_check(x, 500, 7).pass);
}
