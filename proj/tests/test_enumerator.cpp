#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "xg/enumerator.hpp"

using namespace xg;

namespace {

struct Case {
  const char* text;
  std::size_t order;
};

const Case kCases[] = {
    {"<a|a^5>", 5},
    {"<a,b|a^2,b^2,(a*b)^3>", 6},
    {"<a,b|a^4,b^2,(a*b)^2>", 8},
    {"<a,b|a^4,a^2*b^-2,b^-1*a*b*a>", 8},
    {"<a,b|a^2,b^3,(a*b)^5>", 60},
    {"<a,b|a^3,b^3,(a*b)^3,(a*b^-1)^3>", 27},
    {"<a,b,c|a^2,b^2,c^2,(a*b)^3,(b*c)^3,(a*c)^2>", 24},
};

EnumerationOptions with(Strategy s) {
  EnumerationOptions o;
  o.strategy = s;
  return o;
}

}  // namespace

TEST_CASE("orders of small groups under both strategies") {
  for (const auto& c : kCases) {
    auto p = parse_presentation(c.text);
    auto hlt = enumerate(p, {}, with(Strategy::hlt));
    auto felsch = enumerate(p, {}, with(Strategy::felsch));
    CAPTURE(c.text);
    CHECK(hlt.size() == c.order);
    CHECK(felsch.size() == c.order);
    CHECK(hlt.is_consistent_with(p));
    CHECK(felsch.is_consistent_with(p));
  }
}

TEST_CASE("regular representation: generated permutation group has the enumerated order") {
  for (const auto& c : kCases) {
    auto p = parse_presentation(c.text);
    auto t = enumerate(p, {});
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < t.rank(); ++i) gens.push_back(t.generator_permutation(i));
    CHECK(oracle::closure(gens, t.size()).size() == c.order);
  }
}

TEST_CASE("index of a subgroup") {
  auto s3 = parse_presentation("<a,b|a^2,b^2,(a*b)^3>");
  Word a = parse_word("a", s3.generators());
  auto t = enumerate(s3, std::vector<Word>{a});
  CHECK(t.size() == 3);
  CHECK(t.apply(0, a) == 0);
  auto whole = enumerate(s3, std::vector<Word>{a, parse_word("b", s3.generators())});
  CHECK(whole.size() == 1);
}

TEST_CASE("relator order and rotation do not change the result") {
  std::mt19937_64 rng(17);
  for (const auto& c : kCases) {
    auto p = parse_presentation(c.text);
    for (int trial = 0; trial < 4; ++trial) {
      auto rels = p.relators();
      std::shuffle(rels.begin(), rels.end(), rng);
      for (auto& r : rels) {
        auto l = r.letters();
        std::size_t k = rng() % l.size();
        std::vector<Letter> rot(l.begin() + k, l.end());
        rot.insert(rot.end(), l.begin(), l.begin() + k);
        r = Word::reduce(rot);
        if (rng() % 2) r = r.inverse();
      }
      Presentation q(p.generators(), rels);
      CHECK(enumerate(q, {}).size() == c.order);
    }
  }
}

TEST_CASE("word images respect the relators and detect nontrivial words") {
  auto p = parse_presentation("<a,b|a^4,b^2,(a*b)^2>");
  auto t = enumerate(p, {});
  for (const auto& r : p.relators()) CHECK(word_image(t, r).is_identity());
  const auto& A = p.generators();
  CHECK(word_image(t, parse_word("a^2", A)).order() == 2);
  CHECK(word_image(t, parse_word("b*a*b^-1*a", A)).is_identity());
  CHECK_FALSE(word_image(t, parse_word("[a,b]", A)).is_identity());
  CHECK(word_image(t, parse_word("[a,b]^2", A)).is_identity());
}

TEST_CASE("transversal reaches every coset by a shortlex-least word") {
  auto p = parse_presentation("<a,b|a^2,b^2,(a*b)^3>");
  auto t = enumerate(p, {});
  auto tr = t.transversal();
  REQUIRE(tr.size() == 6);
  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(t.apply(0, tr[i]) == i);
    hit.insert(t.apply(0, tr[i]));
  }
  CHECK(hit.size() == 6);
  CHECK(tr[0].empty());
  std::size_t max_len = 0;
  for (const auto& w : tr) max_len = std::max(max_len, w.length());
  CHECK(max_len == 3);
}

TEST_CASE("overflow is reported, not silently truncated") {
  auto z = parse_presentation("<a,b|[a,b]>");
  EnumerationOptions o;
  o.max_cosets = 500;
  CHECK_THROWS_AS(enumerate(z, {}, o), CosetOverflow);
  o.strategy = Strategy::felsch;
  CHECK_THROWS_AS(enumerate(z, {}, o), CosetOverflow);
  try {
    enumerate(z, {}, o);
  } catch (const CosetOverflow& e) {
    CHECK(e.budget() == 500);
  }
}

TEST_CASE("trivial group and free group on no generators") {
  CHECK(enumerate(parse_presentation("<a|a>"), {}).size() == 1);
  CHECK(enumerate(parse_presentation("<|>"), {}).size() == 1);
}
