#include "xg/decision.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <sstream>

#include "xg/enumerator.hpp"

namespace xg {

WPOracle free_group_oracle(const Alphabet& a) {
  return {a, [](const Word& w) { return w.empty() ? Decision::trivial : Decision::nontrivial; }};
}

WPOracle free_abelian_oracle(const Alphabet& a) {
  std::size_t n = a.size();
  return {a, [n](const Word& w) {
            auto e = exponent_sums(w, n);
            return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; })
                       ? Decision::trivial
                       : Decision::nontrivial;
          }};
}

WPOracle finite_group_oracle(const Presentation& p, std::size_t max_cosets) {
  auto table = std::make_shared<const CosetTable>(enumerate(p, {}, {max_cosets, Strategy::hlt}));
  return {p.generators(), [table](const Word& w) {
            return table->apply(0, w) == 0 ? Decision::trivial : Decision::nontrivial;
          }};
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::trivial: return "Trivial";
    case Verdict::Kind::nontrivial: return "Nontrivial";
    case Verdict::Kind::unknown: break;
  }
  return "Unknown";
}

XWordProblem::XWordProblem(Presentation base, WPOracle oracle, Presentation doubled)
    : base_(std::move(base)), doubled_(std::move(doubled)), oracle_(std::move(oracle)) {
  if (!(oracle_.alphabet == base_.generators()))
    throw ArgumentError("oracle alphabet differs from the base presentation");
  for (const auto& s : base_.generators().symbols()) {
    doubled_.generators().index(s);
    doubled_.generators().index(GenSymbol{s.base, true});
  }
}

XWordProblem::XWordProblem(std::shared_ptr<const XRealization> r)
    : base_(r->base), doubled_(r->doubled) {
  auto table = std::make_shared<const CosetTable>(r->base_table);
  oracle_ = {base_.generators(), [table](const Word& w) {
               return table->apply(0, w) == 0 ? Decision::trivial : Decision::nontrivial;
             }};
  for (const auto& g : r->gen_images) {
    fwd_.push_back(g.images());
    bwd_.push_back(g.inverse().images());
  }
}

bool XWordProblem::fast_trivial(const Word& w) const {
  // Regular action: w = 1 iff it fixes the identity point.
  std::uint32_t p = 0;
  for (Letter l : w.letters()) p = l > 0 ? fwd_[index_of(l)][p] : bwd_[index_of(l)][p];
  return p == 0;
}

Verdict xg_word_problem(const XWordProblem& setup, const Word& w, const WPBudget& budget) {
  return setup.decide(w, budget);
}

namespace {

void check_alphabet(const Word& w, const Alphabet& a) {
  for (Letter l : w.letters())
    if (index_of(l) >= a.size()) throw AlphabetError("letter outside the double's alphabet");
}

Word rename_unbarred(const Word& w, const Alphabet& from, const Alphabet& to) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    GenSymbol s = from.symbol(index_of(l));
    s.barred = false;
    out.push_back(to.letter(s, sign_of(l)));
  }
  return Word::reduce(out);
}

std::optional<Verdict> certificate_lap(const Presentation& d, const Word& w, std::size_t lap,
                                       const WPBudget& b) {
  std::size_t area = std::min<std::size_t>(b.max_area, std::size_t{1} << std::min<std::size_t>(lap, 20));
  std::size_t radius = std::min(b.max_radius, lap);
  auto r = minimal_area_search(d, w, area, radius, b.max_level_size);
  if (!r.minimum) return std::nullopt;
  Verdict v;
  v.kind = Verdict::Kind::trivial;
  v.method = "certificate";
  v.certificate = r.certificate;
  v.spent.area = area;
  v.spent.radius = radius;
  v.spent.laps = lap + 1;
  return v;
}

bool relators_hold(const Presentation& d, const std::vector<Permutation>& images) {
  for (const auto& r : d.relators())
    if (!evaluate(images, r).is_identity()) return false;
  return true;
}

std::optional<Verdict> quotient_found(const Presentation& d, const Word& w,
                                      std::vector<Permutation> images, std::size_t degree,
                                      std::size_t lap) {
  if (!relators_hold(d, images) || evaluate(images, w).is_identity()) return std::nullopt;
  Verdict v;
  v.kind = Verdict::Kind::nontrivial;
  v.method = "quotient";
  v.quotient_images = std::move(images);
  v.spent.quotient_degree = degree;
  v.spent.laps = lap + 1;
  return v;
}

// Subgroups ⟨u⟩ for u of length ≤ 2, in shortlex order.
std::vector<Word> cyclic_subgroup_words(std::size_t rank) {
  std::vector<Word> out{Word{}};  // trivial subgroup: the regular action
  for (std::size_t g = 0; g < rank; ++g) out.push_back(Word(letter_of(g)));
  for (std::size_t g = 0; g < rank; ++g)
    for (std::size_t h = 0; h < rank; ++h)
      for (int s : {1, -1})
        if (g != h || s > 0) out.push_back(Word(letter_of(g)) * Word(letter_of(h, s)));
  return out;
}

std::optional<Verdict> quotient_lap(const Presentation& d, const Word& w, std::size_t lap,
                                    const WPBudget& b, const std::atomic<bool>& stop) {
  std::size_t top = std::min<std::size_t>(b.max_quotient_degree, std::size_t{4} << std::min<std::size_t>(lap, 20));
  std::size_t bottom = lap == 0 ? 1 : std::min<std::size_t>(b.max_quotient_degree, std::size_t{4} << (lap - 1)) + 1;

  // Coset actions on ⟨u⟩ with at most `top` cosets.
  for (const Word& u : cyclic_subgroup_words(d.rank())) {
    if (stop) return std::nullopt;
    std::vector<Word> sub;
    if (!u.empty()) sub.push_back(u);
    try {
      CosetTable t = enumerate(d, sub, {top, Strategy::hlt});
      if (t.size() < bottom) continue;
      std::vector<Permutation> images;
      for (std::size_t i = 0; i < d.rank(); ++i) images.push_back(t.generator_permutation(i));
      if (auto v = quotient_found(d, w, std::move(images), t.size(), lap)) return v;
    } catch (const CosetOverflow&) {
    }
  }

  // Random permutation images checked on the relators.
  for (std::size_t deg = std::max<std::size_t>(bottom, 2); deg <= top; ++deg) {
    std::mt19937_64 rng(b.seed * 1000003u + deg * 7919u + lap);
    for (std::size_t attempt = 0; attempt < b.random_attempts; ++attempt) {
      if (stop) return std::nullopt;
      std::vector<Permutation> images;
      for (std::size_t i = 0; i < d.rank(); ++i) {
        std::vector<std::uint32_t> pts(deg);
        std::iota(pts.begin(), pts.end(), 0u);
        std::shuffle(pts.begin(), pts.end(), rng);
        images.emplace_back(std::move(pts));
      }
      if (auto v = quotient_found(d, w, std::move(images), deg, lap)) return v;
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict XWordProblem::decide(const Word& w, const WPBudget& budget) const {
  check_alphabet(w, doubled_.generators());
  if (!has_fast_path()) return decide_general(w, budget);
  Verdict v;
  v.kind = fast_trivial(w) ? Verdict::Kind::trivial : Verdict::Kind::nontrivial;
  v.method = "realization";
  return v;
}

Verdict XWordProblem::decide_general(const Word& w, const WPBudget& budget) const {
  check_alphabet(w, doubled_.generators());

  // ρ(w) decided coordinatewise in G.
  auto maps = structural_maps(doubled_.generators(), w);
  for (int k = 0; k < 3; ++k) {
    Word coord = rename_unbarred(maps.rho[static_cast<std::size_t>(k)], doubled_.generators(),
                                 base_.generators());
    if (oracle_.decide(coord) == Decision::nontrivial) {
      Verdict v;
      v.kind = Verdict::Kind::nontrivial;
      v.method = "rho";
      v.rho_coordinate = k;
      v.rho_witness = coord;
      return v;
    }
  }
  if (w.empty()) {
    Verdict v;
    v.kind = Verdict::Kind::trivial;
    v.method = "certificate";
    v.certificate = AreaCertificate{};
    return v;
  }

  if (auto f = as_relator_conjugate(doubled_, w)) {
    Verdict v;
    v.kind = Verdict::Kind::trivial;
    v.method = "certificate";
    v.certificate = AreaCertificate{w, {*f}};
    return v;
  }

  // w lies in W: search for a certificate against a search for a quotient.
  std::atomic<bool> stop{false};
  auto triv = [&]() -> std::optional<Verdict> {
    for (std::size_t lap = 0; lap < budget.laps && !stop; ++lap)
      if (auto v = certificate_lap(doubled_, w, lap, budget)) {
        stop = true;
        return v;
      }
    return std::nullopt;
  };
  auto nontriv = [&]() -> std::optional<Verdict> {
    for (std::size_t lap = 0; lap < budget.laps && !stop; ++lap)
      if (auto v = quotient_lap(doubled_, w, lap, budget, stop)) {
        stop = true;
        return v;
      }
    return std::nullopt;
  };

  std::optional<Verdict> a, b;
  if (budget.concurrent) {
    auto fa = std::async(std::launch::async, triv);
    b = nontriv();
    a = fa.get();
  } else {
    // Round robin, one lap of each in turn.
    for (std::size_t lap = 0; lap < budget.laps && !a && !b; ++lap) {
      a = certificate_lap(doubled_, w, lap, budget);
      if (!a) b = quotient_lap(doubled_, w, lap, budget, stop);
    }
  }
  if (a) return *a;  // triviality wins ties
  if (b) return *b;

  Verdict v;
  v.spent.area = budget.max_area;
  v.spent.radius = budget.max_radius;
  v.spent.quotient_degree = budget.max_quotient_degree;
  v.spent.laps = budget.laps;
  return v;
}

std::vector<Word> symmetric_generators(const Alphabet& a) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.emplace_back(letter_of(i));
    out.emplace_back(letter_of(i, -1));
  }
  return out;
}

EqualityOracle equality_from(const WPOracle& oracle) {
  return [oracle](const Word& u, const Word& v) -> std::optional<bool> {
    return oracle.decide(u * v.inverse()) == Decision::trivial;
  };
}

std::vector<std::size_t> ball_sizes(const std::vector<Word>& gens, const EqualityOracle& eq,
                                    std::size_t radius) {
  std::vector<Word> reps{Word{}};
  std::vector<std::size_t> sizes{1};
  std::size_t sphere_begin = 0;
  for (std::size_t n = 1; n <= radius; ++n) {
    std::size_t sphere_end = reps.size();
    for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
      for (const Word& g : gens) {
        Word cand = reps[i] * g;
        bool seen = false;
        for (const Word& r : reps) {
          if (r == cand) {
            seen = true;
            break;
          }
          auto same = eq(cand, r);
          if (!same) throw IncompleteGrowth(sizes);
          if (*same) {
            seen = true;
            break;
          }
        }
        if (!seen) reps.push_back(std::move(cand));
      }
    }
    sphere_begin = sphere_end;
    sizes.push_back(reps.size());
  }
  return sizes;
}

namespace {

struct Fit {
  double slope = 0, rss = 0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Fit f;
  f.slope = sxx == 0 ? 0 : sxy / sxx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (my + f.slope * (x[i] - mx));
    f.rss += e * e;
  }
  return f;
}

}  // namespace

GrowthClass growth_classifier(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 4) throw ArgumentError("growth_classifier needs at least 4 ball sizes");
  const std::size_t R = sizes.size() - 1;
  std::size_t start = std::max<std::size_t>(1, R / 2);
  if (R - start + 1 < 3) start = R - 2;

  GrowthClass out;
  // An empty sphere stays empty: the group is finite.
  bool stalled = false;
  for (std::size_t i = 1; i <= R; ++i) stalled = stalled || sizes[i] == sizes[i - 1];
  if (stalled) {
    out.kind = GrowthClass::Kind::polynomial;
    return out;
  }

  std::vector<double> logn, n, logs;
  for (std::size_t i = start; i <= R; ++i) {
    // Word-metric balls in ℤᵈ grow like c·(n + ½)ᵈ, hence the shift.
    logn.push_back(std::log(static_cast<double>(i) + 0.5));
    n.push_back(static_cast<double>(i));
    logs.push_back(std::log(static_cast<double>(sizes[i])));
  }
  Fit poly = least_squares(logn, logs);
  Fit expo = least_squares(n, logs);
  out.slope = poly.slope;
  if (poly.rss <= expo.rss) {
    int d = static_cast<int>(std::lround(poly.slope));
    if (d >= 1 && std::abs(poly.slope - d) <= 0.35) {
      out.kind = GrowthClass::Kind::polynomial;
      out.degree = d;
    }
  } else {
    double rate = std::exp(expo.slope);
    if (rate > 1.05) {
      out.kind = GrowthClass::Kind::exponential;
      out.rate = rate;
    }
  }
  return out;
}

std::string to_string(const GrowthClass& g) {
  std::ostringstream os;
  switch (g.kind) {
    case GrowthClass::Kind::polynomial: os << "PolynomialDegree(" << g.degree << ")"; break;
    case GrowthClass::Kind::exponential: os << "ExponentialRate(" << g.rate << ")"; break;
    case GrowthClass::Kind::inconclusive: os << "Inconclusive"; break;
  }
  return os.str();
}

}  // namespace xg
