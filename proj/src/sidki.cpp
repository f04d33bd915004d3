#include "xg/sidki.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "xg/errors.hpp"

namespace xg {

namespace {

Permutation evaluate_from(const Permutation& identity, std::span<const Permutation> images, const Word& w) {
  return w.empty() ? identity : evaluate(images, w);
}

Permutation block(const Permutation& p, std::size_t k, std::size_t n) {
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(p(k * n + i) - k * n);
  return Permutation(std::move(images));
}

Permutation triple(const Permutation& a, const Permutation& b, const Permutation& c) {
  std::array<Permutation, 3> parts{a, b, c};
  return direct_sum(parts);
}

CheckResult make_check(std::string name, bool pass, std::string witness = {}) {
  return CheckResult{std::move(name), pass, pass ? std::string() : std::move(witness)};
}

void record(XRealization& x, CheckResult c, bool strict) {
  if (strict && !c.pass) throw VerificationError("check " + c.name + " failed: " + c.witness);
  x.checks.push_back(std::move(c));
}

/// First pair of generators (one from each list) that do not commute.
std::optional<std::pair<std::size_t, std::size_t>> noncommuting(const std::vector<Permutation>& a,
                                                                const std::vector<Permutation>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a[i] * b[j] != b[j] * a[i]) return std::pair{i, j};
  return std::nullopt;
}

std::string pair_witness(const char* left, const char* right, std::pair<std::size_t, std::size_t> p) {
  std::ostringstream out;
  out << left << " generator " << p.first << " and " << right << " generator " << p.second << " do not commute";
  return out.str();
}

BigInt abelianization_order(const Presentation& p) {
  auto order = abelianization(p).order();
  if (!order) throw VerificationError("finite group with infinite abelianisation");
  return *order;
}

}  // namespace

bool XRealization::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Permutation XRealization::image(const Word& w) const {
  return evaluate_from(X.identity(), gen_images, w);
}

Permutation XRealization::lift_image(const Word& w, bool barred) const {
  return image(lift_to_double(w, base.generators(), doubled.generators(), barred));
}

Permutation XRealization::rho_image(const Word& w) const {
  if (!rho) throw ArgumentError("realization has no ρ");
  return evaluate_from(G3.identity(), rho->images(), w);
}

XRealization build(const Presentation& p, const BuildOptions& o) {
  XRealization x;
  x.base = p;
  const EnumerationOptions enum_options{o.max_cosets, Strategy::hlt};
  x.base_table = enumerate(p, {}, enum_options);
  x.g_words = x.base_table.transversal();
  x.G = perm_realization(x.base_table, o.guard);
  x.doubled = sidki_double(p, AllElements{o.max_cosets});
  x.table = enumerate(x.doubled, {}, enum_options);
  x.X = perm_realization(x.table, o.guard);
  x.gen_images = x.X.generators();

  const std::size_t r = p.rank(), n = x.G.degree();
  const Permutation one = x.G.identity();
  std::vector<Permutation> g3_gens, rho_images, pi_images;
  for (std::size_t i = 0; i < r; ++i) {
    const Permutation& g = x.G.generators()[i];
    g3_gens.push_back(triple(g, one, one));
    g3_gens.push_back(triple(one, g, one));
    g3_gens.push_back(triple(one, one, g));
  }
  x.G3 = PermGroup(3 * n, g3_gens, o.guard);
  // The double's alphabet lists X then X̄ in the base order.
  for (std::size_t j = 0; j < 2 * r; ++j) {
    const Permutation& g = x.G.generators()[j % r];
    rho_images.push_back(j < r ? triple(g, g, one) : triple(one, g, g));
    pi_images.push_back(g);
  }
  x.rho.emplace(x.X, x.G3, rho_images);
  x.pi.emplace(x.X, x.G, pi_images);

  const auto& elements = x.G.elements();
  for (std::size_t e = 1; e < elements.size(); ++e) {
    const Word& w = x.g_words[elements[e](0)];
    x.ell.push_back(x.lift_image(w, false).inverse() * x.lift_image(w, true));
  }

  std::vector<Permutation> cross;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cross.push_back(commutator(x.gen_images[i], x.gen_images[r + j]));
  x.D = normal_closure(x.X, cross);
  x.L = subgroup(x.X, x.ell);
  x.W = intersection(x.D, x.L);
  std::vector<Permutation> dl = x.D.generators();
  dl.insert(dl.end(), x.L.generators().begin(), x.L.generators().end());
  x.DL = subgroup(x.X, dl);
  x.G_image = subgroup(x.X, std::vector<Permutation>(x.gen_images.begin(), x.gen_images.begin() + static_cast<long>(r)));
  x.im_rho = x.rho->image();
  x.ker_rho = x.rho->kernel();

  const bool strict = o.strict;
  auto dl_pair = noncommuting(x.D.generators(), x.L.generators());
  record(x, make_check("D_commutes_with_L", !dl_pair, dl_pair ? pair_witness("D", "L", *dl_pair) : ""), strict);

  record(x, make_check("W_equals_ker_rho", x.W == x.ker_rho,
                       "|W| = " + std::to_string(x.W.order()) + ", |ker rho| = " + std::to_string(x.ker_rho.order())),
         strict);

  auto wc = noncommuting(x.W.generators(), x.DL.generators());
  record(x, make_check("W_central_in_DL", !wc, wc ? pair_witness("W", "DL", *wc) : ""), strict);

  record(x, check_im_rho(x), strict);

  BigInt q = abelianization_order(p);
  std::uint64_t index = x.G3.order() / x.im_rho.order();
  record(x, make_check("im_rho_index_equals_Q", BigInt(index) == q,
                       "index " + std::to_string(index) + " but |Q| = " + to_string(q)),
         strict);

  PermGroup l_closure = normal_closure(x.X, x.ell);
  record(x, make_check("L_generated_by_ell", l_closure.order() == x.L.order(),
                       "normal closure has order " + std::to_string(l_closure.order()) + ", subgroup " +
                           std::to_string(x.L.order())),
         strict);

  PermGroup meet = intersection(x.L, x.G_image);
  bool split = meet.is_trivial() && x.L.order() * x.G_image.order() == x.X.order() && l_closure == x.L;
  record(x, make_check("L_semidirect_G", split,
                       "|L| = " + std::to_string(x.L.order()) + ", |G image| = " + std::to_string(x.G_image.order()) +
                           ", |L ∩ G image| = " + std::to_string(meet.order()) +
                           ", |X| = " + std::to_string(x.X.order())),
         strict);

  std::size_t samples = elements.size() <= o.ell_exhaustive_limit ? 0 : o.ell_samples;
  record(x, ell_identity_check(x, samples, o.seed), strict);

  record(x, make_check("order_factorization", x.X.order() == x.W.order() * x.im_rho.order(),
                       std::to_string(x.X.order()) + " != " + std::to_string(x.W.order()) + " * " +
                           std::to_string(x.im_rho.order())),
         strict);

  if (is_perfect(x.G)) {
    auto central = noncommuting(x.W.generators(), x.gen_images);
    record(x, make_check("W_central_in_X", !central, central ? pair_witness("W", "X", *central) : ""), strict);
  }
  return x;
}

CheckResult check_im_rho(const XRealization& x) {
  const std::size_t n = x.G.degree();
  PermGroup derived = derived_subgroup(x.G);
  const auto& els = x.G.elements();
  // Independent count of {(g₁,g₂,g₃) : g₁g₂⁻¹g₃ ∈ G′}, a subgroup of G³.
  std::uint64_t count = 0;
  for (const auto& a : els)
    for (const auto& b : els) {
      Permutation ab = a * b.inverse();
      for (const auto& c : els)
        if (derived.contains(ab * c)) ++count;
    }
  for (const auto& g : x.im_rho.generators()) {
    Permutation t = block(g, 0, n) * block(g, 1, n).inverse() * block(g, 2, n);
    if (!derived.contains(t)) return make_check("im_rho_description", false, "image generator " + to_string(g) + " violates the condition");
  }
  return make_check("im_rho_description", count == x.im_rho.order(),
                    "|im rho| = " + std::to_string(x.im_rho.order()) + " but the described subgroup has order " +
                        std::to_string(count));
}

CheckResult ell_identity_check(const XRealization& x, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = x.g_words.size();
  auto ell = [&](const Word& w) { return x.lift_image(w, false).inverse() * x.lift_image(w, true); };
  auto test = [&](const Word& u, const Word& v) -> std::optional<std::string> {
    Permutation lu = ell(u), lv = ell(v), luv = ell(u * v);
    Permutation xv = x.lift_image(v, false), xbar = x.lift_image(v, true);
    if (xv.inverse() * lu * xv != luv * lv.inverse()) return "plain";
    if (xbar.inverse() * lu * xbar != lv.inverse() * luv) return "barred";
    return std::nullopt;
  };
  auto fail = [&](const Word& u, const Word& v, const std::string& which) {
    return make_check("ell_identity", false,
                      which + " identity fails at u = " + to_string(u, x.base.generators()) +
                          ", x = " + to_string(v, x.base.generators()));
  };
  if (samples == 0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (auto bad = test(x.g_words[i], x.g_words[j])) return fail(x.g_words[i], x.g_words[j], *bad);
    return make_check("ell_identity", true);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const Word& u = x.g_words[pick(rng)];
    const Word& v = x.g_words[pick(rng)];
    if (auto bad = test(u, v)) return fail(u, v, *bad);
  }
  return make_check("ell_identity", true);
}

NilpotenceReport nilpotence_report(const XRealization& x) {
  NilpotenceReport r;
  r.class_G = nilpotency_class(x.G);
  r.class_X = nilpotency_class(x.X);
  if (std::holds_alternative<int>(r.class_G)) r.pass = std::holds_alternative<int>(r.class_X);
  return r;
}

int action_class_s(const XRealization& x) {
  QModule aug = aug_mod_I2(x.G);
  auto s = action_nilpotency_class(aug, default_class_cap(aug));
  if (!std::holds_alternative<int>(s))
    throw VerificationError("action of G on Aug/I2 did not become trivial below |V| + 3");
  return std::get<int>(s);
}

EngelCertificate engel_certificate(const XRealization& x) {
  EngelCertificate c;
  auto n = minimal_engel_class(x.G, static_cast<int>(x.G.order()) + 1);
  if (!std::holds_alternative<int>(n)) throw ArgumentError("G is not an Engel group");
  c.n = std::get<int>(n);
  PermGroup d2 = derived_subgroup(derived_subgroup(x.G));
  auto d = nilpotency_class(quotient_action(x.G, d2));
  if (!std::holds_alternative<int>(d)) throw VerificationError("finite Engel group with non-nilpotent metabelian quotient");
  c.d = std::get<int>(d);
  c.s = action_class_s(x);
  c.m = c.n + c.d + c.s + 3;
  c.verdict = is_n_engel(x.X, c.m);
  auto mx = minimal_engel_class(x.X, c.m);
  if (std::holds_alternative<int>(mx)) c.minimal_engel_X = std::get<int>(mx);
  return c;
}

QModule l_abelianization(const XRealization& x) {
  PermGroup l_prime = derived_subgroup(x.L);
  std::vector<Permutation> acting(x.gen_images.begin(), x.gen_images.begin() + static_cast<long>(x.base.rank()));
  return section_module(x.L, x.ell, l_prime, acting);
}

QModule w_module(const XRealization& x) {
  return section_module(x.W, x.W.generators(), PermGroup(x.X.degree(), {}, x.X.guard()), x.gen_images);
}

ModuleConsistency module_consistency(const XRealization& x) {
  ModuleConsistency r;
  QModule aug = aug_mod_I2(x.G);
  QModule lml = l_abelianization(x);
  r.aug = aug.underlying();
  r.l_mod_l_prime = lml.underlying();
  r.lattices_agree = same_module(aug, lml);
  r.identities = augmentation_identities(aug);
  r.s = action_class_s(x);
  r.checks.push_back(make_check("aug_invariants_match_L_mod_L_prime", r.aug == r.l_mod_l_prime,
                                "Aug/I2 = " + r.aug.to_string() + ", L/L' = " + r.l_mod_l_prime.to_string()));
  r.checks.push_back(make_check("aug_isomorphic_to_L_mod_L_prime", r.lattices_agree,
                                "l_g -> g - 1 does not identify the relation lattices and actions"));
  r.checks.push_back(make_check("two_V_aug2_zero", r.identities.two_v_aug2_zero, "2 V Aug^2 is nonzero"));
  r.checks.push_back(make_check("V_aug_k_plus_3_zero", r.identities.v_aug_k_plus_3_zero,
                                "V Aug^(k+3) is nonzero for k = " + to_string(r.identities.k)));
  return r;
}

WStructureReport w_structure_checks(const XRealization& x) {
  WStructureReport r;
  r.s = action_class_s(x);
  QModule m = module_M(x.G);
  QModule w = w_module(x);
  r.order_M = *m.underlying().order();
  r.exponent_M = m.underlying().exponent();
  r.order_W = BigInt(x.W.order());

  IntMatrix<BigInt> n_span = augmentation_series(w, static_cast<std::size_t>(3 + r.s)).back();
  r.order_N = *span_order(w, n_span);
  r.exponent_N = span_exponent(w, n_span);
  r.order_W_cap_L_prime = intersection(x.W, derived_subgroup(x.L)).order();

  r.checks.push_back(make_check("N_order_divides_M", r.order_M % r.order_N == 0,
                                "|N| = " + to_string(r.order_N) + ", |M| = " + to_string(r.order_M)));
  r.checks.push_back(make_check("N_exponent_divides_M_exponent", r.exponent_M % r.exponent_N == 0,
                                "exp N = " + to_string(r.exponent_N) + ", exp M = " + to_string(r.exponent_M)));

  PermGroup g_prime = derived_subgroup(x.G);
  r.g_prime_perfect = is_perfect(g_prime);
  auto wc = action_nilpotency_class(w, default_class_cap(w));
  if (std::holds_alternative<int>(wc)) r.w_action_class = std::get<int>(wc);
  if (r.g_prime_perfect)
    r.checks.push_back(make_check("Q_acts_nilpotently_on_W", r.w_action_class.has_value(),
                                  "action on W did not become trivial below |W| + 3"));
  if (g_prime.is_trivial())
    r.checks.push_back(make_check("W_class_at_most_3_plus_s", r.w_action_class && *r.w_action_class <= 3 + r.s,
                                  "class of the action on W exceeds 3 + s = " + std::to_string(3 + r.s)));
  return r;
}

}  // namespace xg
