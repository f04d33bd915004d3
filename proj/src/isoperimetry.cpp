#include "xg/isoperimetry.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "xg/errors.hpp"

namespace xg {

namespace {

Word relator_power(const Presentation& p, std::size_t j, int sign) {
  if (j >= p.relators().size())
    throw ArgumentError("relator index " + std::to_string(j) + " out of range");
  return sign > 0 ? p.relators()[j] : p.relators()[j].inverse();
}

Word factor_word(const Presentation& p, const CertificateFactor& f) {
  return relator_power(p, f.relator, f.sign).conjugate(f.theta);
}

Word prefix(const Word& w, std::size_t k) {
  return Word::reduce(w.letters().subspan(0, k));
}

// All reduced words of length ≤ r over `rank` generators, shortlex order.
std::vector<Word> ball(std::size_t rank, std::size_t r) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= r; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t g = 0; g < rank; ++g) {
        for (int s : {1, -1}) {
          Letter l = letter_of(g, s);
          const Word& base = out[i];
          if (!base.empty() && base[base.length() - 1] == -l) continue;
          out.push_back(base * Word(l));
        }
      }
    }
    level_begin = level_end;
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(level_end), out.end());
  }
  return out;
}

std::uint64_t sq(std::uint64_t x) { return x * x; }

}  // namespace

std::size_t AreaCertificate::radius() const {
  std::size_t r = 0;
  for (const auto& f : factors) r = std::max(r, f.theta.length());
  return r;
}

Word certificate_product(const Presentation& p, const AreaCertificate& c) {
  Word out;
  for (const auto& f : c.factors) {
    if (f.sign != 1 && f.sign != -1) throw ArgumentError("factor sign must be 1 or -1");
    out *= factor_word(p, f);
  }
  return out;
}

bool check_certificate(const Presentation& p, const AreaCertificate& c) {
  return certificate_product(p, c) == c.word;
}

std::optional<CertificateFactor> as_relator_conjugate(const Presentation& p, const Word& f) {
  Word core = f.cyclic_reduction();
  if (core.empty()) return std::nullopt;
  Word pre = prefix(f, (f.length() - core.length()) / 2);
  auto letters = core.letters();
  for (std::size_t j = 0; j < p.relators().size(); ++j) {
    for (int s : {1, -1}) {
      Word r = relator_power(p, j, s);
      if (r.length() != core.length()) continue;
      auto rl = r.letters();
      for (std::size_t t = 0; t < rl.size(); ++t) {
        // r = αβ with |α| = t; need βα = core
        if (!std::equal(rl.begin() + static_cast<std::ptrdiff_t>(t), rl.end(), letters.begin()))
          continue;
        if (!std::equal(rl.begin(), rl.begin() + static_cast<std::ptrdiff_t>(t),
                        letters.begin() + static_cast<std::ptrdiff_t>(rl.size() - t)))
          continue;
        Word alpha = Word::reduce(rl.subspan(0, t));
        return CertificateFactor{alpha * pre.inverse(), j, s};
      }
    }
  }
  return std::nullopt;
}

Presentation commutator_presentation() {
  return parse_presentation("<a,b|[a,b]>");
}

AreaCertificate grid_certificate(int n) {
  if (n < 0) throw ArgumentError("grid_certificate: n must be non-negative");
  Word a(letter_of(0)), b(letter_of(1));
  AreaCertificate c;
  c.word = commutator(a.pow(n), b.pow(n));
  for (int j = 0; j < n; ++j)
    for (int i = n - 1; i >= 0; --i) c.factors.push_back({a.pow(i) * b.pow(j), 0, 1});
  return c;
}

AreaSearchResult minimal_area_search(const Presentation& p, const Word& w, std::size_t max_area,
                                     std::size_t max_radius, std::size_t max_level_size) {
  AreaSearchResult result;
  if (w.empty()) {
    result.minimum = 0;
    result.certificate = AreaCertificate{w, {}};
    return result;
  }
  const std::size_t rank = p.rank();

  // Distinct conjugates in discovery order.
  std::vector<Word> conj;
  std::vector<CertificateFactor> conj_factor;
  {
    std::unordered_map<Word, std::size_t, WordHash> seen;
    for (const Word& theta : ball(rank, max_radius)) {
      for (std::size_t j = 0; j < p.relators().size(); ++j) {
        for (int s : {1, -1}) {
          CertificateFactor f{theta, j, s};
          Word fw = factor_word(p, f);
          if (seen.emplace(fw, conj.size()).second) {
            conj.push_back(fw);
            conj_factor.push_back(f);
          }
        }
      }
    }
  }
  result.distinct_conjugates = conj.size();
  if (conj.empty()) return result;

  // Exponent-sum vectors reachable with exactly M signed relators.
  std::vector<std::vector<long>> rel_sums;
  for (const Word& r : p.relators()) {
    auto e = exponent_sums(r, rank);
    rel_sums.push_back(e);
    for (auto& x : e) x = -x;
    rel_sums.push_back(e);
  }
  const auto target = exponent_sums(w, rank);
  std::vector<std::set<std::vector<long>>> reach{{std::vector<long>(rank, 0)}};
  for (std::size_t m = 1; m <= max_area; ++m) {
    std::set<std::vector<long>> next;
    for (const auto& v : reach.back())
      for (const auto& e : rel_sums) {
        auto u = v;
        for (std::size_t k = 0; k < rank; ++k) u[k] += e[k];
        next.insert(std::move(u));
      }
    reach.push_back(std::move(next));
  }

  // levels[k]: distinct products of exactly k conjugates, with one factor list each.
  struct Level {
    std::vector<Word> words;
    std::vector<std::vector<std::size_t>> picks;
    std::unordered_map<Word, std::size_t, WordHash> index;
  };
  std::vector<Level> levels(1);
  levels[0].words.push_back(Word{});
  levels[0].picks.push_back({});
  levels[0].index.emplace(Word{}, 0);
  // False when level k would exceed the size cap.
  auto level = [&](std::size_t k) -> bool {
    while (levels.size() <= k) {
      const Level& prev = levels.back();
      Level next;
      for (std::size_t i = 0; i < prev.words.size(); ++i) {
        for (std::size_t c = 0; c < conj.size(); ++c) {
          Word prod = prev.words[i] * conj[c];
          if (next.index.emplace(prod, next.words.size()).second) {
            if (next.words.size() >= max_level_size) return false;
            next.words.push_back(std::move(prod));
            auto pk = prev.picks[i];
            pk.push_back(c);
            next.picks.push_back(std::move(pk));
          }
        }
      }
      levels.push_back(std::move(next));
    }
    return true;
  };

  for (std::size_t m = 1; m <= max_area; ++m) {
    if (!reach[m].count(target)) continue;
    std::size_t left = (m + 1) / 2, right = m - left;
    if (!level(left)) {  // left ≥ right, so both levels exist afterwards
      result.truncated = true;
      return result;
    }
    const Level& la = levels[left];
    const Level& lb = levels[right];
    for (std::size_t qi = 0; qi < lb.words.size(); ++qi) {
      auto it = la.index.find(w * lb.words[qi].inverse());
      if (it == la.index.end()) continue;
      AreaCertificate c{w, {}};
      for (std::size_t k : la.picks[it->second]) c.factors.push_back(conj_factor[k]);
      for (std::size_t k : lb.picks[qi]) c.factors.push_back(conj_factor[k]);
      result.minimum = m;
      result.certificate = std::move(c);
      return result;
    }
  }
  return result;
}

namespace {

Word rename_into(const Word& w, const Alphabet& from, const Alphabet& to) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) out.push_back(to.letter(from.symbol(index_of(l)), sign_of(l)));
  return Word::reduce(out);
}

// The current word as a raw letter sequence, with every local rewrite u·s·v → u·t·v
// recorded as the certificate factor u(st⁻¹)u⁻¹.
class Rewriter {
 public:
  Rewriter(const Presentation& total, std::vector<Letter> start)
      : total_(total), cur_(std::move(start)) {}

  void replace(std::size_t pos, std::size_t len, const std::vector<Letter>& t) {
    auto begin = cur_.begin() + static_cast<std::ptrdiff_t>(pos);
    Word u = Word::reduce(std::span<const Letter>(cur_.data(), pos));
    Word s = Word::reduce(std::span<const Letter>(cur_.data() + pos, len));
    Word f = u * s * Word::reduce(t).inverse() * u.inverse();
    if (!f.empty()) {
      auto factor = as_relator_conjugate(total_, f);
      if (!factor) throw VerificationError("rewrite step is not a relator conjugate");
      factors_.push_back(*factor);
    }
    cur_.erase(begin, begin + static_cast<std::ptrdiff_t>(len));
    cur_.insert(cur_.begin() + static_cast<std::ptrdiff_t>(pos), t.begin(), t.end());
  }

  void swap_adjacent(std::size_t pos) { replace(pos, 2, {cur_[pos + 1], cur_[pos]}); }

  const std::vector<Letter>& current() const { return cur_; }
  std::vector<CertificateFactor> take_factors() { return std::move(factors_); }

 private:
  const Presentation& total_;
  std::vector<Letter> cur_;
  std::vector<CertificateFactor> factors_;
};

bool relator_up_to_rotation(const Presentation& p, const Word& r) {
  auto f = as_relator_conjugate(p, r);
  return f.has_value();
}

}  // namespace

CentralTransform central_transform(const Presentation& quotient, const Presentation& total,
                                   const LiftingData& lifting, const AreaCertificate& c,
                                   const std::function<bool(const Word&)>& verify) {
  const Alphabet& qa = quotient.generators();
  const Alphabet& ta = total.generators();
  if (lifting.sigma.size() != quotient.relators().size())
    throw ArgumentError("lifting data needs one sigma per quotient relator");
  std::vector<bool> is_central(ta.size(), false);
  for (const auto& name : lifting.central_gens) {
    auto idx = ta.find(GenSymbol{name, false});
    if (!idx) throw ArgumentError("central generator " + name + " not in total presentation");
    is_central[*idx] = true;
  }
  for (std::size_t i = 0; i < qa.size(); ++i)
    if (is_central[ta.index(qa.symbol(i))])
      throw ArgumentError("central generator also appears in the quotient");

  std::vector<Word> lifted_rel;
  std::size_t mu = 0;
  for (std::size_t i = 0; i < quotient.relators().size(); ++i) {
    const Word& sigma = lifting.sigma[i];
    for (Letter l : sigma.letters())
      if (index_of(l) >= ta.size() || !is_central[index_of(l)])
        throw ArgumentError("sigma " + std::to_string(i) + " is not a word in central generators");
    mu = std::max(mu, sigma.length());
    Word r = rename_into(quotient.relators()[i], qa, ta);
    Word rs = r * sigma;
    bool ok = verify ? verify(rs) : (rs.empty() || relator_up_to_rotation(total, rs));
    if (!ok) throw ArgumentError("r*sigma is not a relator for quotient relator " + std::to_string(i));
    lifted_rel.push_back(std::move(r));
  }
  if (!check_certificate(quotient, c)) throw ArgumentError("input certificate does not verify");

  // Raw spelling ∏ θᵢ⁻¹ rᵢ^{εᵢ} θᵢ, remembering where each block sits.
  std::vector<Letter> raw;
  struct Block {
    std::size_t theta_len;
    std::size_t rel;
    int sign;
  };
  std::vector<Block> blocks;
  for (const auto& f : c.factors) {
    Word th = rename_into(f.theta, qa, ta);
    Word rp = f.sign > 0 ? lifted_rel[f.relator] : lifted_rel[f.relator].inverse();
    Word th_inv = th.inverse();
    for (Letter l : th_inv.letters()) raw.push_back(l);
    for (Letter l : rp.letters()) raw.push_back(l);
    for (Letter l : th.letters()) raw.push_back(l);
    blocks.push_back({th.length(), f.relator, f.sign});
  }

  Rewriter rw(total, raw);
  CentralCost cost;
  std::size_t pos = 0;
  for (const auto& b : blocks) {
    pos += b.theta_len;
    std::size_t rlen = lifted_rel[b.rel].length();
    Word s = b.sign > 0 ? lifting.sigma[b.rel].inverse() : lifting.sigma[b.rel];
    std::vector<Letter> t(s.letters().begin(), s.letters().end());
    rw.replace(pos, rlen, t);
    // With σ = ε the factor is the input's own.
    if (!t.empty()) ++cost.relator_applications;
    // Bubble the central block right past θ, last letter first.
    for (std::size_t k = t.size(); k-- > 0;) {
      for (std::size_t step = 0; step < b.theta_len; ++step) {
        rw.swap_adjacent(pos + k + step);
        ++cost.commutations;
      }
    }
    pos += t.size() + b.theta_len;
  }

  CentralTransform out;
  Word w3 = Word::reduce(rw.current());
  out.central_part = w3.inverse();
  out.certificate.word = rename_into(c.word, qa, ta) * out.central_part;
  out.certificate.factors = rw.take_factors();
  if (!check_certificate(total, out.certificate))
    throw VerificationError("transformed certificate does not verify");

  cost.total = cost.commutations + cost.relator_applications;
  cost.n = c.word.length();
  cost.area = c.area();
  cost.radius = c.radius();
  cost.mu = mu;
  cost.itemized_bound = sq(cost.n) + cost.mu * cost.area * cost.radius + cost.area +
                        sq(cost.n + cost.mu * cost.area);
  std::uint64_t delta = std::max(cost.area, cost.radius);
  cost.closed_form_bound = sq(cost.n) + cost.mu * sq(delta) + delta + sq(cost.n + cost.mu * delta);
  cost.within_bound = cost.total <= cost.itemized_bound && cost.total <= cost.closed_form_bound;
  out.cost = cost;
  return out;
}

Alphabet cn_alphabet() {
  return Alphabet{{"a", false}, {"b", false}, {"la", false}, {"lb", false}};
}

Alphabet l_alphabet() {
  return Alphabet{{"la", false}, {"lb", false}, {"lambda", false}};
}

Alphabet double_ab_alphabet() {
  return Alphabet{{"a", false}, {"b", false}, {"a", true}, {"b", true}};
}

CnWord c_n_word(int n) {
  if (n < 0) throw ArgumentError("c_n_word: n must be non-negative");
  const Letter b = 2, la = 3, lb = 4;
  std::vector<Letter> inner;  // b⁻ⁿ ℓ_aⁿ bⁿ ℓ_bⁿ
  for (int i = 0; i < n; ++i) inner.push_back(-b);
  for (int i = 0; i < n; ++i) inner.push_back(la);
  for (int i = 0; i < n; ++i) inner.push_back(b);
  for (int i = 0; i < n; ++i) inner.push_back(lb);
  CnWord out;
  for (int i = 0; i < n; ++i) out.spelling.push_back(la);
  for (int i = 0; i < n; ++i) out.spelling.push_back(lb);
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) out.spelling.push_back(-*it);
  out.word = Word::reduce(out.spelling);
  return out;
}

namespace {

// Letters of double_ab_alphabet(): a=1, b=2, ā=3, b̄=4.
Word ell_a() { return Word::reduce({-1, 3}); }
Word ell_b() { return Word::reduce({-2, 4}); }
Word lambda_double() {
  Word lab = Word::reduce({-2, -1, 3, 4});  // (ab)⁻¹ · āb̄
  return ell_a() * ell_b() * lab.inverse();
}

}  // namespace

Word cn_to_double(const Word& w) {
  std::vector<Word> images{Word(1), Word(2), ell_a(), ell_b()};
  return substitute(w, images);
}

Word l_to_double(const Word& w) {
  std::vector<Word> images{ell_a(), ell_b(), lambda_double()};
  return substitute(w, images);
}

FreeAreaReduction reduce_to_free_area(const Word& w) {
  const Letter lam = 3;
  FreeAreaReduction out;
  // Invariant: prefix read so far = V · ∏ λ^{±θᵢ}; reading x ∈ {ℓ_a, ℓ_b}^{±1}
  // uses (∏ λ^{±θᵢ})·x = x·∏ λ^{±θᵢx}.
  std::vector<Letter> v;
  for (Letter l : w.letters()) {
    if (index_of(l) > 2) throw ArgumentError("reduce_to_free_area: letter outside {la, lb, lambda}");
    if (index_of(l) + 1 == static_cast<std::size_t>(lam)) {
      out.factors.push_back({Word{}, sign_of(l)});
    } else {
      v.push_back(l);
      Word x(l);
      for (auto& f : out.factors) f.theta *= x;
    }
  }
  out.V = Word::reduce(v);

  Word back = out.V;
  for (const auto& f : out.factors) back *= Word(f.sign * lam).conjugate(f.theta);
  out.round_trip = back == w;

  // Killing a, b: ℓ_x ↦ x̄ and λ ↦ āb̄(āb̄)⁻¹ = 1.
  std::vector<Word> pbar_images{Word(3), Word(4), Word{}};
  out.pbar_trivial = substitute(w, pbar_images).empty();
  out.v_empty = out.V.empty();

  // Killing ā, b̄: ℓ_x ↦ x⁻¹, λ ↦ [a,b].
  std::vector<Word> p_images{Word(-1), Word(-2), commutator(Word(1), Word(2))};
  out.projected.word = substitute(out.V.inverse() * w, p_images);
  for (const auto& f : out.factors)
    out.projected.factors.push_back({substitute(f.theta, p_images), 0, f.sign});
  out.projected_valid = check_certificate(commutator_presentation(), out.projected);
  return out;
}

DistortionBracket distortion_bracket(int n) {
  if (n < 0) throw ArgumentError("distortion_bracket: n must be non-negative");
  return {static_cast<std::size_t>(n) * static_cast<std::size_t>(n), std::nullopt};
}

}  // namespace xg
