#include "xg/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scanner.hpp"
#include "xg/enumerator.hpp"

namespace xg {

Presentation::Presentation(Alphabet generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  for (const auto& r : relators) add_relator(r);
}

void Presentation::add_relator(const Word& r) {
  for (Letter l : r.letters())
    if (index_of(l) >= generators_.size()) throw AlphabetError("relator uses an undeclared generator");
  Word c = r.cyclic_reduction();
  if (!c.empty()) relators_.push_back(std::move(c));
}

Presentation parse_presentation(std::string_view text) {
  detail::Scanner in(text);
  in.expect('<');
  Alphabet gens;
  if (in.peek() != '|') {
    do {
      std::size_t at = in.position();
      std::string name = in.identifier();
      bool barred = in.accept_tilde_tight();
      if (!is_identifier(name)) throw ParseError("invalid generator name '" + name + "'", at);
      if (gens.find(GenSymbol{name, barred})) throw ParseError("duplicate generator '" + name + "'", at);
      gens.add(GenSymbol{name, barred});
    } while (in.accept(','));
  }
  in.expect('|');
  std::vector<Word> rels;
  if (in.peek() != '>') {
    do {
      rels.push_back(detail::parse_word_expr(in, gens));
    } while (in.accept(','));
  }
  in.expect('>');
  if (!in.at_end()) in.fail("unexpected trailing input");
  return Presentation(std::move(gens), std::move(rels));
}

std::string to_string(const Presentation& p) {
  std::ostringstream out;
  out << "< ";
  for (std::size_t i = 0; i < p.rank(); ++i) out << (i ? ", " : "") << p.generators().symbol(i).text();
  out << " | ";
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    out << (i ? ", " : "") << to_string(p.relators()[i], p.generators());
  out << " >";
  return out.str();
}

std::string describe(const WitnessPolicy& policy) {
  struct {
    std::string operator()(const AllElements&) const { return "all"; }
    std::string operator()(const LengthBound& b) const { return "len:" + std::to_string(b.k); }
    std::string operator()(const AutoWitness&) const { return "auto"; }
  } visitor;
  return std::visit(visitor, policy);
}

WitnessPolicy parse_witness_policy(std::string_view text, std::size_t max_cosets) {
  if (text == "all") return AllElements{max_cosets};
  if (text == "auto") return AutoWitness{max_cosets};
  if (text.starts_with("len:")) {
    std::string digits(text.substr(4));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ArgumentError("witness policy length must be a nonnegative integer");
    return LengthBound{std::stoi(digits)};
  }
  throw ArgumentError("unknown witness policy '" + std::string(text) + "'");
}

namespace {

std::vector<Word> element_witnesses(const Presentation& p, std::size_t max_cosets) {
  CosetTable table = enumerate(p, {}, EnumerationOptions{max_cosets, Strategy::hlt});
  std::vector<Word> reps = table.transversal();
  std::vector<Word> out;
  for (std::size_t c = 1; c < table.size(); ++c) {
    std::size_t inv = table.apply(0, reps[c].inverse());
    if (inv < c) continue;  // [g⁻¹, ḡ⁻¹] is a consequence of [g, ḡ]
    out.push_back(reps[c]);
  }
  return out;
}

std::vector<Word> bounded_witnesses(const Presentation& p, int k) {
  if (k < 0) throw ArgumentError("witness length bound must be nonnegative");
  std::vector<Letter> letters;
  for (std::size_t g = 0; g < p.rank(); ++g) {
    letters.push_back(letter_of(g, 1));
    letters.push_back(letter_of(g, -1));
  }
  std::vector<Word> out, frontier{Word()};
  for (int len = 1; len <= k; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (Letter l : letters) {
        if (!w.empty() && w.letters().back() == -l) continue;
        next.push_back(w * Word(l));
      }
    for (const auto& w : next)
      if (!(w.inverse() < w)) out.push_back(w);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Word> witness_words(const Presentation& p, const WitnessPolicy& policy, bool* exhaustive) {
  if (exhaustive) *exhaustive = false;
  if (const auto* all = std::get_if<AllElements>(&policy)) {
    auto words = element_witnesses(p, all->max_cosets);
    if (exhaustive) *exhaustive = true;
    return words;
  }
  if (const auto* bound = std::get_if<LengthBound>(&policy)) return bounded_witnesses(p, bound->k);
  const auto& automatic = std::get<AutoWitness>(policy);
  try {
    auto words = element_witnesses(p, automatic.max_cosets);
    if (exhaustive) *exhaustive = true;
    return words;
  } catch (const CosetOverflow&) {
    return bounded_witnesses(p, 2);
  }
}

Word lift_to_double(const Word& w, const Alphabet& base, const Alphabet& doubled, bool barred) {
  std::vector<Letter> raw;
  raw.reserve(w.length());
  for (Letter l : w.letters()) {
    const GenSymbol& s = base.symbol(index_of(l));
    raw.push_back(doubled.letter(GenSymbol{s.base, barred}, sign_of(l)));
  }
  return Word::reduce(raw);
}

Presentation sidki_double(const Presentation& p, const WitnessPolicy& policy) {
  for (const auto& s : p.generators().symbols())
    if (s.barred) throw ArgumentError("sidki_double expects a presentation without barred generators");
  Alphabet doubled;
  for (const auto& s : p.generators().symbols()) doubled.add(GenSymbol{s.base, false});
  for (const auto& s : p.generators().symbols()) doubled.add(GenSymbol{s.base, true});

  bool exhaustive = false;
  std::vector<Word> witnesses = witness_words(p, policy, &exhaustive);

  Presentation out(doubled, {});
  for (const auto& r : p.relators()) out.add_relator(lift_to_double(r, p.generators(), doubled, false));
  for (const auto& r : p.relators()) out.add_relator(lift_to_double(r, p.generators(), doubled, true));
  for (const auto& w : witnesses) {
    Word plain = lift_to_double(w, p.generators(), doubled, false);
    Word barred = lift_to_double(w, p.generators(), doubled, true);
    out.add_relator(commutator(plain, barred));
  }
  if (std::holds_alternative<AutoWitness>(policy))
    out.meta.witness_policy = exhaustive ? "all" : "len:2";
  else
    out.meta.witness_policy = describe(policy);
  out.meta.may_be_proper_preimage = !exhaustive;
  return out;
}

IntMatrix<BigInt> exponent_matrix(const Presentation& p) {
  const auto rows = static_cast<Eigen::Index>(p.relators().size());
  const auto cols = static_cast<Eigen::Index>(p.rank());
  IntMatrix<BigInt> m = IntMatrix<BigInt>::Zero(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    auto sums = exponent_sums(p.relators()[static_cast<std::size_t>(r)], p.rank());
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = sums[static_cast<std::size_t>(c)];
  }
  return m;
}

FinAbGroup abelianization(const Presentation& p) { return cokernel(exponent_matrix(p)); }

namespace {

/// Combined alphabet of two presentations, renaming clashing bases.
Alphabet merged_alphabet(const Alphabet& left, const Alphabet& right) {
  std::set<std::string> lbases, rbases;
  for (const auto& s : left.symbols()) lbases.insert(s.base);
  for (const auto& s : right.symbols()) rbases.insert(s.base);
  Alphabet out;
  for (const auto& s : left.symbols())
    out.add(GenSymbol{rbases.contains(s.base) ? s.base + "_1" : s.base, s.barred});
  for (const auto& s : right.symbols())
    out.add(GenSymbol{lbases.contains(s.base) ? s.base + "_2" : s.base, s.barred});
  return out;
}

Word shifted(const Word& w, std::size_t offset) {
  std::vector<Letter> raw;
  raw.reserve(w.length());
  for (Letter l : w.letters()) raw.push_back(letter_of(index_of(l) + offset, sign_of(l)));
  return Word::reduce(raw);
}

}  // namespace

Presentation free_product(const Presentation& left, const Presentation& right) {
  Presentation out(merged_alphabet(left.generators(), right.generators()), {});
  for (const auto& r : left.relators()) out.add_relator(r);
  for (const auto& r : right.relators()) out.add_relator(shifted(r, left.rank()));
  return out;
}

Presentation direct_product(const Presentation& left, const Presentation& right) {
  Presentation out = free_product(left, right);
  for (std::size_t i = 0; i < left.rank(); ++i)
    for (std::size_t j = 0; j < right.rank(); ++j)
      out.add_relator(commutator(Word(letter_of(i)), Word(letter_of(left.rank() + j))));
  return out;
}

}  // namespace xg
