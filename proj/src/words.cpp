#include "xg/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "scanner.hpp"

namespace xg {

Alphabet::Alphabet(std::initializer_list<GenSymbol> symbols) {
  for (const auto& s : symbols) add(s);
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  if (name.size() > 1 && name[0] == 'l' && name[1] == '_') return false;  // reserved for ℓ_g
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::size_t Alphabet::add(GenSymbol s) {
  if (!is_identifier(s.base)) throw ArgumentError("invalid generator name '" + s.base + "'");
  if (lookup_.contains(s)) throw ArgumentError("duplicate generator '" + s.text() + "'");
  std::size_t i = symbols_.size();
  lookup_.emplace(s, i);
  symbols_.push_back(std::move(s));
  return i;
}

std::optional<std::size_t> Alphabet::find(const GenSymbol& s) const {
  auto it = lookup_.find(s);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index(const GenSymbol& s) const {
  if (auto i = find(s)) return *i;
  throw AlphabetError("unknown generator '" + s.text() + "'");
}

std::size_t Alphabet::partner(std::size_t i) const {
  const GenSymbol& s = symbol(i);
  return index(GenSymbol{s.base, !s.barred});
}

bool Alphabet::has_bar_copies() const {
  return std::all_of(symbols_.begin(), symbols_.end(), [this](const GenSymbol& s) {
    return find(GenSymbol{s.base, !s.barred}).has_value();
  });
}

Word Word::reduce(std::span<const Letter> raw) {
  Word w;
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw AlphabetError("letter 0 is not a generator");
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.resize(letters_.size());
  std::transform(letters_.rbegin(), letters_.rend(), w.letters_.begin(),
                 [](Letter l) { return -l; });
  return w;
}

Word Word::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  // Conjugate form u⁻¹ c u: powers only touch the cyclic core.
  std::size_t strip = 0;
  while (2 * strip + 1 < letters_.size() &&
         letters_[strip] == -letters_[letters_.size() - 1 - strip])
    ++strip;
  Word result;
  if (k == 0 || empty()) return result;
  std::vector<Letter> raw;
  raw.reserve(2 * strip + (letters_.size() - 2 * strip) * static_cast<std::size_t>(k));
  raw.insert(raw.end(), letters_.begin(), letters_.begin() + static_cast<long>(strip));
  for (long i = 0; i < k; ++i)
    raw.insert(raw.end(), letters_.begin() + static_cast<long>(strip),
               letters_.end() - static_cast<long>(strip));
  raw.insert(raw.end(), letters_.end() - static_cast<long>(strip), letters_.end());
  return reduce(raw);
}

Word Word::conjugate(const Word& by) const { return by.inverse() * *this * by; }

Word Word::cyclic_reduction() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<long>(lo),
                    letters_.begin() + static_cast<long>(hi));
  return w;
}

bool Word::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != -letters_.back();
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t i = 0;
  while (i < rhs.letters_.size() && !letters_.empty() && letters_.back() == -rhs.letters_[i]) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<long>(i), rhs.letters_.end());
  return *this;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
  return letters_ <=> o.letters_;
}

Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

Word left_normed(std::span<const Word> ws) {
  if (ws.empty()) throw ArgumentError("left_normed needs at least one word");
  Word acc = ws.front();
  for (std::size_t i = 1; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
  return acc;
}

Word engel_word(const Word& x, const Word& y, int n) {
  if (n < 1) throw ArgumentError("engel_word requires n >= 1");
  Word acc = commutator(x, y);
  for (int i = 1; i < n; ++i) acc = commutator(acc, y);
  return acc;
}

StructuralImages structural_maps(const Alphabet& alphabet, const Word& w) {
  std::vector<Letter> bar_raw, pi_raw, pibar_raw, rho_raw[3];
  for (Letter l : w.letters()) {
    std::size_t i = index_of(l);
    int s = sign_of(l);
    bool barred = alphabet.symbol(i).barred;
    std::size_t other = alphabet.partner(i);
    std::size_t plain = barred ? other : i;
    Letter g = letter_of(plain, s);
    bar_raw.push_back(letter_of(other, s));
    pi_raw.push_back(g);
    if (barred) {
      pibar_raw.push_back(g);
      rho_raw[1].push_back(g);
      rho_raw[2].push_back(g);
    } else {
      rho_raw[0].push_back(g);
      rho_raw[1].push_back(g);
    }
  }
  return StructuralImages{Word::reduce(bar_raw),
                          Word::reduce(pi_raw),
                          Word::reduce(pibar_raw),
                          {Word::reduce(rho_raw[0]), Word::reduce(rho_raw[1]),
                           Word::reduce(rho_raw[2])}};
}

Word bar(const Alphabet& alphabet, const Word& w) {
  std::vector<Letter> raw;
  raw.reserve(w.length());
  for (Letter l : w.letters()) raw.push_back(letter_of(alphabet.partner(index_of(l)), sign_of(l)));
  return Word::reduce(raw);
}

Word substitute(const Word& w, std::span<const Word> images) {
  Word out;
  for (Letter l : w.letters()) {
    std::size_t i = index_of(l);
    if (i >= images.size()) throw AlphabetError("letter outside substitution domain");
    out *= sign_of(l) > 0 ? images[i] : images[i].inverse();
  }
  return out;
}

std::vector<long> exponent_sums(const Word& w, std::size_t alphabet_size) {
  std::vector<long> sums(alphabet_size, 0);
  for (Letter l : w.letters()) {
    std::size_t i = index_of(l);
    if (i >= alphabet_size) throw AlphabetError("letter outside alphabet");
    sums[i] += sign_of(l);
  }
  return sums;
}

namespace detail {
namespace {

bool starts_atom(Scanner& in) {
  char c = in.peek();
  return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '[' || c == '1';
}

Word parse_atom(Scanner& in, const Alphabet& alphabet) {
  char c = in.peek();
  if (c == '(') {
    in.expect('(');
    Word w = parse_word_expr(in, alphabet);
    in.expect(')');
    return w;
  }
  if (c == '[') {
    in.expect('[');
    std::vector<Word> parts{parse_word_expr(in, alphabet)};
    while (in.accept(',')) parts.push_back(parse_word_expr(in, alphabet));
    in.expect(']');
    if (parts.size() < 2) in.fail("commutator needs at least two entries");
    return left_normed(parts);
  }
  if (c == '1') {
    in.expect('1');
    return Word();
  }
  std::size_t at = in.position();
  std::string name = in.identifier();
  bool barred = in.accept_tilde_tight();
  try {
    if (name.size() > 2 && name[0] == 'l' && name[1] == '_') {
      if (barred) in.fail("'~' is not allowed on an l_ token");
      std::string base = name.substr(2);
      Letter g = alphabet.letter(GenSymbol{base, false});
      Letter gbar = alphabet.letter(GenSymbol{base, true});
      return Word::reduce({-g, gbar});
    }
    return Word(alphabet.letter(GenSymbol{name, barred}));
  } catch (const AlphabetError& e) {
    throw AlphabetError(std::string(e.what()) + " at offset " + std::to_string(at));
  }
}

Word parse_power(Scanner& in, const Alphabet& alphabet) {
  Word w = parse_atom(in, alphabet);
  while (in.accept('^')) w = w.pow(in.integer());
  return w;
}

}  // namespace

Word parse_word_expr(Scanner& in, const Alphabet& alphabet) {
  Word w = parse_power(in, alphabet);
  for (;;) {
    if (in.accept('*')) {
      w *= parse_power(in, alphabet);
    } else if (starts_atom(in)) {
      w *= parse_power(in, alphabet);
    } else {
      return w;
    }
  }
}

}  // namespace detail

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  detail::Scanner in(text);
  if (in.at_end()) return Word();
  Word w = detail::parse_word_expr(in, alphabet);
  if (!in.at_end()) in.fail("unexpected trailing input");
  return w;
}

std::string to_string(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::ostringstream out;
  auto letters = w.letters();
  bool first = true;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    long run = static_cast<long>(j - i) * sign_of(letters[i]);
    if (!first) out << " * ";
    first = false;
    out << alphabet.symbol(index_of(letters[i])).text();
    if (run != 1) out << '^' << run;
    i = j;
  }
  return out.str();
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace xg
