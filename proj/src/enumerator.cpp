#include "xg/enumerator.hpp"

#include <array>
#include <deque>
#include <numeric>
#include <utility>

#include "xg/errors.hpp"

namespace xg {

namespace {

constexpr std::int32_t kUndefined = -1;

/// Column of a letter: 2i for generator i, 2i+1 for its inverse.
constexpr std::size_t column(Letter l) { return 2 * index_of(l) + (l > 0 ? 0 : 1); }
constexpr std::size_t inverse_column(std::size_t c) { return c ^ 1u; }

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::span<const Word> subgens, const EnumerationOptions& options)
      : columns_(2 * p.rank()), capacity_(options.max_cosets), felsch_(options.strategy == Strategy::felsch) {
    if (capacity_ == 0) throw ArgumentError("coset budget must be positive");
    for (const auto& r : p.relators()) relators_.push_back(to_columns(r));
    for (const auto& s : subgens) subgens_.push_back(to_columns(s));
    if (felsch_) {
      // Cyclic conjugates of relators and their inverses, grouped by first column.
      conjugates_.resize(columns_);
      for (const auto& r : relators_) {
        const std::vector<std::size_t>& fwd = r;
        std::vector<std::size_t> inv(r.rbegin(), r.rend());
        for (auto& c : inv) c = inverse_column(c);
        for (const auto* base : std::array<const std::vector<std::size_t>*, 2>{&fwd, &inv})
          for (std::size_t k = 0; k < base->size(); ++k) {
            std::vector<std::size_t> rot(base->begin() + static_cast<long>(k), base->end());
            rot.insert(rot.end(), base->begin(), base->begin() + static_cast<long>(k));
            conjugates_[rot.front()].push_back(std::move(rot));
          }
      }
    }
    new_coset();
  }

  CosetTable run() {
    for (const auto& s : subgens_) scan_and_fill(0, s);
    if (felsch_)
      run_felsch();
    else
      run_hlt();
    close();
    return extract();
  }

 private:
  std::vector<std::size_t> to_columns(const Word& w) const {
    std::vector<std::size_t> cols;
    cols.reserve(w.length());
    for (Letter l : w.letters()) {
      if (column(l) >= columns_) throw AlphabetError("word uses a generator outside the presentation");
      cols.push_back(column(l));
    }
    return cols;
  }

  std::int32_t& entry(std::size_t coset, std::size_t col) { return table_[coset * columns_ + col]; }
  bool live(std::size_t c) const { return parent_[c] == c; }

  std::size_t rep(std::size_t c) {
    std::size_t root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
      std::size_t next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

  std::size_t new_coset() {
    std::size_t c = parent_.size();
    parent_.push_back(c);
    table_.resize(table_.size() + columns_, kUndefined);
    ++live_count_;
    return c;
  }

  /// Room for one more live coset, running a lookahead first if needed.
  bool has_room() {
    if (live_count_ < capacity_) return true;
    lookahead();
    return live_count_ < capacity_;
  }

  /// Defines coset·col as a new coset. Rows are never renumbered here, so
  /// held indices stay valid; a held coset may die during lookahead.
  void define(std::size_t coset, std::size_t col) {
    if (!has_room()) throw CosetOverflow(capacity_);
    if (!live(coset)) return;
    std::size_t beta = new_coset();
    set_pair(coset, col, beta);
  }

  void set_pair(std::size_t a, std::size_t col, std::size_t b) {
    entry(a, col) = static_cast<std::int32_t>(b);
    entry(b, inverse_column(col)) = static_cast<std::int32_t>(a);
    if (felsch_) deductions_.emplace_back(a, col);
  }

  /// HLT scan: defines new cosets until the relator closes at `alpha`.
  void scan_and_fill(std::size_t alpha, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    for (;;) {
      if (!live(alpha)) return;
      std::size_t f = alpha, b = alpha;
      std::size_t i = 0, j = w.size();  // unscanned letters are w[i..j)
      while (i < j && entry(f, w[i]) != kUndefined) f = static_cast<std::size_t>(entry(f, w[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && entry(b, inverse_column(w[j - 1])) != kUndefined)
        b = static_cast<std::size_t>(entry(b, inverse_column(w[--j])));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        set_pair(f, w[i], b);
        return;
      }
      define(f, w[i]);
    }
  }

  /// Scan without definitions: records deductions and coincidences only.
  void scan(std::size_t alpha, const std::vector<std::size_t>& w) {
    if (w.empty() || !live(alpha)) return;
    std::size_t f = alpha, b = alpha;
    std::size_t i = 0, j = w.size();
    while (i < j && entry(f, w[i]) != kUndefined) f = static_cast<std::size_t>(entry(f, w[i++]));
    if (i == j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j > i && entry(b, inverse_column(w[j - 1])) != kUndefined)
      b = static_cast<std::size_t>(entry(b, inverse_column(w[--j])));
    if (j == i)
      coincidence(f, b);
    else if (j == i + 1)
      set_pair(f, w[i], b);
  }

  void merge(std::size_t k, std::size_t l, std::deque<std::size_t>& queue) {
    std::size_t phi = rep(k), psi = rep(l);
    if (phi == psi) return;
    std::size_t mu = std::min(phi, psi), nu = std::max(phi, psi);
    parent_[nu] = mu;
    --live_count_;
    queue.push_back(nu);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t gamma = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < columns_; ++x) {
        std::int32_t d = entry(gamma, x);
        if (d == kUndefined) continue;
        auto delta = static_cast<std::size_t>(d);
        std::size_t xi = inverse_column(x);
        if (entry(delta, xi) == static_cast<std::int32_t>(gamma)) entry(delta, xi) = kUndefined;
        std::size_t mu = rep(gamma), nu = rep(delta);
        if (entry(mu, x) != kUndefined) {
          merge(nu, static_cast<std::size_t>(entry(mu, x)), queue);
        } else if (entry(nu, xi) != kUndefined) {
          merge(mu, static_cast<std::size_t>(entry(nu, xi)), queue);
        } else {
          set_pair(mu, x, nu);
        }
      }
    }
  }

  void lookahead() {
    for (std::size_t c = 0; c < parent_.size(); ++c)
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r);
      }
    process_deductions();
  }

  /// Renumbers live cosets 0..k-1 preserving order. Only called when no
  /// coset index is held outside the table; `cursor` becomes the number of
  /// live cosets below it, i.e. the next live coset at or after it.
  void compact(std::size_t& cursor) {
    std::vector<std::size_t> newnum(parent_.size(), 0);
    std::size_t k = 0, moved = parent_.size() > cursor ? 0 : live_count_;
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (c == cursor) moved = k;
      if (live(c)) newnum[c] = k++;
    }
    cursor = moved;
    std::vector<std::int32_t> table(k * columns_, kUndefined);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (std::size_t x = 0; x < columns_; ++x) {
        std::int32_t e = entry(c, x);
        if (e != kUndefined)
          table[newnum[c] * columns_ + x] = static_cast<std::int32_t>(newnum[rep(static_cast<std::size_t>(e))]);
      }
    }
    table_ = std::move(table);
    deductions_.clear();
    parent_.resize(k);
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  /// Compacts at a safe point once dead rows outnumber live ones.
  void maybe_compact(std::size_t& cursor) {
    std::size_t dead = parent_.size() - live_count_;
    if (dead > 4096 && dead > live_count_) compact(cursor);
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [alpha, x] = deductions_.back();
      deductions_.pop_back();
      if (!felsch_ || !live(alpha)) continue;
      for (const auto& r : conjugates_[x]) {
        if (!live(alpha)) break;
        scan(alpha, r);
      }
      std::int32_t beta = entry(alpha, x);
      if (beta == kUndefined) continue;
      std::size_t b = rep(static_cast<std::size_t>(beta));
      for (const auto& r : conjugates_[inverse_column(x)]) {
        if (!live(b)) break;
        scan(b, r);
      }
    }
  }

  void run_hlt() {
    for (std::size_t alpha = 0; alpha < parent_.size(); ++alpha) {
      maybe_compact(alpha);
      if (alpha >= parent_.size()) break;
      for (const auto& r : relators_) {
        if (!live(alpha)) break;
        scan_and_fill(alpha, r);
      }
      for (std::size_t x = 0; x < columns_ && live(alpha); ++x)
        if (entry(alpha, x) == kUndefined) define(alpha, x);
    }
  }

  void run_felsch() {
    process_deductions();
    std::size_t c = 0;
    while (c < parent_.size()) {
      maybe_compact(c);
      if (c >= parent_.size()) break;
      std::size_t x = 0;
      if (live(c))
        while (x < columns_ && entry(c, x) != kUndefined) ++x;
      if (!live(c) || x == columns_) {
        ++c;
        continue;
      }
      define(c, x);
      process_deductions();
    }
  }

  /// Scans every relator at every live coset until nothing changes.
  void close() {
    bool changed = true;
    while (changed) {
      std::size_t before = live_count_;
      for (std::size_t c = 0; c < parent_.size(); ++c)
        for (const auto& r : relators_) {
          if (!live(c)) break;
          scan_and_fill(c, r);
        }
      for (const auto& s : subgens_) scan_and_fill(rep(0), s);
      changed = live_count_ != before;
    }
    std::size_t cursor = 0;
    compact(cursor);
  }

  CosetTable extract() {
    const std::size_t n = parent_.size();
    const std::size_t rank = columns_ / 2;
    std::vector<std::vector<std::uint32_t>> actions(rank, std::vector<std::uint32_t>(n));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t g = 0; g < rank; ++g) {
        std::int32_t e = entry(c, 2 * g);
        if (e == kUndefined) throw VerificationError("coset table not closed after enumeration");
        actions[g][c] = static_cast<std::uint32_t>(e);
      }
    return CosetTable(std::move(actions), {});
  }

  std::size_t columns_;
  std::size_t capacity_;
  bool felsch_;
  std::vector<std::vector<std::size_t>> relators_, subgens_;
  std::vector<std::vector<std::vector<std::size_t>>> conjugates_;
  std::vector<std::int32_t> table_;
  std::vector<std::size_t> parent_;
  std::size_t live_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> deductions_;
};

}  // namespace

CosetTable::CosetTable(std::vector<std::vector<std::uint32_t>> actions, std::vector<Word> subgroup_words)
    : forward_(std::move(actions)), subgroup_words_(std::move(subgroup_words)) {
  size_ = forward_.empty() ? 1 : forward_.front().size();
  backward_.reserve(forward_.size());
  for (const auto& f : forward_) {
    if (f.size() != size_) throw ArgumentError("coset actions of unequal length");
    backward_.push_back(Permutation(f).inverse().images());
  }
}

std::size_t CosetTable::apply(std::size_t coset, const Word& w) const {
  for (Letter l : w.letters()) coset = act(coset, l);
  return coset;
}

std::vector<Word> CosetTable::transversal() const {
  std::vector<Word> words(size_);
  std::vector<bool> seen(size_, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < rank(); ++g)
      for (int s : {1, -1}) {
        Letter l = letter_of(g, s);
        std::size_t d = act(c, l);
        if (seen[d]) continue;
        seen[d] = true;
        words[d] = words[c] * Word(l);
        queue.push_back(d);
      }
  }
  return words;
}

bool CosetTable::is_consistent_with(const Presentation& p) const {
  if (p.rank() != rank()) return false;
  for (std::size_t c = 0; c < size_; ++c)
    for (const auto& r : p.relators())
      if (apply(c, r) != c) return false;
  for (const auto& s : subgroup_words_)
    if (apply(0, s) != 0) return false;
  return true;
}

CosetTable enumerate(const Presentation& p, std::span<const Word> subgens,
                     const EnumerationOptions& options) {
  if (p.rank() == 0) return CosetTable({}, std::vector<Word>(subgens.begin(), subgens.end()));
  CosetTable raw = Enumerator(p, subgens, options).run();
  std::vector<std::vector<std::uint32_t>> actions;
  for (std::size_t g = 0; g < raw.rank(); ++g) actions.push_back(raw.generator_permutation(g).images());
  CosetTable table(std::move(actions), std::vector<Word>(subgens.begin(), subgens.end()));
  if (!table.is_consistent_with(p)) throw VerificationError("enumerated coset table violates a relator");
  return table;
}

Permutation word_image(const CosetTable& table, const Word& w) {
  std::vector<std::uint32_t> images(table.size());
  for (std::size_t c = 0; c < table.size(); ++c) images[c] = static_cast<std::uint32_t>(table.apply(c, w));
  return Permutation(std::move(images));
}

}  // namespace xg
