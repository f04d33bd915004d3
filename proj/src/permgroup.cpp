#include "xg/permgroup.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <mutex>
#include <unordered_set>

#include "xg/errors.hpp"

namespace xg {

namespace detail {

/// Deterministic Schreier–Sims with optional leading base points.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, const std::vector<Permutation>& gens,
                  const std::vector<std::size_t>& prefix = {})
      : degree_(degree) {
    for (std::size_t b : prefix) levels_.push_back(Level{b, {}, {}, {}, {}});
    for (const auto& g : gens) {
      if (g.is_identity()) continue;
      if (std::all_of(levels_.begin(), levels_.end(), [&](const Level& l) { return g(l.point) == l.point; }))
        levels_.push_back(Level{first_moved(g), {}, {}, {}, {}});
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (const auto& g : gens) {
        if (g.is_identity()) continue;
        bool fixes = true;
        for (std::size_t j = 0; j < i && fixes; ++j) fixes = g(levels_[j].point) == levels_[j].point;
        if (fixes) levels_[i].gens.push_back(g);
      }
      rebuild(levels_[i]);
    }
    complete();
  }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto& l : levels_) n *= l.orbit.size();
    return n;
  }

  /// Sifts g through levels [from, to); returns the residue and the level
  /// where sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from, std::size_t to) const {
    for (std::size_t i = from; i < to; ++i) {
      const Level& l = levels_[i];
      std::int32_t k = l.rep_index[g(l.point)];
      if (k < 0) return {std::move(g), i};
      g = g * l.reps[static_cast<std::size_t>(k)].inverse();
    }
    return {std::move(g), to};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    return sift(g, 0, levels_.size()).first.is_identity();
  }

  std::size_t length() const { return levels_.size(); }
  /// Strong generators of the pointwise stabilizer of the first i base points.
  std::vector<Permutation> stabilizer_generators(std::size_t i) const {
    return i < levels_.size() ? levels_[i].gens : std::vector<Permutation>{};
  }

 private:
  struct Level {
    std::size_t point;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> rep_index;  // point -> index into reps, -1 outside the orbit
    std::vector<Permutation> reps;        // reps[k] maps `point` to orbit[k]
    std::vector<std::size_t> orbit;
  };

  static std::size_t first_moved(const Permutation& g) {
    for (std::size_t i = 0; i < g.degree(); ++i)
      if (g(i) != i) return i;
    return 0;
  }

  void rebuild(Level& l) const {
    l.rep_index.assign(degree_, -1);
    l.reps.clear();
    l.orbit.clear();
    l.rep_index[l.point] = 0;
    l.reps.push_back(Permutation::identity(degree_));
    l.orbit.push_back(l.point);
    for (std::size_t k = 0; k < l.orbit.size(); ++k)
      for (const auto& s : l.gens) {
        std::size_t q = s(l.orbit[k]);
        if (l.rep_index[q] >= 0) continue;
        l.rep_index[q] = static_cast<std::int32_t>(l.orbit.size());
        l.reps.push_back(l.reps[k] * s);
        l.orbit.push_back(q);
      }
  }

  void complete() {
    auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      auto li = static_cast<std::size_t>(i);
      bool added = false;
      for (std::size_t k = 0; k < levels_[li].orbit.size() && !added; ++k)
        for (std::size_t s = 0; s < levels_[li].gens.size() && !added; ++s) {
          const Level& l = levels_[li];
          const Permutation& gen = l.gens[s];
          std::size_t q = gen(l.orbit[k]);
          Permutation h = l.reps[k] * gen * l.reps[static_cast<std::size_t>(l.rep_index[q])].inverse();
          if (h.is_identity()) continue;
          auto [residue, j] = sift(std::move(h), li + 1, levels_.size());
          if (residue.is_identity()) continue;
          if (j == levels_.size()) levels_.push_back(Level{first_moved(residue), {}, {}, {}, {}});
          for (std::size_t t = li + 1; t <= j; ++t) {
            levels_[t].gens.push_back(residue);
            rebuild(levels_[t]);
          }
          i = static_cast<std::ptrdiff_t>(j);
          added = true;
        }
      if (!added) --i;
    }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
};

}  // namespace detail

struct PermGroup::Cache {
  std::once_flag chain_once;
  std::unique_ptr<detail::StabilizerChain> chain;
  std::mutex elements_mutex;
  bool have_elements = false;
  std::vector<Permutation> elements;
};

namespace {

const detail::StabilizerChain& chain_of(std::once_flag& once, std::unique_ptr<detail::StabilizerChain>& chain,
                                        std::size_t degree, const std::vector<Permutation>& gens) {
  std::call_once(once, [&] { chain = std::make_unique<detail::StabilizerChain>(degree, gens); });
  return *chain;
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t guard)
    : degree_(degree), guard_(guard), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.degree() != degree) throw ArgumentError("generator degree does not match group degree");
    generators_.push_back(std::move(g));
  }
}

std::uint64_t PermGroup::order() const {
  return chain_of(cache_->chain_once, cache_->chain, degree_, generators_).order();
}

bool PermGroup::contains(const Permutation& g) const {
  return chain_of(cache_->chain_once, cache_->chain, degree_, generators_).contains(g);
}

const std::vector<Permutation>& PermGroup::elements() const {
  std::lock_guard lock(cache_->elements_mutex);
  if (cache_->have_elements) return cache_->elements;
  if (order() > guard_) throw GuardError("group of order " + std::to_string(order()) + " is too large to list", guard_);
  std::vector<Permutation> out{identity()};
  std::unordered_set<Permutation, PermutationHash> seen{identity()};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& s : generators_) {
      Permutation next = out[k] * s;
      if (seen.insert(next).second) out.push_back(std::move(next));
    }
  std::sort(out.begin(), out.end());
  cache_->elements = std::move(out);
  cache_->have_elements = true;
  return cache_->elements;
}

std::size_t PermGroup::element_index(const Permutation& g) const {
  const auto& els = elements();
  auto it = std::lower_bound(els.begin(), els.end(), g);
  return it != els.end() && *it == g ? static_cast<std::size_t>(it - els.begin()) : static_cast<std::size_t>(-1);
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i]) return false;
  return true;
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree_ != other.degree_) return false;
  return std::all_of(generators_.begin(), generators_.end(), [&](const Permutation& g) { return other.contains(g); });
}

bool PermGroup::operator==(const PermGroup& other) const {
  return degree_ == other.degree_ && order() == other.order() && is_subgroup_of(other);
}

Permutation evaluate(std::span<const Permutation> images, const Word& w) {
  if (images.empty()) return Permutation();
  Permutation out = Permutation::identity(images.front().degree());
  std::vector<Permutation> inverses;
  inverses.reserve(images.size());
  for (const auto& p : images) inverses.push_back(p.inverse());
  for (Letter l : w.letters()) {
    std::size_t i = index_of(l);
    if (i >= images.size()) throw AlphabetError("word uses a generator without an image");
    out = out * (sign_of(l) > 0 ? images[i] : inverses[i]);
  }
  return out;
}

Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

Permutation direct_sum(std::span<const Permutation> parts) {
  std::vector<std::uint32_t> images;
  std::uint32_t offset = 0;
  for (const auto& p : parts) {
    for (auto v : p.images()) images.push_back(v + offset);
    offset += static_cast<std::uint32_t>(p.degree());
  }
  return Permutation(std::move(images));
}

PermGroup perm_realization(const CosetTable& table, std::size_t guard) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < table.rank(); ++i) gens.push_back(table.generator_permutation(i));
  return PermGroup(table.size(), std::move(gens), guard);
}

PermGroup subgroup(const PermGroup& g, std::vector<Permutation> gens) {
  return PermGroup(g.degree(), std::move(gens), g.guard());
}

PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> gens) {
  std::vector<Permutation> hg;
  for (const auto& x : gens)
    if (!x.is_identity()) hg.push_back(x);
  PermGroup h(g.degree(), hg, g.guard());
  for (std::size_t i = 0; i < hg.size(); ++i)
    for (const auto& x : g.generators()) {
      Permutation c = x.inverse() * hg[i] * x;
      if (h.contains(c)) continue;
      hg.push_back(std::move(c));
      h = PermGroup(g.degree(), hg, g.guard());
    }
  return h;
}

namespace {

/// Subgroup generated by the elements of `pool` accepted by `keep`.
template <class Pred>
PermGroup filtered_subgroup(std::size_t degree, std::size_t guard, const std::vector<Permutation>& pool, Pred keep) {
  std::vector<Permutation> gens;
  PermGroup h(degree, {}, guard);
  for (const auto& x : pool) {
    if (!keep(x) || h.contains(x)) continue;
    gens.push_back(x);
    h = PermGroup(degree, gens, guard);
  }
  return h;
}

}  // namespace

PermGroup intersection(const PermGroup& h, const PermGroup& k) {
  if (h.degree() != k.degree()) throw ArgumentError("intersection of groups of different degree");
  const PermGroup& small = h.order() <= k.order() ? h : k;
  const PermGroup& large = h.order() <= k.order() ? k : h;
  return filtered_subgroup(h.degree(), h.guard(), small.elements(),
                           [&](const Permutation& x) { return large.contains(x); });
}

PermGroup centralizer(const PermGroup& h, const PermGroup& k) {
  return filtered_subgroup(h.degree(), h.guard(), h.elements(), [&](const Permutation& x) {
    return std::all_of(k.generators().begin(), k.generators().end(),
                       [&](const Permutation& y) { return x * y == y * x; });
  });
}

PermGroup center(const PermGroup& g) { return centralizer(g, g); }

PermGroup commutator_subgroup(const PermGroup& parent, const PermGroup& h, const PermGroup& k) {
  std::vector<Permutation> gens;
  for (const auto& a : h.generators())
    for (const auto& b : k.generators()) gens.push_back(commutator(a, b));
  return normal_closure(parent, gens);
}

PermGroup derived_subgroup(const PermGroup& g) { return commutator_subgroup(g, g, g); }

std::vector<PermGroup> lower_central_series(const PermGroup& g) {
  std::vector<PermGroup> series{g};
  for (;;) {
    PermGroup next = commutator_subgroup(g, series.back(), g);
    if (next.order() == series.back().order()) return series;
    series.push_back(std::move(next));
  }
}

PermGroup quotient_action(const PermGroup& g, const PermGroup& n) {
  const std::size_t deg = g.degree();
  std::vector<std::int64_t> block(deg, -1);
  std::vector<std::size_t> reps;
  for (std::size_t p = 0; p < deg; ++p) {
    if (block[p] >= 0) continue;
    auto b = static_cast<std::int64_t>(reps.size());
    reps.push_back(p);
    std::vector<std::size_t> stack{p};
    block[p] = b;
    while (!stack.empty()) {
      std::size_t q = stack.back();
      stack.pop_back();
      for (const auto& s : n.generators()) {
        std::size_t r = s(q);
        if (block[r] < 0) {
          block[r] = b;
          stack.push_back(r);
        }
      }
    }
  }
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<std::uint32_t> images(reps.size());
    for (std::size_t b = 0; b < reps.size(); ++b) images[b] = static_cast<std::uint32_t>(block[s(reps[b])]);
    gens.emplace_back(std::move(images));
  }
  return PermGroup(reps.size(), std::move(gens), g.guard());
}

NilpotencyClass nilpotency_class(const PermGroup& g) {
  auto series = lower_central_series(g);
  if (series.back().is_trivial()) return static_cast<int>(series.size()) - 1;
  return NotNilpotent{series.back().order()};
}

bool is_perfect(const PermGroup& g) { return derived_subgroup(g).order() == g.order(); }

std::vector<Permutation> class_representatives(const PermGroup& g) {
  const auto& els = g.elements();
  std::vector<bool> seen(els.size(), false);
  std::vector<Permutation> reps;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (seen[i]) continue;
    reps.push_back(els[i]);
    std::vector<std::size_t> stack{i};
    seen[i] = true;
    while (!stack.empty()) {
      std::size_t k = stack.back();
      stack.pop_back();
      for (const auto& s : g.generators()) {
        std::size_t j = g.element_index(s.inverse() * els[k] * s);
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return reps;
}

bool is_n_engel(const PermGroup& g, int n) {
  if (n < 1) throw ArgumentError("Engel degree must be positive");
  const auto reps = class_representatives(g);
  for (const auto& a : g.elements())
    for (const auto& b : reps) {
      Permutation c = commutator(a, b);
      for (int k = 1; k < n && !c.is_identity(); ++k) c = commutator(c, b);
      if (!c.is_identity()) return false;
    }
  return true;
}

EngelClass minimal_engel_class(const PermGroup& g, int cap) {
  if (cap < 1) throw ArgumentError("Engel cap must be positive");
  const auto reps = class_representatives(g);
  int best = 1;
  for (const auto& a : g.elements())
    for (const auto& b : reps) {
      Permutation c = commutator(a, b);
      int k = 1;
      while (!c.is_identity()) {
        if (k >= cap) return ExceedsCap{cap, a, b};
        c = commutator(c, b);
        ++k;
      }
      best = std::max(best, k);
    }
  return best;
}

namespace {

Permutation restrict(const Permutation& p, std::size_t offset, std::size_t length) {
  std::vector<std::uint32_t> images(length);
  for (std::size_t i = 0; i < length; ++i) images[i] = static_cast<std::uint32_t>(p(offset + i) - offset);
  return Permutation(std::move(images));
}

}  // namespace

GroupHom::GroupHom(PermGroup source, PermGroup target, std::vector<Permutation> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.generators().size())
    throw ArgumentError("homomorphism needs one image per source generator");
  const std::size_t m = target_.degree(), n = source_.degree();
  std::vector<Permutation> graph;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!target_.contains(images_[i])) throw ArgumentError("generator image outside the target group");
    std::array<Permutation, 2> parts{images_[i], source_.generators()[i]};
    graph.push_back(direct_sum(parts));
  }
  std::vector<std::size_t> target_points(m), source_points(n);
  for (std::size_t i = 0; i < m; ++i) target_points[i] = i;
  for (std::size_t i = 0; i < n; ++i) source_points[i] = m + i;

  auto by_source = std::make_shared<detail::StabilizerChain>(m + n, graph, source_points);
  if (by_source->order() != source_.order())
    throw ArgumentError("generator images do not define a homomorphism");
  graph_chain_ = by_source;

  detail::StabilizerChain by_target(m + n, graph, target_points);
  std::vector<Permutation> kernel_gens;
  for (const auto& k : by_target.stabilizer_generators(m)) kernel_gens.push_back(restrict(k, m, n));
  kernel_ = PermGroup(n, std::move(kernel_gens), source_.guard());
}

Permutation GroupHom::apply(const Permutation& x) const {
  if (!source_.contains(x)) throw ArgumentError("element outside the homomorphism's source");
  const std::size_t m = target_.degree(), n = source_.degree();
  std::array<Permutation, 2> parts{Permutation::identity(m), x};
  auto [residue, stop] = graph_chain_->sift(direct_sum(parts), 0, n);
  // residue = (1, x)·v⁻¹ for the graph element v = (φ(x), x)
  return restrict(residue, 0, m).inverse();
}

PermGroup GroupHom::kernel() const { return kernel_; }

PermGroup GroupHom::image() const { return PermGroup(target_.degree(), images_, target_.guard()); }

}  // namespace xg
