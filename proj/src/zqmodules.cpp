#include "xg/zqmodules.hpp"

#include <algorithm>
#include <numeric>

#include "xg/errors.hpp"

namespace xg {

namespace {

using Mat = IntMatrix<BigInt>;
using Row = IntRowVector<BigInt>;

Mat identity_matrix(std::size_t r) {
  const auto n = static_cast<Eigen::Index>(r);
  return Mat::Identity(n, n);
}

Mat stack(const Mat& a, const Mat& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  Mat out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = b * a(i, k);
  return out;
}

Mat rows_to_matrix(const std::vector<Row>& rows, std::size_t width) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i];
  return m;
}

}  // namespace

QModule::QModule(std::size_t rank, IntMatrix<BigInt> relations, std::vector<IntMatrix<BigInt>> action,
                 std::vector<IntMatrix<BigInt>> inverse_action)
    : quotient_(rank, std::move(relations)), action_(std::move(action)), inverse_action_(std::move(inverse_action)) {
  const auto r = static_cast<Eigen::Index>(rank);
  for (const auto* list : {&action_, &inverse_action_})
    for (const auto& a : *list)
      if (a.rows() != r || a.cols() != r) throw ArgumentError("action matrix has the wrong shape");
  if (!inverse_action_.empty() && inverse_action_.size() != action_.size())
    throw ArgumentError("inverse action needs one matrix per acting generator");
}

bool QModule::equal_in(const IntMatrix<BigInt>& a, const IntMatrix<BigInt>& b) const {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (!quotient_.is_zero(a.row(i) - b.row(i))) return false;
  return true;
}

bool QModule::action_is_automorphic() const {
  const Mat& rel = relations();
  const Mat id = identity_matrix(rank());
  for (std::size_t q = 0; q < action_.size(); ++q) {
    const Mat& a = action_[q];
    Mat image = rel * a;
    for (Eigen::Index i = 0; i < image.rows(); ++i)
      if (!quotient_.is_zero(image.row(i))) return false;
    if (!cokernel(stack(a, rel)).is_trivial()) return false;
    if (!inverse_action_.empty() && !equal_in(a * inverse_action_[q], id)) return false;
  }
  return true;
}

IntMatrix<BigInt> QModule::word_action(const Word& w) const {
  Mat m = identity_matrix(rank());
  for (Letter l : w.letters()) {
    std::size_t i = index_of(l);
    if (i >= action_.size()) throw AlphabetError("word uses an acting generator the module does not have");
    if (sign_of(l) > 0) {
      m = m * action_[i];
    } else {
      if (inverse_action_.empty()) throw ArgumentError("module has no inverse action matrices");
      m = m * inverse_action_[i];
    }
  }
  return m;
}

bool QModule::respects(std::span<const Word> acting_relators) const {
  const Mat id = identity_matrix(rank());
  return std::all_of(acting_relators.begin(), acting_relators.end(),
                     [&](const Word& r) { return equal_in(word_action(r), id); });
}

bool same_module(const QModule& a, const QModule& b) {
  if (a.rank() != b.rank() || a.action().size() != b.action().size()) return false;
  for (Eigen::Index i = 0; i < a.relations().rows(); ++i)
    if (!b.quotient().is_zero(a.relations().row(i))) return false;
  for (Eigen::Index i = 0; i < b.relations().rows(); ++i)
    if (!a.quotient().is_zero(b.relations().row(i))) return false;
  for (std::size_t q = 0; q < a.action().size(); ++q)
    if (!a.equal_in(a.action()[q], b.action()[q])) return false;
  return true;
}

std::optional<BigInt> span_order(const QModule& v, const IntMatrix<BigInt>& span) {
  return v.quotient().subgroup_order(span);
}

BigInt span_exponent(const QModule& v, const IntMatrix<BigInt>& span) {
  BigInt e = 1;
  for (Eigen::Index i = 0; i < span.rows(); ++i) {
    BigInt o = element_order(v.underlying(), v.quotient().coordinates(span.row(i)));
    if (o == 0) return 0;
    e = boost::multiprecision::lcm(e, o);
  }
  return e;
}

bool span_is_zero(const QModule& v, const IntMatrix<BigInt>& span) {
  for (Eigen::Index i = 0; i < span.rows(); ++i)
    if (!v.quotient().is_zero(span.row(i))) return false;
  return true;
}

IntMatrix<BigInt> augmentation_step(const QModule& v, const IntMatrix<BigInt>& span) {
  const Mat id = identity_matrix(v.rank());
  Mat out(0, static_cast<Eigen::Index>(v.rank()));
  for (const auto& a : v.action()) out = stack(out, span * (a - id));
  // Adding the relations keeps the image and bounds the row count.
  return row_basis(stack(out, v.relations()));
}

std::vector<IntMatrix<BigInt>> augmentation_series(const QModule& v, std::size_t steps) {
  std::vector<Mat> series{identity_matrix(v.rank())};
  for (std::size_t j = 0; j < steps; ++j) series.push_back(augmentation_step(v, series.back()));
  return series;
}

ActionClass action_nilpotency_class(const QModule& v, int cap) {
  Mat span = identity_matrix(v.rank());
  for (int s = 0; s <= cap; ++s) {
    if (span_is_zero(v, span)) return s;
    span = augmentation_step(v, span);
  }
  return NotNilpotentAction{cap};
}

int default_class_cap(const QModule& v) {
  auto order = v.underlying().order();
  if (!order) throw ArgumentError("class cap |V| + 3 needs a finite module");
  if (*order > 1'000'000) throw ArgumentError("module too large for the default class cap");
  return static_cast<int>(to_long(*order)) + 3;
}

AugmentationIdentities augmentation_identities(const QModule& v) {
  AugmentationIdentities out;
  const Mat two = identity_matrix(v.rank()) * BigInt(2);
  auto quotient_order = cokernel(stack(v.relations(), two)).order();
  out.k = quotient_order ? *quotient_order : BigInt(0);

  Mat span = identity_matrix(v.rank());
  Mat aug2 = augmentation_step(v, augmentation_step(v, span));
  out.two_v_aug2_zero = span_is_zero(v, aug2 * BigInt(2));

  // V·Augʲ descends; once it is zero or stops shrinking it stays put, so the
  // walk to j = k+3 can stop early.
  BigInt target = out.k + 3;
  std::optional<BigInt> previous = span_order(v, span);
  BigInt j = 0;
  while (j < target && !span_is_zero(v, span)) {
    span = augmentation_step(v, span);
    ++j;
    auto current = span_order(v, span);
    if (current && previous && *current == *previous) break;
    previous = current;
  }
  out.v_aug_k_plus_3_zero = span_is_zero(v, span);
  return out;
}

QModule aug_mod_I2(const PermGroup& g) {
  const auto& els = g.elements();
  const std::size_t n = els.size(), r = n - 1;
  auto basis_row = [&](const Permutation& x) {
    Row e = Row::Zero(static_cast<Eigen::Index>(r));
    std::size_t i = g.element_index(x);
    if (i != 0) e(static_cast<Eigen::Index>(i - 1)) = 1;
    return e;
  };
  std::vector<Row> rels;
  for (const auto& x : els)
    for (const auto& h : els) {
      // (x−1)²h = (x²h − 1) − 2(xh − 1) + (h − 1)
      Row rel = basis_row(x * x * h) - basis_row(x * h) * BigInt(2) + basis_row(h);
      if (!rel.isZero()) rels.push_back(std::move(rel));
    }
  auto action_of = [&](const Permutation& q) {
    Mat a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t i = 1; i < n; ++i) a.row(static_cast<Eigen::Index>(i - 1)) = basis_row(els[i] * q) - basis_row(q);
    return a;
  };
  std::vector<Mat> action, inverse;
  for (const auto& q : g.generators()) {
    action.push_back(action_of(q));
    inverse.push_back(action_of(q.inverse()));
  }
  return QModule(r, row_basis(rows_to_matrix(rels, r)), std::move(action), std::move(inverse));
}

QModule section_module(const PermGroup& h, std::span<const Permutation> basis, const PermGroup& n,
                       std::span<const Permutation> acting) {
  const auto& els = h.elements();
  const auto& normal = n.elements();
  const std::size_t r = basis.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!n.contains(commutator(basis[i], basis[j]))) throw ArgumentError("section is not abelian");

  std::vector<std::int64_t> coset(els.size(), -1);
  std::size_t cosets = 0;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (coset[i] >= 0) continue;
    for (const auto& m : normal) coset[h.element_index(els[i] * m)] = static_cast<std::int64_t>(cosets);
    ++cosets;
  }

  // Breadth-first search over H/N along the basis; every edge yields
  // vec(c) + e_i − vec(c·bᵢ), and the tree edges are zero.
  std::vector<Row> vec(cosets);
  std::vector<std::size_t> rep(cosets);
  std::vector<bool> seen(cosets, false);
  std::vector<Row> rels;
  auto c0 = static_cast<std::size_t>(coset[h.element_index(h.identity())]);
  vec[c0] = Row::Zero(static_cast<Eigen::Index>(r));
  rep[c0] = h.element_index(h.identity());
  seen[c0] = true;
  std::vector<std::size_t> queue{c0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    std::size_t c = queue[k];
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t y = h.element_index(els[rep[c]] * basis[i]);
      if (y == static_cast<std::size_t>(-1)) throw ArgumentError("basis element outside the section");
      auto d = static_cast<std::size_t>(coset[y]);
      Row step = vec[c];
      step(static_cast<Eigen::Index>(i)) += 1;
      if (!seen[d]) {
        seen[d] = true;
        vec[d] = step;
        rep[d] = y;
        queue.push_back(d);
      } else if (step != vec[d]) {
        rels.push_back(step - vec[d]);
      }
    }
  }
  if (queue.size() != cosets) throw ArgumentError("basis does not generate the section");

  auto dlog = [&](const Permutation& x) {
    std::size_t i = h.element_index(x);
    if (i == static_cast<std::size_t>(-1)) throw ArgumentError("acting element does not normalise the section");
    return vec[static_cast<std::size_t>(coset[i])];
  };
  auto action_of = [&](const Permutation& q) {
    Mat a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    Permutation qi = q.inverse();
    for (std::size_t i = 0; i < r; ++i) a.row(static_cast<Eigen::Index>(i)) = dlog(qi * basis[i] * q);
    return a;
  };
  std::vector<Mat> action, inverse;
  for (const auto& q : acting) {
    action.push_back(action_of(q));
    inverse.push_back(action_of(q.inverse()));
  }
  return QModule(r, row_basis(rows_to_matrix(rels, r)), std::move(action), std::move(inverse));
}

QModule derived_section(const PermGroup& g) {
  PermGroup d1 = derived_subgroup(g);
  PermGroup d2 = derived_subgroup(d1);
  return section_module(d1, d1.generators(), d2, g.generators());
}

QModule module_M(const PermGroup& g) {
  QModule a = derived_section(g);
  const std::size_t t = a.rank();
  const auto ti = static_cast<Eigen::Index>(t);
  const Mat id = identity_matrix(t);
  std::vector<Row> rels;
  auto unit = [&](std::size_t i) {
    Row e = Row::Zero(ti);
    e(static_cast<Eigen::Index>(i)) = 1;
    return e;
  };
  auto tensor_row = [&](const Row& x, const Row& y) {
    Mat k = kron(Mat(x), Mat(y));
    return Row(k.row(0));
  };
  for (Eigen::Index i = 0; i < a.relations().rows(); ++i)
    for (std::size_t j = 0; j < t; ++j) {
      rels.push_back(tensor_row(a.relations().row(i), unit(j)));
      rels.push_back(tensor_row(unit(j), a.relations().row(i)));
    }
  for (std::size_t q = 0; q < a.action().size(); ++q)
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j)
        rels.push_back(tensor_row(a.action()[q].row(static_cast<Eigen::Index>(i)),
                                  a.inverse_action()[q].row(static_cast<Eigen::Index>(j))) -
                       tensor_row(unit(i), unit(j)));
  std::vector<Mat> action, inverse;
  for (std::size_t q = 0; q < a.action().size(); ++q) {
    action.push_back(kron(a.action()[q], id));
    inverse.push_back(kron(a.inverse_action()[q], id));
  }
  return QModule(t * t, row_basis(rows_to_matrix(rels, t * t)), std::move(action), std::move(inverse));
}

}  // namespace xg
