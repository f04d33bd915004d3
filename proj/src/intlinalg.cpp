#include "xg/intlinalg.hpp"

#include <limits>
#include <sstream>

#include "xg/errors.hpp"

namespace xg {

namespace {

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt lcm_of(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / boost::multiprecision::gcd(a, b) * b;
}

/// Diagonal entry i of an SNF, 0 past the shorter dimension.
BigInt diagonal_entry(const IntMatrix<BigInt>& d, Eigen::Index i) {
  return i < std::min(d.rows(), d.cols()) ? d(i, i) : BigInt(0);
}

}  // namespace

std::string to_string(const BigInt& x) { return x.str(); }

long to_long(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<long>::max()) || x < BigInt(std::numeric_limits<long>::min()))
    throw ArgumentError("integer " + x.str() + " does not fit in a machine word");
  return x.convert_to<long>();
}

FinAbGroup FinAbGroup::from_cyclic_orders(std::span<const BigInt> orders) {
  const auto k = static_cast<Eigen::Index>(orders.size());
  IntMatrix<BigInt> diag = IntMatrix<BigInt>::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) diag(i, i) = orders[static_cast<std::size_t>(i)];
  return cokernel(diag);
}

std::optional<BigInt> FinAbGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  BigInt n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

BigInt FinAbGroup::exponent() const {
  if (free_rank_ > 0) return 0;
  return factors_.empty() ? BigInt(1) : factors_.back();
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& d : factors_) {
    out << (first ? "" : " x ") << "Z/" << d.str();
    first = false;
  }
  if (free_rank_ > 0) {
    out << (first ? "" : " x ") << "Z";
    if (free_rank_ > 1) out << '^' << free_rank_;
  }
  return out.str();
}

FinAbGroup cokernel(const IntMatrix<BigInt>& relations) {
  auto snf = smith_normal_form(relations);
  std::vector<BigInt> factors;
  std::size_t free = 0;
  for (Eigen::Index i = 0; i < relations.cols(); ++i) {
    BigInt d = diagonal_entry(snf.D, i);
    if (d == 0)
      ++free;
    else if (d != 1)
      factors.push_back(d);
  }
  return FinAbGroup(std::move(factors), free);
}

FinAbGroup tensor(const FinAbGroup& a, const FinAbGroup& b) {
  // ℤ/m ⊗ ℤ/n = ℤ/gcd(m,n) with gcd(0,n) = n covering ℤ ⊗ A = A.
  std::vector<BigInt> orders;
  for (std::size_t i = 0; i < a.generator_count(); ++i)
    for (std::size_t j = 0; j < b.generator_count(); ++j)
      orders.push_back(boost::multiprecision::gcd(a.generator_order(i), b.generator_order(j)));
  return FinAbGroup::from_cyclic_orders(orders);
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<BigInt> orders;
  for (std::size_t i = 0; i < a.generator_count(); ++i) orders.push_back(a.generator_order(i));
  for (std::size_t j = 0; j < b.generator_count(); ++j) orders.push_back(b.generator_order(j));
  return FinAbGroup::from_cyclic_orders(orders);
}

AbelianQuotient::AbelianQuotient(std::size_t ambient_rank, IntMatrix<BigInt> relations)
    : ambient_rank_(ambient_rank), relations_(std::move(relations)) {
  const auto n = static_cast<Eigen::Index>(ambient_rank);
  if (relations_.cols() != n) {
    if (relations_.size() != 0) throw ArgumentError("relation matrix width does not match rank");
    relations_.resize(0, n);
  }
  relations_ = row_basis(relations_);
  auto snf = smith_normal_form(relations_);
  std::vector<Eigen::Index> keep_torsion, keep_free;
  for (Eigen::Index i = 0; i < n; ++i) {
    BigInt d = diagonal_entry(snf.D, i);
    if (d == 0)
      keep_free.push_back(i);
    else if (d != 1)
      keep_torsion.push_back(i);
  }
  std::vector<Eigen::Index> keep = keep_torsion;
  keep.insert(keep.end(), keep_free.begin(), keep_free.end());
  const auto k = static_cast<Eigen::Index>(keep.size());
  to_canonical_.resize(n, k);
  from_canonical_.resize(k, n);
  for (Eigen::Index c = 0; c < k; ++c) {
    to_canonical_.col(c) = snf.V.col(keep[static_cast<std::size_t>(c)]);
    from_canonical_.row(c) = snf.V_inverse.row(keep[static_cast<std::size_t>(c)]);
    moduli_.push_back(diagonal_entry(snf.D, keep[static_cast<std::size_t>(c)]));
  }
  group_ = cokernel(relations_);
}

IntRowVector<BigInt> AbelianQuotient::coordinates(const IntRowVector<BigInt>& x) const {
  if (x.size() != static_cast<Eigen::Index>(ambient_rank_))
    throw ArgumentError("vector length does not match ambient rank");
  IntRowVector<BigInt> y = x * to_canonical_;
  return normalize(group_, std::move(y));
}

IntRowVector<BigInt> AbelianQuotient::lift(const IntRowVector<BigInt>& coords) const {
  return coords * from_canonical_;
}

bool AbelianQuotient::is_zero(const IntRowVector<BigInt>& x) const {
  auto y = coordinates(x);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) != 0) return false;
  return true;
}

std::optional<BigInt> AbelianQuotient::subgroup_order(const IntMatrix<BigInt>& gens) const {
  const std::size_t t = group_.invariant_factors().size();
  const auto tt = static_cast<Eigen::Index>(t);
  // Work in canonical coordinates; any free component means infinite order.
  IntMatrix<BigInt> torsion(gens.rows() + tt, tt);
  torsion.setZero();
  for (Eigen::Index r = 0; r < gens.rows(); ++r) {
    auto y = coordinates(gens.row(r));
    for (Eigen::Index c = tt; c < y.size(); ++c)
      if (y(c) != 0) return std::nullopt;
    for (Eigen::Index c = 0; c < tt; ++c) torsion(r, c) = y(c);
  }
  for (Eigen::Index c = 0; c < tt; ++c) torsion(gens.rows() + c, c) = moduli_[static_cast<std::size_t>(c)];
  BigInt whole = 1;
  for (const auto& d : group_.invariant_factors()) whole *= d;
  return whole / *cokernel(torsion).order();
}

BigInt element_order(const FinAbGroup& g, const IntRowVector<BigInt>& coords) {
  BigInt order = 1;
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    const BigInt& y = coords(static_cast<Eigen::Index>(i));
    BigInt d = g.generator_order(i);
    if (d == 0) {
      if (y != 0) return 0;
      continue;
    }
    BigInt r = mod_floor(y, d);
    if (r != 0) order = lcm_of(order, d / boost::multiprecision::gcd(d, r));
  }
  return order;
}

IntRowVector<BigInt> normalize(const FinAbGroup& g, IntRowVector<BigInt> coords) {
  if (coords.size() != static_cast<Eigen::Index>(g.generator_count()))
    throw ArgumentError("coordinate vector length does not match group");
  for (std::size_t i = 0; i < g.invariant_factors().size(); ++i) {
    auto ii = static_cast<Eigen::Index>(i);
    coords(ii) = mod_floor(coords(ii), g.invariant_factors()[i]);
  }
  return coords;
}

AbHom::AbHom(FinAbGroup source, FinAbGroup target, IntMatrix<BigInt> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Eigen::Index>(source_.generator_count()) ||
      matrix_.cols() != static_cast<Eigen::Index>(target_.generator_count()))
    throw ArgumentError("homomorphism matrix has wrong shape");
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    matrix_.row(i) = normalize(target_, matrix_.row(i));
    BigInt d = source_.generator_order(static_cast<std::size_t>(i));
    if (d == 0) continue;
    IntRowVector<BigInt> scaled = normalize(target_, matrix_.row(i) * d);
    for (Eigen::Index c = 0; c < scaled.size(); ++c)
      if (scaled(c) != 0)
        throw ArgumentError("homomorphism does not respect the order of generator " +
                            std::to_string(i));
  }
}

IntRowVector<BigInt> AbHom::apply(const IntRowVector<BigInt>& coords) const {
  return normalize(target_, coords * matrix_);
}

AbHom AbHom::then(const AbHom& next) const {
  if (!(target_ == next.source_)) throw ArgumentError("composition of incompatible homomorphisms");
  return AbHom(source_, next.target_, matrix_ * next.matrix_);
}

bool AbHom::is_identity() const {
  if (!(source_ == target_)) return false;
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
      if (matrix_(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace xg
