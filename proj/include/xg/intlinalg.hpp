#pragma once

// Exact integer linear algebra: Smith normal form over dense Eigen matrices,
// finitely generated abelian groups in invariant-factor form, and
// homomorphisms between them.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace xg {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using IntMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using IntRowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

namespace detail {
template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}
}  // namespace detail

/// U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … , dᵢ ≥ 0.
/// `V_inverse` is carried along so lattice coordinates can be mapped back.
template <typename Scalar>
struct SmithDecomposition {
  IntMatrix<Scalar> U, D, V, V_inverse;

  std::size_t rank() const {
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }
  std::vector<Scalar> diagonal() const {
    std::vector<Scalar> d;
    for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Pivot rule: smallest nonzero absolute entry of the active block, ties
/// broken by row-major position. Deterministic for a fixed input.
template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(
    const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  using Index = Eigen::Index;
  const Index m = M.rows(), n = M.cols();
  SmithDecomposition<Scalar> s;
  s.D = M;
  s.U = IntMatrix<Scalar>::Identity(m, m);
  s.V = IntMatrix<Scalar>::Identity(n, n);
  s.V_inverse = IntMatrix<Scalar>::Identity(n, n);
  auto& A = s.D;

  auto swap_rows = [&](Index i, Index j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    s.U.row(i).swap(s.U.row(j));
  };
  auto swap_cols = [&](Index i, Index j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    s.V.col(i).swap(s.V.col(j));
    s.V_inverse.row(i).swap(s.V_inverse.row(j));
  };
  // row_i -= q row_t
  auto sub_row = [&](Index i, Index t, const Scalar& q) {
    A.row(i) -= A.row(t) * q;
    s.U.row(i) -= s.U.row(t) * q;
  };
  // col_j -= q col_t ; V⁻¹ row_t += q row_j
  auto sub_col = [&](Index j, Index t, const Scalar& q) {
    A.col(j) -= A.col(t) * q;
    s.V.col(j) -= s.V.col(t) * q;
    s.V_inverse.row(t) += s.V_inverse.row(j) * q;
  };
  auto find_pivot = [&](Index t, Index& pi, Index& pj) {
    bool found = false;
    Scalar best = 0;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j) {
        if (A(i, j) == 0) continue;
        Scalar a = detail::abs_value(A(i, j));
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  };

  for (Index t = 0; t < std::min(m, n); ++t) {
    Index pi = 0, pj = 0;
    if (!find_pivot(t, pi, pj)) break;
    for (;;) {
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        sub_row(i, t, Scalar(A(i, t) / A(t, t)));
        if (A(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        sub_col(j, t, Scalar(A(t, j) / A(t, t)));
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) {
        find_pivot(t, pi, pj);
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      bool divisible = true;
      for (Index i = t + 1; i < m && divisible; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            A.row(t) += A.row(i);
            s.U.row(t) += s.U.row(i);
            divisible = false;
            break;
          }
      if (divisible) break;
      pi = t;
      pj = t;
    }
    if (A(t, t) < 0) {
      A.row(t) = -A.row(t);
      s.U.row(t) = -s.U.row(t);
    }
  }
  return s;
}

/// Echelon basis of the row lattice of M: zero rows dropped, same ℤ-span.
/// Cheap way to shrink a tall relation matrix before a Smith decomposition.
template <typename Derived>
IntMatrix<typename Derived::Scalar> row_basis(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  using Index = Eigen::Index;
  IntMatrix<Scalar> A = M;
  const Index m = A.rows(), n = A.cols();
  Index t = 0;
  for (Index c = 0; c < n && t < m; ++c) {
    for (;;) {
      Index best = -1;
      for (Index i = t; i < m; ++i)
        if (A(i, c) != 0 && (best < 0 || detail::abs_value(A(i, c)) < detail::abs_value(A(best, c)))) best = i;
      if (best < 0) break;
      A.row(t).swap(A.row(best));
      bool done = true;
      for (Index i = t + 1; i < m; ++i) {
        if (A(i, c) == 0) continue;
        A.row(i) -= A.row(t) * Scalar(A(i, c) / A(t, c));
        if (A(i, c) != 0) done = false;
      }
      if (done) {
        ++t;
        break;
      }
    }
  }
  return A.topRows(t);
}

/// Finitely generated abelian group ℤ/d₁ ⊕ … ⊕ ℤ/dₜ ⊕ ℤʳ in canonical
/// invariant-factor form: every dᵢ ≥ 2 and dᵢ | dᵢ₊₁.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  /// Canonicalises an arbitrary list of cyclic orders; 0 stands for ℤ and
  /// 1 for the trivial group.
  static FinAbGroup from_cyclic_orders(std::span<const BigInt> orders);

  const std::vector<BigInt>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  /// Number of canonical generators (torsion first, then free).
  std::size_t generator_count() const { return factors_.size() + free_rank_; }
  /// Order of canonical generator i; 0 for a free generator.
  BigInt generator_order(std::size_t i) const {
    return i < factors_.size() ? factors_[i] : BigInt(0);
  }

  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// nullopt for infinite groups.
  std::optional<BigInt> order() const;
  /// 0 for infinite groups, 1 for the trivial group.
  BigInt exponent() const;
  std::string to_string() const;

  bool operator==(const FinAbGroup&) const = default;

 private:
  friend FinAbGroup cokernel(const IntMatrix<BigInt>& relations);
  FinAbGroup(std::vector<BigInt> factors, std::size_t free_rank)
      : factors_(std::move(factors)), free_rank_(free_rank) {}

  std::vector<BigInt> factors_;
  std::size_t free_rank_ = 0;
};

/// Cokernel ℤⁿ / rowspace(M) for an m×n relation matrix M.
FinAbGroup cokernel(const IntMatrix<BigInt>& relations);
FinAbGroup tensor(const FinAbGroup& a, const FinAbGroup& b);
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

/// ℤⁿ / rowspace(R) together with the change of basis into canonical
/// coordinates. Row vectors x ∈ ℤⁿ map to x·V, then reduce mod dᵢ.
class AbelianQuotient {
 public:
  AbelianQuotient() = default;
  AbelianQuotient(std::size_t ambient_rank, IntMatrix<BigInt> relations);

  std::size_t ambient_rank() const { return ambient_rank_; }
  const IntMatrix<BigInt>& relations() const { return relations_; }
  const FinAbGroup& group() const { return group_; }

  /// Canonical coordinates (length group().generator_count()), torsion
  /// entries reduced into [0, dᵢ).
  IntRowVector<BigInt> coordinates(const IntRowVector<BigInt>& x) const;
  /// A preimage in ℤⁿ of canonical coordinates.
  IntRowVector<BigInt> lift(const IntRowVector<BigInt>& coords) const;
  bool is_zero(const IntRowVector<BigInt>& x) const;

  /// Order of the subgroup generated by the images of `gens` (rows, ambient
  /// coordinates). nullopt if it is infinite.
  std::optional<BigInt> subgroup_order(const IntMatrix<BigInt>& gens) const;

 private:
  std::size_t ambient_rank_ = 0;
  IntMatrix<BigInt> relations_;
  IntMatrix<BigInt> to_canonical_;    // columns of V for nontrivial diagonal entries
  IntMatrix<BigInt> from_canonical_;  // matching rows of V⁻¹
  std::vector<BigInt> moduli_;        // dᵢ (0 for free)
  FinAbGroup group_;
};

/// Order of an element given in canonical coordinates; 0 if infinite.
BigInt element_order(const FinAbGroup& g, const IntRowVector<BigInt>& coords);
/// Reduces canonical coordinates into [0, dᵢ).
IntRowVector<BigInt> normalize(const FinAbGroup& g, IntRowVector<BigInt> coords);

/// Homomorphism between canonical forms; row i of `matrix` is the image of
/// source generator i in target coordinates.
class AbHom {
 public:
  /// Throws ArgumentError unless each generator's order annihilates its image.
  AbHom(FinAbGroup source, FinAbGroup target, IntMatrix<BigInt> matrix);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const IntMatrix<BigInt>& matrix() const { return matrix_; }

  IntRowVector<BigInt> apply(const IntRowVector<BigInt>& coords) const;
  AbHom then(const AbHom& next) const;
  bool is_identity() const;

 private:
  FinAbGroup source_, target_;
  IntMatrix<BigInt> matrix_;
};

std::string to_string(const BigInt& x);
long to_long(const BigInt& x);

}  // namespace xg
