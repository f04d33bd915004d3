#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "xg/errors.hpp"
#include "xg/intlinalg.hpp"

using namespace xg;

namespace {

IntMatrix<BigInt> mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix<BigInt> m(rows.size(), rows.begin()->size());
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Cofactor-expansion determinant, fine for the tiny minors used here.
BigInt det(const IntMatrix<BigInt>& m) {
  const auto n = m.rows();
  if (n == 1) return m(0, 0);
  BigInt d = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    IntMatrix<BigInt> sub(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    BigInt term = m(0, j) * det(sub);
    d += (j % 2 == 0) ? term : BigInt(-term);
  }
  return d;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// gcd of all k×k minors: the determinantal divisor d₁⋯d_k.
BigInt determinantal_divisor(const IntMatrix<BigInt>& m, int k) {
  BigInt g = 0;
  for_each_subset(int(m.rows()), k, [&](const std::vector<int>& rs) {
    for_each_subset(int(m.cols()), k, [&](const std::vector<int>& cs) {
      IntMatrix<BigInt> minor(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = m(rs[i], cs[j]);
      g = gcd(g, det(minor));
    });
  });
  return g;
}

IntMatrix<BigInt> random_matrix(std::mt19937_64& rng, int rows, int cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix<BigInt> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("Smith normal form of a small matrix") {
  auto s = smith_normal_form(mat({{2, 4}, {6, 8}}));
  CHECK(s.D == mat({{2, 0}, {0, 4}}));
  CHECK(s.U * mat({{2, 4}, {6, 8}}) * s.V == s.D);
  CHECK(s.rank() == 2);
}

TEST_CASE("Smith normal form against determinantal divisors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = 1 + int(rng() % 4), cols = 1 + int(rng() % 4);
    auto m = random_matrix(rng, rows, cols, 6);
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.V * s.V_inverse == IntMatrix<BigInt>::Identity(cols, cols));
    CHECK(abs(det(s.U)) == 1);
    auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
      else CHECK(d[i + 1] == 0);
    }
    BigInt prod = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      prod *= d[k - 1];
      CHECK(prod == determinantal_divisor(m, int(k)));
    }
  }
}

TEST_CASE("Smith normal form is stable on long and BigInt scalars") {
  IntMatrix<long> m(2, 3);
  m << 4, 6, 8, 10, 12, 14;
  auto s = smith_normal_form(m);
  CHECK(s.diagonal() == std::vector<long>{2, 6});
  IntMatrix<BigInt> big(1, 2);
  big(0, 0) = BigInt("123456789012345678901234567890");
  big(0, 1) = BigInt("987654321098765432109876543210");
  auto sb = smith_normal_form(big);
  CHECK(sb.D(0, 0) == gcd(big(0, 0), big(0, 1)));
}

TEST_CASE("row basis preserves the lattice") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 5, 3, 4);
    auto b = row_basis(m);
    CHECK(b.rows() <= 3);
    CHECK(cokernel(b) == cokernel(m));
  }
}

TEST_CASE("finitely generated abelian groups") {
  BigInt orders[] = {4, 6, 0, 1};
  auto g = FinAbGroup::from_cyclic_orders(orders);
  CHECK(g.to_string() == "Z/2 x Z/12 x Z");
  CHECK(g.free_rank() == 1);
  CHECK_FALSE(g.order());
  CHECK(cokernel(mat({{2, 0}, {0, 3}})).to_string() == "Z/6");
  CHECK(cokernel(mat({{2, 4}, {6, 8}})).order() == BigInt(8));
  CHECK(cokernel(IntMatrix<BigInt>(0, 2)).to_string() == "Z^2");
  CHECK(FinAbGroup{}.is_trivial());
  CHECK(FinAbGroup{}.to_string() == "0");
}

TEST_CASE("tensor products") {
  auto cyc = [](long n) {
    BigInt o[] = {n};
    return FinAbGroup::from_cyclic_orders(o);
  };
  CHECK(tensor(cyc(4), cyc(6)) == cyc(2));
  CHECK(tensor(cyc(0), cyc(5)) == cyc(5));
  CHECK(tensor(cyc(3), cyc(5)).is_trivial());
  auto v = direct_sum(cyc(2), cyc(2));
  CHECK(*tensor(v, v).order() == 16);
  CHECK(tensor(cyc(0), cyc(0)).free_rank() == 1);
}

TEST_CASE("abelian quotient coordinates") {
  AbelianQuotient q(2, mat({{2, 4}, {6, 8}}));
  CHECK(*q.group().order() == 8);
  IntRowVector<BigInt> x(2);
  x << 2, 4;
  CHECK(q.is_zero(x));
  x << 1, 0;
  CHECK_FALSE(q.is_zero(x));
  auto c = q.coordinates(x);
  CHECK(q.coordinates(q.lift(c)) == c);
  CHECK(*q.subgroup_order(mat({{1, 0}, {0, 1}})) == 8);
  CHECK(*q.subgroup_order(mat({{2, 4}})) == 1);
}

TEST_CASE("abelian homomorphisms") {
  BigInt o4[] = {4};
  BigInt o2[] = {2};
  auto z4 = FinAbGroup::from_cyclic_orders(o4), z2 = FinAbGroup::from_cyclic_orders(o2);
  AbHom h(z4, z2, mat({{1}}));
  IntRowVector<BigInt> x(1);
  x << 3;
  CHECK(h.apply(x)(0) == 1);
  CHECK_THROWS_AS(AbHom(z2, z4, mat({{1}})), ArgumentError);
  AbHom id(z4, z4, mat({{1}}));
  CHECK(id.is_identity());
  CHECK(id.then(h).matrix() == h.matrix());
}
