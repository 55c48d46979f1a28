#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

RationalMatrix M(std::size_t r, std::size_t c, std::vector<int> v) {
  std::vector<Rational> e(v.begin(), v.end());
  return RationalMatrix(r, c, e);
}

RationalVector V(std::vector<int> v) { return RationalVector(v.begin(), v.end()); }

bool proportional(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) return false;
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0 || sgn(b[i]) == 0) {
      if (sgn(a[i]) != sgn(b[i])) return false;
      continue;
    }
    Rational r = a[i] / b[i];
    if (ratio && *ratio != r) return false;
    ratio = r;
  }
  return ratio.has_value();
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int density) {
  RationalMatrix m(r, c);
  std::uniform_int_distribution<int> keep(0, 9);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) < density) m(i, j) = random_rational(rng);
  return m;
}

SparseMatrix to_sparse_matrix(const RationalMatrix& m) {
  SparseMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j))) s.add(i, j, m(i, j));
  return s;
}

}  // namespace

TEST_SUITE("exactlinalg") {

TEST_CASE("rank_and_kernel examples") {
  auto id = rank_and_kernel(RationalMatrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.kernel_basis.empty());

  auto ones = rank_and_kernel(M(1, 2, {1, 1}));
  CHECK(ones.rank == 1);
  REQUIRE(ones.kernel_basis.size() == 1);
  CHECK(proportional(ones.kernel_basis[0], V({1, -1})));

  auto dup = rank_and_kernel(M(2, 2, {1, 2, 2, 4}));
  CHECK(dup.rank == 1);
  REQUIRE(dup.kernel_basis.size() == 1);
  CHECK(dup.kernel_basis[0] == V({-2, 1}));
}

TEST_CASE("solve examples") {
  CHECK(solve(RationalMatrix::identity(2), V({3, 5})) == V({3, 5}));
  CHECK(solve(M(1, 2, {1, 1}), V({2})) == V({2, 0}));
  CHECK_FALSE(solve(M(2, 1, {1, 1}), V({0, 1})).has_value());
  CHECK_THROWS_AS(solve(RationalMatrix::identity(2), V({1})), std::invalid_argument);
}

TEST_CASE("random matrices: rank of transpose, kernel, rank-nullity, solve") {
  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<std::size_t> dim(1, 9);
    std::size_t r = dim(rng), c = dim(rng);
    RationalMatrix m = random_matrix(rng, r, c, 4);
    auto rk = rank_and_kernel(m);
    CHECK(rk.rank == rank(m.transpose()));
    CHECK(rk.rank + rk.kernel_basis.size() == c);
    for (const auto& k : rk.kernel_basis) {
      auto image = m * k;
      for (const auto& x : image) CHECK(sgn(x) == 0);
    }
    if (!rk.kernel_basis.empty()) {
      RationalMatrix kb(c, rk.kernel_basis.size());
      for (std::size_t j = 0; j < rk.kernel_basis.size(); ++j)
        for (std::size_t i = 0; i < c; ++i) kb(i, j) = rk.kernel_basis[j][i];
      CHECK(rank(kb) == rk.kernel_basis.size());
    }
    RationalVector x(c);
    for (auto& v : x) v = random_rational(rng);
    auto b = m * x;
    auto sol = solve(m, b);
    REQUIRE(sol);
    CHECK(m * *sol == b);
  }
}

TEST_CASE("sparse routines agree with the dense ones") {
  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<std::size_t> dim(1, 12);
    std::size_t r = dim(rng), c = dim(rng);
    RationalMatrix m = random_matrix(rng, r, c, 3);
    SparseMatrix s = to_sparse_matrix(m);
    CHECK(s.to_dense().entries() == m.entries());
    CHECK(sparse_rank(s) == rank(m));
    auto kernel = sparse_kernel(s);
    CHECK(kernel.size() == c - rank(m));
    for (const auto& k : kernel) {
      auto image = m * to_dense(k, c);
      for (const auto& x : image) CHECK(sgn(x) == 0);
    }
    RationalVector b(r);
    for (auto& v : b) v = random_rational(rng);
    auto dense = solve(m, b);
    auto sparse = sparse_solve(s, to_sparse(b));
    CHECK(dense.has_value() == sparse.has_value());
    if (sparse) CHECK(m * to_dense(*sparse, c) == b);
  }
}

TEST_CASE("quotient representatives") {
  // cocycles span e0, e1, e2; boundaries span e0 + e1
  std::vector<SparseVector> cocycles{to_sparse(V({1, 0, 0})), to_sparse(V({0, 1, 0})), to_sparse(V({0, 0, 1}))};
  std::vector<SparseVector> boundaries{to_sparse(V({1, 1, 0}))};
  auto reps = quotient_representatives(boundaries, cocycles, 3);
  CHECK(reps.size() == 2);
  EchelonBasis span(3);
  for (const auto& b : boundaries) span.insert(b);
  for (const auto& r : reps) CHECK(span.insert(r));
  CHECK(span.rank() == 3);
}

TEST_CASE("sparse product") {
  RationalMatrix a = M(2, 3, {1, 0, 2, 0, 1, 0}), b = M(3, 2, {1, 1, 0, 1, 1, 0});
  CHECK(to_sparse_matrix(a).multiply(to_sparse_matrix(b)).to_dense().entries() == (a * b).entries());
  CHECK_THROWS(to_sparse_matrix(a).multiply(to_sparse_matrix(a)));
}

}  // TEST_SUITE
