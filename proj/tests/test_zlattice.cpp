#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhopf/zlattice.hpp"

#include <random>
#include <sstream>

using namespace qhopf;

namespace {

IntMat random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, long lo = -20, long hi = 20) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMat m(r, c);
  for (auto &x : m.a) x = d(rng);
  return m;
}

IntMat diag_matrix(const SnfDecomposition &s, std::size_t r, std::size_t c) {
  IntMat D(r, c);
  for (std::size_t i = 0; i < s.diag.size(); ++i) D(i, i) = s.diag[i];
  return D;
}

// Cofactor expansion; independent of the Bareiss routine under test.
Int cofactor_det(const IntMat &m) {
  std::size_t n = m.rows;
  if (n == 1) return m(0, 0);
  Int r = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMat s(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) s(i - 1, kk++) = m(i, k);
    Int t = m(0, j) * cofactor_det(s);
    r += (j % 2 ? -t : t);
  }
  return r;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
             std::vector<std::vector<std::size_t>> &out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors
Int minor_gcd(const IntMat &A, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(A.rows, k, 0, cur, rs);
  subsets(A.cols, k, 0, cur, cs);
  Int g = 0;
  for (auto &r : rs)
    for (auto &c : cs) {
      IntMat s(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = A(r[i], c[j]);
      g = gcd(g, cofactor_det(s));
    }
  return g;
}

void check_snf(const IntMat &A) {
  auto s = smith_normal_form(A);
  CHECK(s.U * A * s.V == diag_matrix(s, A.rows, A.cols));
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  for (std::size_t i = 0; i < s.diag.size(); ++i) {
    CHECK(s.diag[i] >= 0);
    if (i + 1 < s.diag.size() && s.diag[i] != 0)
      CHECK(mpz_divisible_p(s.diag[i + 1].get_mpz_t(), s.diag[i].get_mpz_t()));
  }
}

} // namespace

TEST_CASE("ext_gcd examples") {
  auto [g, u, w] = ext_gcd(12, 18);
  CHECK(g == 6);
  CHECK(12 * u + 18 * w == 6);
  auto z = ext_gcd(0, 0);
  CHECK(z.g == 0);
  CHECK(z.u == 0);
  CHECK(z.w == 0);
  auto s = ext_gcd(7, 0);
  CHECK(s.g == 7);
  CHECK(s.u == 1);
  CHECK(s.w == 0);
  auto n = ext_gcd(-4, 6);
  CHECK(n.g == 2);
  CHECK(-4 * n.u + 6 * n.w == 2);
}

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMat{{2, 0}, {0, 3}});
  CHECK(s.diag == std::vector<Int>{1, 6});
  check_snf(IntMat{{2, 0}, {0, 3}});

  auto id = smith_normal_form(IntMat::identity(4));
  CHECK(id.diag == std::vector<Int>(4, 1));

  // n = 3 divisibility matrix with m = (4,4,4), c123 = 2: M = 4, upsilon = 2
  IntMat A{{0, 0, 2}, {0, -2, 0}, {2, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
  auto t = smith_normal_form(A);
  CHECK(t.diag == std::vector<Int>{2, 2, 2});
  check_snf(A);

  CHECK_THROWS_AS(smith_normal_form(IntMat(0, 0)), std::invalid_argument);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(20261018);
  for (int it = 0; it < 300; ++it) {
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    check_snf(random_matrix(rng, dim(rng), dim(rng)));
  }
  // rank-deficient inputs
  for (int it = 0; it < 50; ++it) {
    IntMat B = random_matrix(rng, 4, 2, -5, 5), C = random_matrix(rng, 2, 5, -5, 5);
    IntMat A = B * C;
    check_snf(A);
    CHECK(smith_normal_form(A).rank() <= 2);
  }
}

TEST_CASE("diagonal matches the minor-gcd oracle") {
  std::mt19937 rng(7);
  for (int it = 0; it < 150; ++it) {
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    IntMat A = random_matrix(rng, dim(rng), dim(rng), -9, 9);
    auto s = smith_normal_form(A);
    Int prev = 1;
    for (std::size_t k = 1; k <= s.diag.size(); ++k) {
      Int dk = minor_gcd(A, k);
      if (dk == 0) {
        CHECK(s.diag[k - 1] == 0);
        continue;
      }
      CHECK(s.diag[k - 1] == dk / prev);
      prev = dk;
    }
  }
}

TEST_CASE("entries beyond machine words") {
  IntMat A(2, 2);
  A(0, 0) = Int("123456789012345678901234567890");
  A(0, 1) = Int("987654321098765432109876543210");
  A(1, 0) = Int("-55555555555555555555555555");
  A(1, 1) = 3;
  check_snf(A);
}

TEST_CASE("left null basis") {
  IntMat col{{2}, {3}};
  auto B = left_null_basis(col);
  REQUIRE(B.rows == 1);
  CHECK(B * col == IntMat(1, 1));
  CHECK(gcd(B(0, 0), B(0, 1)) == 1);

  IntMat Z(3, 2);
  CHECK(left_null_basis(Z) == IntMat::identity(3));

  IntMat full{{2, 1}, {1, 1}};
  CHECK(left_null_basis(full).rows == 0);

  std::mt19937 rng(11);
  for (int it = 0; it < 100; ++it) {
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    IntMat A = random_matrix(rng, dim(rng), dim(rng), -6, 6);
    auto N = left_null_basis(A);
    CHECK(N.rows == A.rows - smith_normal_form(A).rank());
    if (N.rows) CHECK(N * A == IntMat(N.rows, A.cols));
  }
}

TEST_CASE("unimodular inverse") {
  IntMat U{{2, 1}, {1, 1}};
  CHECK(U * unimodular_inverse(U) == IntMat::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMat{{2, 0}, {0, 1}}), std::domain_error);
  CHECK_THROWS_AS(unimodular_inverse(IntMat{{1, 1}, {1, 1}}), std::domain_error);
  std::mt19937 rng(3);
  for (int it = 0; it < 30; ++it) {
    auto s = smith_normal_form(random_matrix(rng, 5, 5));
    CHECK(s.U * unimodular_inverse(s.U) == IntMat::identity(5));
  }
}

TEST_CASE("linear diophantine") {
  CHECK_FALSE(solve_linear_diophantine(2, 6, 3).has_value());
  auto f = solve_linear_diophantine(2, 6, 4);
  REQUIRE(f);
  CHECK(2 * f->x0 + 6 * f->y0 == 4);
  CHECK(2 * f->dx + 6 * f->dy == 0);
  CHECK(abs(f->dx) == 3);
  CHECK(abs(f->dy) == 1);
  auto g = solve_linear_diophantine(1, 0, 17);
  REQUIRE(g);
  CHECK(g->x0 == 17);
  CHECK(g->dx == 0);
  CHECK(g->dy != 0);
  CHECK_THROWS_AS(solve_linear_diophantine(0, 0, 1), std::invalid_argument);
}

TEST_CASE("matrix text round trip") {
  std::istringstream in("1 2 3\n# comment\n\n-4 5 60\n");
  auto m = parse_intmat(in);
  CHECK(m.rows == 2);
  CHECK(m.cols == 3);
  std::istringstream back(format_intmat(m));
  CHECK(parse_intmat(back) == m);
  std::istringstream ragged("1 2\n3\n");
  CHECK_THROWS_AS(parse_intmat(ragged), std::invalid_argument);
  std::istringstream bad("1 x\n");
  CHECK_THROWS_AS(parse_intmat(bad), std::invalid_argument);
}
