#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhopf {

using Int = mpz_class;

struct IntMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  IntMat(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto &row : init) {
      if (row.size() != cols) throw std::invalid_argument("ragged matrix literal");
      for (long v : row) a.emplace_back(v);
    }
  }

  Int &operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  bool operator==(const IntMat &o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline IntMat operator*(const IntMat &x, const IntMat &y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

inline IntMat transpose(const IntMat &m) {
  IntMat t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

// Fraction-free Bareiss elimination.
inline Int determinant(IntMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct ExtGcd {
  Int g, u, w;
};

// u*a + w*b = g >= 0.
inline ExtGcd ext_gcd(const Int &a, const Int &b) {
  if (sgn(a) == 0 && sgn(b) == 0) return {0, 0, 0};
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (sgn(r1) != 0) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    Int t2 = t0 - q * t1;
    r0 = r1, r1 = r2, s0 = s1, s1 = s2, t0 = t1, t1 = t2;
  }
  if (sgn(r0) < 0) r0 = -r0, s0 = -s0, t0 = -t0;
  return {r0, s0, t0};
}

inline Int gcd(const Int &a, const Int &b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int &a, const Int &b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

struct SnfDecomposition {
  IntMat U, V;
  std::vector<Int> diag; // length min(rows, cols)
  std::size_t rank() const {
    std::size_t r = 0;
    for (auto &d : diag)
      if (sgn(d) != 0) ++r;
    return r;
  }
};

namespace detail {

// Row rotation on rows i,k:  [row_i; row_k] <- [[u, w], [-y, x]] [row_i; row_k]
// with u*x + w*y = 1, chosen so that entry (k, col) vanishes.
inline ExtGcd pivot_gcd(const Int &x, const Int &y) {
  // pivot already divides: plain elimination
  if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) return {abs(x), Int(sgn(x)), 0};
  return ext_gcd(x, y);
}

inline void rotate_rows(IntMat &A, IntMat &U, std::size_t i, std::size_t k, std::size_t col) {
  Int x = A(i, col), y = A(k, col);
  auto [g, u, w] = pivot_gcd(x, y);
  Int xg = x / g, yg = y / g;
  for (std::size_t j = 0; j < A.cols; ++j) {
    Int p = A(i, j), q = A(k, j);
    A(i, j) = u * p + w * q;
    A(k, j) = xg * q - yg * p;
  }
  for (std::size_t j = 0; j < U.cols; ++j) {
    Int p = U(i, j), q = U(k, j);
    U(i, j) = u * p + w * q;
    U(k, j) = xg * q - yg * p;
  }
}

inline void rotate_cols(IntMat &A, IntMat &V, std::size_t j, std::size_t k, std::size_t row) {
  Int x = A(row, j), y = A(row, k);
  auto [g, u, w] = pivot_gcd(x, y);
  Int xg = x / g, yg = y / g;
  for (std::size_t i = 0; i < A.rows; ++i) {
    Int p = A(i, j), q = A(i, k);
    A(i, j) = u * p + w * q;
    A(i, k) = xg * q - yg * p;
  }
  for (std::size_t i = 0; i < V.rows; ++i) {
    Int p = V(i, j), q = V(i, k);
    V(i, j) = u * p + w * q;
    V(i, k) = xg * q - yg * p;
  }
}

inline void swap_rows(IntMat &A, IntMat &U, std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(i, j), A(k, j));
  for (std::size_t j = 0; j < U.cols; ++j) std::swap(U(i, j), U(k, j));
}

inline void swap_cols(IntMat &A, IntMat &V, std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < A.rows; ++i) std::swap(A(i, j), A(i, k));
  for (std::size_t i = 0; i < V.rows; ++i) std::swap(V(i, j), V(i, k));
}

// Clear row t and column t outside the pivot; the pivot ends up as the gcd.
inline void clear_cross(IntMat &A, IntMat &U, IntMat &V, std::size_t t) {
  for (;;) {
    bool dirty = false;
    for (std::size_t i = t + 1; i < A.rows; ++i)
      if (sgn(A(i, t)) != 0) rotate_rows(A, U, t, i, t);
    for (std::size_t j = t + 1; j < A.cols; ++j)
      if (sgn(A(t, j)) != 0) rotate_cols(A, V, t, j, t);
    for (std::size_t i = t + 1; i < A.rows; ++i)
      if (sgn(A(i, t)) != 0) dirty = true;
    if (!dirty) return;
  }
}

} // namespace detail

inline SnfDecomposition smith_normal_form(const IntMat &A0) {
  if (A0.rows == 0 || A0.cols == 0) throw std::invalid_argument("smith_normal_form: empty matrix");
  IntMat A = A0;
  IntMat U = IntMat::identity(A.rows), V = IntMat::identity(A.cols);
  std::size_t r = std::min(A.rows, A.cols);
  for (std::size_t t = 0; t < r; ++t) {
    // smallest nonzero entry in the trailing block as pivot
    std::size_t pi = A.rows, pj = A.cols;
    for (std::size_t i = t; i < A.rows; ++i)
      for (std::size_t j = t; j < A.cols; ++j)
        if (sgn(A(i, j)) != 0 && (pi == A.rows || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
    if (pi == A.rows) break;
    detail::swap_rows(A, U, t, pi);
    detail::swap_cols(A, V, t, pj);
    detail::clear_cross(A, U, V, t);
  }
  // divisibility repair on the diagonal
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        if (sgn(A(j, j)) == 0) continue;
        if (sgn(A(i, i)) == 0) {
          detail::swap_rows(A, U, i, j);
          detail::swap_cols(A, V, i, j);
          changed = true;
          continue;
        }
        if (mpz_divisible_p(A(j, j).get_mpz_t(), A(i, i).get_mpz_t())) continue;
        // add row j to row i, then re-clear the 2x2 block
        for (std::size_t c = 0; c < A.cols; ++c) A(i, c) += A(j, c);
        for (std::size_t c = 0; c < U.cols; ++c) U(i, c) += U(j, c);
        detail::clear_cross(A, U, V, i);
        changed = true;
      }
  }
  SnfDecomposition out;
  for (std::size_t t = 0; t < r; ++t) {
    if (sgn(A(t, t)) < 0) {
      for (std::size_t c = 0; c < A.cols; ++c) A(t, c) = -A(t, c);
      for (std::size_t c = 0; c < U.cols; ++c) U(t, c) = -U(t, c);
    }
    out.diag.push_back(A(t, t));
  }
  out.U = std::move(U);
  out.V = std::move(V);
  return out;
}

// Rows span { X : X A = 0 } over the integers.
inline IntMat left_null_basis(const IntMat &A) {
  if (A.rows == 0) return IntMat(0, 0);
  if (A.cols == 0) return IntMat::identity(A.rows);
  auto snf = smith_normal_form(A);
  std::size_t r = snf.rank();
  IntMat B(A.rows - r, A.rows);
  for (std::size_t i = r; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.rows; ++j) B(i - r, j) = snf.U(i, j);
  return B;
}

// Gauss-Jordan over Q; throws unless the inverse is integral.
inline IntMat unimodular_inverse(const IntMat &A) {
  if (A.rows != A.cols) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = A.rows;
  std::vector<mpq_class> m(n * 2 * n);
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class & { return m[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = A(i, j);
    at(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(at(p, c)) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(p, j), at(c, j));
    mpq_class piv = at(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) at(c, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(at(i, c)) == 0) continue;
      mpq_class f = at(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
    }
  }
  IntMat r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, n + j).get_den() != 1) throw std::domain_error("matrix is not unimodular");
      r(i, j) = at(i, n + j).get_num();
    }
  return r;
}

struct DiophantineFamily {
  Int x0, y0; // particular solution
  Int dx, dy; // homogeneous generator
};

// a*x + b*y = rhs.
inline std::optional<DiophantineFamily> solve_linear_diophantine(const Int &a, const Int &b,
                                                                 const Int &rhs) {
  if (sgn(a) == 0 && sgn(b) == 0) throw std::invalid_argument("solve_linear_diophantine: a = b = 0");
  auto [g, u, w] = ext_gcd(a, b);
  if (!mpz_divisible_p(rhs.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  Int k = rhs / g;
  return DiophantineFamily{u * k, w * k, -b / g, a / g};
}

inline IntMat parse_intmat(std::istream &in) {
  IntMat m;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) {
      Int v;
      if (v.set_str(tok, 10) != 0) throw std::invalid_argument("bad integer '" + tok + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (m.rows == 0) m.cols = row.size();
    else if (row.size() != m.cols) throw std::invalid_argument("ragged matrix rows");
    for (auto &v : row) m.a.push_back(v);
    ++m.rows;
  }
  if (m.rows == 0) throw std::invalid_argument("empty matrix");
  return m;
}

inline std::string format_intmat(const IntMat &m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

} // namespace qhopf
