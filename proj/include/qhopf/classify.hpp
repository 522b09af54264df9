#pragma once

#include "cocycles.hpp"
#include "groups.hpp"
#include "zlattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qhopf {

// ---------------------------------------------------------------- divisibility system

struct DivisibilitySystem {
  std::size_t n = 0;
  std::size_t nn = 0; // n(n-1)/2
  i64 M = 1;
  IntMat Aprime; // n x nn
  IntMat A;      // (n+nn) x nn, Aprime over M*I
};

namespace detail {

inline i64 Mc(const AbelianGroupSpec &G, const CocycleDatum &a, std::size_t r, std::size_t s, std::size_t t) {
  return (G.M() / G.gcd3(r, s, t)) * a.triple_at(r, s, t, G.rank());
}

// Coefficient of f_u in the congruence attached to the pair (r, s).
inline i64 divis_coeff(const AbelianGroupSpec &G, const CocycleDatum &a, std::size_t u, std::size_t r,
                       std::size_t s) {
  if (u < r) return Mc(G, a, u, r, s);
  if (u > r && u < s) return -Mc(G, a, r, u, s);
  if (u > s) return Mc(G, a, r, s, u);
  return 0;
}

} // namespace detail

inline DivisibilitySystem build_divisibility_system(const AbelianGroupSpec &G, const CocycleDatum &a) {
  DivisibilitySystem S;
  S.n = G.rank();
  auto prs = CocycleDatum::pairs(S.n);
  S.nn = prs.size();
  S.M = G.M();
  S.Aprime = IntMat(S.n, S.nn);
  S.A = IntMat(S.n + S.nn, S.nn);
  if (S.n < 3) return S;
  for (std::size_t col = 0; col < S.nn; ++col) {
    auto [r, s] = prs[col];
    for (std::size_t u = 0; u < S.n; ++u) {
      S.Aprime(u, col) = detail::divis_coeff(G, a, u, r, s);
      S.A(u, col) = S.Aprime(u, col);
    }
    S.A(S.n + col, col) = S.M;
  }
  return S;
}

inline bool divisibility_holds(const AbelianGroupSpec &G, const CocycleDatum &a, const std::vector<i64> &f) {
  std::size_t n = G.rank();
  if (n < 3) return true;
  i64 M = G.M();
  for (auto [r, s] : CocycleDatum::pairs(n)) {
    i64 sum = 0;
    for (std::size_t u = 0; u < n; ++u) sum += detail::divis_coeff(G, a, u, r, s) * f[u];
    if (mod(sum, M) != 0) return false;
  }
  return true;
}

// The glued unimodular U with U A V = D, and the generators of the f-lattice.
struct SnfSolution {
  SnfDecomposition prime; // U' A' V' = D'
  IntMat U, V, D;
  std::vector<std::vector<Int>> generators; // rows spanning all integral f
};

inline SnfSolution snf_solution(const AbelianGroupSpec &G, const CocycleDatum &a) {
  auto S = build_divisibility_system(G, a);
  std::size_t n = S.n, nn = S.nn;
  SnfSolution out;
  if (n < 3) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> e(n, 0);
      e[j] = 1;
      out.generators.push_back(e);
    }
    return out;
  }
  out.prime = smith_normal_form(S.Aprime);
  const IntMat &Up = out.prime.U;
  std::size_t rp = out.prime.rank();
  Int M = S.M;

  IntMat U2(n + nn, n + nn);
  std::vector<Int> g(rp);
  for (std::size_t j = 0; j < rp; ++j) {
    auto eg = ext_gcd(out.prime.diag[j], M);
    g[j] = eg.g;
    U2(j, j) = eg.u;
    U2(j, n + j) = eg.w;
    U2(nn + j, j) = -M / eg.g;
    U2(nn + j, n + j) = out.prime.diag[j] / eg.g;
  }
  for (std::size_t j = rp; j < nn; ++j) U2(j, n + j) = 1;
  for (std::size_t j = rp; j < n; ++j) U2(nn + j, j) = 1;

  IntMat block(n + nn, n + nn);
  IntMat Vinv = unimodular_inverse(out.prime.V);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) block(i, j) = Up(i, j);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) block(n + i, n + j) = Vinv(i, j);
  out.U = U2 * block;
  out.V = out.prime.V;
  out.D = IntMat(n + nn, nn);
  for (std::size_t j = 0; j < nn; ++j) out.D(j, j) = j < rp ? g[j] : M;

  // f = (-y_1 M/(d'_1,M), ..., y_{r'+1}, ...) U'
  for (std::size_t j = 0; j < n; ++j) {
    Int scale = j < rp ? Int(M / g[j]) : Int(1);
    std::vector<Int> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = scale * Up(j, k);
    out.generators.push_back(row);
  }
  return out;
}

enum class FMethod { Brute, Snf };

// Canonical-box solutions of the divisibility system, sorted.
inline std::vector<std::vector<i64>> f_solutions(const AbelianGroupSpec &G, const CocycleDatum &a,
                                                 FMethod method = FMethod::Brute, std::size_t cap = kDefaultCap) {
  std::vector<std::vector<i64>> out;
  if (method == FMethod::Brute) {
    if (G.order() > cap) throw CapExceeded("group order exceeds exhaustive cap");
    for (auto &f : G.elements())
      if (divisibility_holds(G, a, f)) out.push_back(f);
    return out;
  }
  auto sol = snf_solution(G, a);
  std::vector<std::vector<i64>> gens;
  for (auto &row : sol.generators) {
    std::vector<i64> v(G.rank());
    for (std::size_t j = 0; j < v.size(); ++j) {
      Int r = row[j] % G.m[j];
      if (r < 0) r += G.m[j];
      v[j] = r.get_si();
    }
    gens.push_back(v);
  }
  // subgroup of prod Z_{m_j} generated by gens
  std::set<std::vector<i64>> seen{G.identity()};
  std::deque<std::vector<i64>> queue{G.identity()};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto &gv : gens) {
      auto y = G.mul(x, gv);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------- integrality

struct IntegralityResult {
  bool pass = false;
  Int E_times_N;
};

inline IntegralityResult integrality_E(const AbelianGroupSpec &G, const CocycleDatum &a, const std::vector<i64> &f,
                                       const std::vector<i64> &lambda) {
  G.check(f), G.check(lambda);
  std::size_t n = G.rank();
  Int N = G.N();
  Int e = 0;
  for (std::size_t j = 0; j < n; ++j) {
    e += Int(lambda[j]) * f[j] * (N / G.m[j]);
    e += Int(a.c[j]) * f[j] * f[j] * (N / (G.m[j] * G.m[j]));
  }
  std::size_t k = 0;
  for (auto [s, t] : CocycleDatum::pairs(n)) e += Int(a.pair[k++]) * f[s] * f[t] * (N / (G.m[s] * G.m[t]));
  IntegralityResult r;
  r.E_times_N = e;
  if (N % 2 != 0) return r;
  Int rem = e % N;
  if (rem < 0) rem += N;
  r.pass = rem == N / 2;
  return r;
}

struct PairSolution {
  std::vector<i64> f;
  std::vector<i64> lambda;
  Int E_times_N;
  bool operator<(const PairSolution &o) const { return std::tie(f, lambda) < std::tie(o.f, o.lambda); }
  bool operator==(const PairSolution &o) const { return f == o.f && lambda == o.lambda; }
};

// sigma(g^j) = prod xi_{m_l}^{f_l j_l}; v = sum_l zeta_N^{v_exps[l]} 1_l, indexed like G.elements().
struct BraidedHopfDescriptor {
  std::vector<i64> sigma_exps;
  i64 N = 1;
  std::vector<i64> v_exps;
};

inline BraidedHopfDescriptor descriptor(const AbelianGroupSpec &G, const CocycleDatum &a, const PairSolution &p) {
  std::size_t n = G.rank();
  BraidedHopfDescriptor d;
  d.sigma_exps = p.f;
  d.N = G.N();
  i64 N = d.N;
  for (auto &l : G.elements()) {
    i64 e = 0;
    for (std::size_t j = 0; j < n; ++j) {
      e += mod(p.lambda[j] * l[j], G.m[j]) * (N / G.m[j]);
      e += mod(a.c[j] * p.f[j] * l[j], G.m[j] * G.m[j]) * (N / (G.m[j] * G.m[j]));
    }
    std::size_t k = 0;
    for (auto [s, t] : CocycleDatum::pairs(n))
      e += mod(a.pair[k++] * l[s] * p.f[t], G.m[s] * G.m[t]) * (N / (G.m[s] * G.m[t]));
    d.v_exps.push_back(mod(e, N));
  }
  return d;
}

inline std::vector<PairSolution> enumerate_pairs(const AbelianGroupSpec &G, const CocycleDatum &a,
                                                 std::size_t cap = kDefaultCap, FMethod method = FMethod::Brute) {
  if (G.order() > cap) throw CapExceeded("group order exceeds exhaustive cap");
  std::vector<PairSolution> out;
  i64 N = G.N();
  if (N % 2 != 0) return out;
  std::size_t n = G.rank();
  auto lambdas = characters(G);
  for (auto &f : f_solutions(G, a, method, cap)) {
    i64 q = 0;
    for (std::size_t j = 0; j < n; ++j) q += a.c[j] * f[j] * f[j] * (N / (G.m[j] * G.m[j]));
    std::size_t k = 0;
    for (auto [s, t] : CocycleDatum::pairs(n)) q += a.pair[k++] * f[s] * f[t] * (N / (G.m[s] * G.m[t]));
    for (auto &l : lambdas) {
      i64 e = q;
      for (std::size_t j = 0; j < n; ++j) e += l[j] * f[j] * (N / G.m[j]);
      if (mod(e, N) == N / 2) out.push_back({f, l, Int(e)});
    }
  }
  return out;
}

// Exhaustive check that rho = f_g * theta_lambda has d(rho) = flat_g(omega_a) and rho(g) = -1.
inline CheckResult certify(const AbelianGroupSpec &G, const CocycleDatum &a, const PairSolution &p,
                           std::size_t cap = kDefaultCap) {
  if (G.order() > cap) throw CapExceeded("group order exceeds exhaustive cap");
  auto T = G.table();
  auto rho = pointwise_mul(fg_witness(G, a, p.f), character_cochain(G, p.lambda, G.N()));
  std::size_t gi = G.index(p.f);
  if (!(rho(gi) == RootExp(2, 1))) return {false, {gi}};
  auto d = coboundary(T, rho);
  auto els = G.elements();
  for (std::size_t x = 0; x < T.order; ++x)
    for (std::size_t y = 0; y < T.order; ++y) {
      auto fl = omega_abelian(G, a, p.f, els[x], els[y]) * omega_abelian(G, a, els[x], els[y], p.f) /
                omega_abelian(G, a, els[x], p.f, els[y]);
      if (!(fl == d(x, y))) return {false, {x, y}};
    }
  return {};
}

// ---------------------------------------------------------------- cyclic groups

struct CyclicPairs {
  std::vector<std::pair<i64, i64>> pairs; // (f, lambda), lexicographic
  bool exists = false;                    // gcd(c, m) even
  std::optional<std::pair<i64, i64>> witness;
};

inline CyclicPairs cyclic_pairs(i64 m, i64 c) {
  if (m < 2) throw std::invalid_argument("cyclic_pairs needs m >= 2");
  if (c < 0 || c >= m) throw std::invalid_argument("cyclic_pairs needs 0 <= c < m");
  CyclicPairs r;
  i64 N = m * m;
  for (i64 f = 0; f < m; ++f)
    for (i64 l = 0; l < m; ++l)
      if (mod(l * f * m + c * f * f, N) == N / 2 && N % 2 == 0) r.pairs.push_back({f, l});
  i64 d = std::gcd(c, m);
  r.exists = d % 2 == 0;
  if (r.exists) {
    i64 f = (m / d) * (d / 2);
    i64 k = 0;
    while (2 * k + 1 < c / 2) ++k;
    r.witness = {{f, 2 * k + 1 - c / 2}};
  }
  return r;
}

// ---------------------------------------------------------------- conics

struct ConicSpec {
  i64 c1 = 0, c2 = 0, c12 = 0;
  i64 lambda1 = 0, lambda2 = 0;
  i64 k = 0;
  i64 L = 1;
};

inline Int conic_value(const ConicSpec &s, i64 x, i64 y) {
  Int X = x, Y = y, L = s.L;
  return 2 * s.c1 * X * X + 2 * s.c2 * Y * Y + 2 * s.c12 * X * Y + 2 * s.lambda1 * L * X + 2 * s.lambda2 * L * Y -
         (2 * s.k + 1) * L * L;
}

inline std::vector<std::pair<i64, i64>> conic_points(const ConicSpec &s, const std::vector<i64> &xs,
                                                     const std::vector<i64> &ys) {
  std::vector<std::pair<i64, i64>> out;
  for (i64 x : xs)
    for (i64 y : ys)
      if (sgn(conic_value(s, x, y)) == 0) out.push_back({x, y});
  return out;
}

inline std::vector<i64> int_range(i64 lo, i64 hi) {
  std::vector<i64> r;
  for (i64 v = lo; v < hi; ++v) r.push_back(v);
  return r;
}

struct ConicPoint {
  i64 x, y, lambda1, lambda2, k;
  auto operator<=>(const ConicPoint &) const = default;
};

// Every (x, y; lambda, k) with C = 0, x = f1 L/m1, y = f2 L/m2 over the canonical boxes.
inline std::set<ConicPoint> conic_scan(i64 m1, i64 m2, const CocycleDatum &a, std::size_t cap = kDefaultCap) {
  if (static_cast<std::size_t>(m1) > cap || static_cast<std::size_t>(m2) > cap)
    throw CapExceeded("conic_scan moduli exceed cap");
  AbelianGroupSpec G({m1, m2});
  i64 L = G.L();
  ConicSpec s{a.c[0], a.c[1], a.pair[0], 0, 0, 0, L};
  // |2k+1| L^2 is bounded by the largest value of the remaining terms over the box
  i64 xm = (m1 - 1) * (L / m1), ym = (m2 - 1) * (L / m2);
  i64 bound = 2 * std::abs(s.c1) * xm * xm + 2 * std::abs(s.c2) * ym * ym + 2 * std::abs(s.c12) * xm * ym +
              2 * (m1 - 1) * L * xm + 2 * (m2 - 1) * L * ym;
  i64 kmax = bound / (L * L) + 1;
  std::set<ConicPoint> out;
  for (i64 f1 = 0; f1 < m1; ++f1)
    for (i64 f2 = 0; f2 < m2; ++f2) {
      i64 x = f1 * (L / m1), y = f2 * (L / m2);
      for (i64 l1 = 0; l1 < m1; ++l1)
        for (i64 l2 = 0; l2 < m2; ++l2) {
          i64 S = 2 * s.c1 * x * x + 2 * s.c2 * y * y + 2 * s.c12 * x * y + 2 * l1 * L * x + 2 * l2 * L * y;
          if (mod(S, L * L) != 0) continue;
          i64 q = S / (L * L);
          if (mod(q, 2) != 1) continue;
          i64 k = (q - 1) / 2;
          if (k < -kmax || k > kmax) throw std::logic_error("conic_scan: k outside its bound");
          out.insert({x, y, l1, l2, k});
        }
    }
  return out;
}

// ---------------------------------------------------------------- double dihedral groups

struct DdnPair {
  int branch = 0; // 1..4, the character (theta(X), theta(R))
  Cochain rho;
};

inline std::vector<DdnPair> ddn_pairs(i64 n, i64 p) {
  DdnSpec D(n);
  if (p < 0 || p >= 2 * n) throw std::invalid_argument("p must lie in [0, 2n)");
  auto T = D.table();
  i64 Q = ddn_modulus(n);
  std::size_t rn = D.index(D.R(n));
  auto fl = flat(T, omega_ddn_cochain(D, p), rn);
  auto w = ddn_witness(D, p);
  // exponents over Q of theta(X), theta(R)
  i64 xi4n = (Q / 4) * n;
  std::array<std::pair<i64, i64>, 4> chars{{{0, 0}, {Q / 2, 0}, {xi4n, Q / 2}, {xi4n + Q / 2, Q / 2}}};
  std::vector<DdnPair> out;
  auto els = D.elements();
  for (int b = 0; b < 4; ++b) {
    Cochain th(1, D.order(), Q);
    for (std::size_t i = 0; i < els.size(); ++i)
      th.set(RootExp(Q, els[i].A * chars[b].first + els[i].a * chars[b].second), i);
    auto rho = pointwise_mul(w, th);
    if (!(rho(rn) == RootExp(2, 1))) continue;
    if (!(coboundary(T, rho) == fl)) continue;
    out.push_back({b + 1, rho});
  }
  return out;
}

// ---------------------------------------------------------------- orbit counts

// Orbits of a -> s^2 a on Z_n, s a unit.
inline std::size_t orbit_count_cyclic(i64 n) {
  if (n < 1) throw std::invalid_argument("orbit_count_cyclic needs n >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::size_t count = 0;
  for (i64 a = 0; a < n; ++a) {
    if (seen[static_cast<std::size_t>(a)]) continue;
    ++count;
    for (i64 s = 1; s <= n; ++s)
      if (std::gcd(s, n) == 1) seen[static_cast<std::size_t>(mod(s * s % n * a, n))] = true;
  }
  return count;
}

inline std::size_t klein_orbit_count() { return all_data(AbelianGroupSpec({2, 2})).size(); }

inline std::size_t dim4_semisimple_count() { return orbit_count_cyclic(4) + klein_orbit_count(); }

} // namespace qhopf
