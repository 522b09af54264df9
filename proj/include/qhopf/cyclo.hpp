#pragma once

#include "zlattice.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhopf {

using Rat = mpq_class;
using IntPoly = std::vector<Int>; // low degree first

inline void trim(IntPoly &p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact division of integer polynomials, divisor monic.
inline IntPoly poly_divexact(IntPoly num, const IntPoly &den) {
  trim(num);
  if (den.empty() || den.back() != 1) throw std::invalid_argument("divisor must be monic");
  if (num.size() < den.size()) {
    if (!num.empty()) throw std::logic_error("inexact polynomial division");
    return {};
  }
  IntPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Int c = num[k + den.size() - 1];
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

inline IntPoly cyclotomic_poly(long N) {
  if (N < 1) throw std::invalid_argument("cyclotomic_poly needs N >= 1");
  static std::mutex mu;
  static std::map<long, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
  }
  IntPoly p(static_cast<std::size_t>(N) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(N)] = 1;
  for (long d = 1; d < N; ++d)
    if (N % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lk(mu);
  cache[N] = p;
  return p;
}

namespace detail {

struct CycloCtx {
  long N;
  std::size_t deg;
  IntPoly phi;
  // x^k mod Phi_N for k < 2*deg, and for k < N (power embedding)
  std::vector<std::vector<Int>> pow;

  explicit CycloCtx(long n) : N(n), phi(cyclotomic_poly(n)) {
    deg = phi.size() - 1;
    std::size_t upto = std::max<std::size_t>(2 * deg, static_cast<std::size_t>(N));
    std::vector<Int> cur(deg, 0);
    cur[0] = 1;
    if (deg == 1) cur[0] = 1;
    for (std::size_t k = 0; k < upto; ++k) {
      pow.push_back(cur);
      // multiply by x
      Int top = cur[deg - 1];
      for (std::size_t j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * phi[j];
    }
  }
};

inline const CycloCtx &ctx(long N) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CycloCtx>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto &slot = cache[N];
  if (!slot) slot = std::make_unique<CycloCtx>(N);
  return *slot;
}

} // namespace detail

// Element of Q(zeta_N) in the power basis modulo Phi_N.
class Cyclo {
 public:
  Cyclo() : N_(1), c_(1, Rat(0)) {}
  Cyclo(long v) : N_(1), c_(1, Rat(v)) {}
  Cyclo(const Rat &v) : N_(1), c_(1, v) { c_[0].canonicalize(); }
  Cyclo(long N, std::vector<Rat> coeffs) : N_(N), c_(std::move(coeffs)) {
    if (c_.size() != detail::ctx(N).deg) throw std::invalid_argument("coefficient count must equal deg Phi_N");
    for (auto &x : c_) x.canonicalize();
  }

  static Cyclo root(long N, long k) {
    if (N < 1) throw std::invalid_argument("root conductor must be positive");
    auto &C = detail::ctx(N);
    k %= N;
    if (k < 0) k += N;
    std::vector<Rat> v(C.deg);
    for (std::size_t j = 0; j < C.deg; ++j) v[j] = C.pow[static_cast<std::size_t>(k)][j];
    return Cyclo(N, std::move(v));
  }

  long conductor() const { return N_; }
  const std::vector<Rat> &coeffs() const { return c_; }

  Cyclo lifted(long L) const {
    if (L == N_) return *this;
    if (L % N_ != 0) throw std::invalid_argument("lift target is not a multiple of the conductor");
    auto &C = detail::ctx(L);
    long s = L / N_;
    std::vector<Rat> v(C.deg, Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      auto &p = C.pow[static_cast<std::size_t>((static_cast<long>(k) * s) % L)];
      for (std::size_t j = 0; j < C.deg; ++j)
        if (sgn(p[j]) != 0) v[j] += c_[k] * p[j];
    }
    return Cyclo(L, std::move(v));
  }

  bool is_zero() const {
    for (auto &x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (sgn(c_[k]) != 0) return false;
    return true;
  }
  Rat rational() const {
    if (!is_rational()) throw std::domain_error("not a rational number");
    return c_[0];
  }

  Cyclo &operator+=(const Cyclo &o) {
    if (o.N_ == N_) {
      for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
      return *this;
    }
    long L = std::lcm(N_, o.N_);
    *this = lifted(L);
    Cyclo b = o.lifted(L);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
    return *this;
  }
  Cyclo &operator-=(const Cyclo &o) { return *this += -o; }
  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto &x : r.c_) x = -x;
    return r;
  }
  friend Cyclo operator+(Cyclo a, const Cyclo &b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo &b) { return a -= b; }

  friend Cyclo operator*(const Cyclo &a, const Cyclo &b) {
    if (a.N_ != b.N_) {
      long L = std::lcm(a.N_, b.N_);
      return a.lifted(L) * b.lifted(L);
    }
    if (a.N_ == 1) return Cyclo(a.c_[0] * b.c_[0]);
    auto &C = detail::ctx(a.N_);
    std::size_t d = C.deg;
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    bool any = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(b.c_[j]) != 0) prod[i + j] += a.c_[i] * b.c_[j], any = true;
    }
    std::vector<Rat> v(d, Rat(0));
    if (!any) return Cyclo(a.N_, std::move(v));
    for (std::size_t k = 0; k < d; ++k) v[k] = prod[k];
    for (std::size_t k = d; k < prod.size(); ++k) {
      if (sgn(prod[k]) == 0) continue;
      auto &p = C.pow[k];
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(p[j]) != 0) v[j] += prod[k] * p[j];
    }
    return Cyclo(a.N_, std::move(v));
  }
  Cyclo &operator*=(const Cyclo &o) { return *this = *this * o; }

  // Extended Euclid in Q[x] against Phi_N.
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (N_ == 1) return Cyclo(Rat(1) / c_[0]);
    auto &C = detail::ctx(N_);
    using QP = std::vector<Rat>;
    auto strip = [](QP &p) {
      while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    };
    auto sub_mul = [&](QP a, const QP &b, const QP &q) {
      // a - q*b
      QP r(std::max(a.size(), q.size() + b.size()), Rat(0));
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
      strip(r);
      return r;
    };
    auto divmod = [&](QP a, const QP &b, QP &q) {
      strip(a);
      q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
      while (a.size() >= b.size() && !a.empty()) {
        std::size_t s = a.size() - b.size();
        Rat f = a.back() / b.back();
        q[s] = f;
        for (std::size_t j = 0; j < b.size(); ++j) a[s + j] -= f * b[j];
        strip(a);
      }
      return a;
    };
    QP r0, r1 = c_, s0 = {Rat(0)}, s1 = {Rat(1)};
    for (auto &x : C.phi) r0.push_back(Rat(x));
    strip(r1);
    while (!(r1.size() == 1)) {
      QP q;
      QP r2 = divmod(r0, r1, q);
      QP s2 = sub_mul(s0, s1, q);
      r0 = r1, r1 = r2, s0 = s1, s1 = s2;
      if (r1.empty()) throw std::logic_error("non-invertible cyclotomic element");
    }
    // s1 * c == r1[0] mod Phi, deg s1 < deg Phi
    std::vector<Rat> v(C.deg, Rat(0));
    for (std::size_t k = 0; k < s1.size(); ++k) v[k] = s1[k] / r1[0];
    return Cyclo(N_, std::move(v));
  }

  friend Cyclo operator/(const Cyclo &a, const Cyclo &b) { return a * b.inverse(); }

  friend bool operator==(const Cyclo &a, const Cyclo &b) {
    if (a.N_ == b.N_) return a.c_ == b.c_;
    long L = std::lcm(a.N_, b.N_);
    return a.lifted(L).c_ == b.lifted(L).c_;
  }
  friend bool operator!=(const Cyclo &a, const Cyclo &b) { return !(a == b); }

  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      std::string term = c_[k].get_str();
      if (k > 0) term += "*z" + std::to_string(N_) + (k > 1 ? "^" + std::to_string(k) : "");
      if (!s.empty() && term[0] != '-') s += "+";
      s += term;
    }
    return s.empty() ? "0" : s;
  }

 private:
  long N_;
  std::vector<Rat> c_;
};

inline Cyclo embed_root(long N, long k) {
  if (k < 0 || k >= N) throw std::invalid_argument("embed_root needs 0 <= k < N");
  return Cyclo::root(N, k);
}

} // namespace qhopf
