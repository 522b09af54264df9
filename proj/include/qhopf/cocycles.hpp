#pragma once

#include "groups.hpp"

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhopf {

// The root of unity zeta_modulus^exp, zeta_m = exp(2 pi i / m) for every m, so
// moduli can be mixed by rescaling to a common multiple.
struct RootExp {
  i64 modulus = 1;
  i64 exp = 0;

  RootExp() = default;
  RootExp(i64 m, i64 e) : modulus(checked(m)), exp(qhopf::mod(e, m)) {}

  static i64 checked(i64 m) {
    if (m < 1) throw std::invalid_argument("root modulus must be positive");
    return m;
  }

  RootExp rescaled(i64 m) const {
    if (m % modulus != 0) throw std::invalid_argument("rescale target is not a multiple of the modulus");
    return RootExp(m, exp * (m / modulus));
  }
  // reduced to the smallest modulus (the order of the root)
  RootExp normalized() const {
    i64 g = std::gcd(exp, modulus);
    if (exp == 0) return RootExp(1, 0);
    return RootExp(modulus / g, exp / g);
  }
  RootExp inverse() const { return RootExp(modulus, -exp); }
  bool is_one() const { return exp == 0; }

  friend RootExp operator*(const RootExp &a, const RootExp &b) {
    i64 m = lcm64(a.modulus, b.modulus);
    return RootExp(m, a.rescaled(m).exp + b.rescaled(m).exp);
  }
  friend RootExp operator/(const RootExp &a, const RootExp &b) { return a * b.inverse(); }
  friend bool operator==(const RootExp &a, const RootExp &b) {
    i64 m = lcm64(a.modulus, b.modulus);
    return a.rescaled(m).exp == b.rescaled(m).exp;
  }
};

// Table of root values on G^arity, one shared modulus.
struct Cochain {
  int arity = 1;
  std::size_t order = 0;
  i64 modulus = 1;
  std::vector<i64> exps;

  Cochain() = default;
  Cochain(int ar, std::size_t ord, i64 m) : arity(ar), order(ord), modulus(m) {
    std::size_t sz = 1;
    for (int i = 0; i < ar; ++i) sz *= ord;
    exps.assign(sz, 0);
  }

  std::size_t slot(std::size_t x) const { return x; }
  std::size_t slot(std::size_t x, std::size_t y) const { return x * order + y; }
  std::size_t slot(std::size_t x, std::size_t y, std::size_t z) const { return (x * order + y) * order + z; }

  template <class... Ix>
  RootExp operator()(Ix... ix) const {
    static_assert(sizeof...(Ix) >= 1 && sizeof...(Ix) <= 3);
    return RootExp(modulus, exps[slot(static_cast<std::size_t>(ix)...)]);
  }
  template <class... Ix>
  void set(RootExp v, Ix... ix) {
    exps[slot(static_cast<std::size_t>(ix)...)] = v.rescaled(modulus).exp;
  }

  Cochain rescaled(i64 m) const {
    Cochain c = *this;
    if (m % modulus != 0) throw std::invalid_argument("rescale target is not a multiple of the modulus");
    c.modulus = m;
    for (auto &e : c.exps) e = e * (m / modulus);
    return c;
  }

  friend bool operator==(const Cochain &a, const Cochain &b) {
    if (a.arity != b.arity || a.order != b.order) return false;
    i64 m = lcm64(a.modulus, b.modulus);
    return a.rescaled(m).exps == b.rescaled(m).exps;
  }
};

inline Cochain pointwise_mul(const Cochain &a, const Cochain &b) {
  if (a.arity != b.arity || a.order != b.order) throw std::invalid_argument("cochain shape mismatch");
  i64 m = lcm64(a.modulus, b.modulus);
  Cochain x = a.rescaled(m), y = b.rescaled(m);
  for (std::size_t i = 0; i < x.exps.size(); ++i) x.exps[i] = mod(x.exps[i] + y.exps[i], m);
  return x;
}

inline Cochain pointwise_inv(Cochain a) {
  for (auto &e : a.exps) e = mod(-e, a.modulus);
  return a;
}

// ---------------------------------------------------------------- data

struct CocycleDatum {
  std::vector<i64> c;       // c_l
  std::vector<i64> pair;    // c_st, lexicographic (s<t)
  std::vector<i64> triple;  // c_rst, lexicographic (r<s<t)

  static std::vector<std::pair<std::size_t, std::size_t>> pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> r;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t) r.push_back({s, t});
    return r;
  }
  static std::vector<std::array<std::size_t, 3>> triples(std::size_t n) {
    std::vector<std::array<std::size_t, 3>> r;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t d = b + 1; d < n; ++d) r.push_back({a, b, d});
    return r;
  }

  static CocycleDatum zero(const AbelianGroupSpec &G) {
    std::size_t n = G.rank();
    return {std::vector<i64>(n, 0), std::vector<i64>(n * (n - 1) / 2, 0),
            std::vector<i64>(triples(n).size(), 0)};
  }

  i64 pair_at(std::size_t s, std::size_t t, std::size_t n) const {
    std::size_t k = 0;
    for (auto [a, b] : pairs(n)) {
      if (a == s && b == t) return pair[k];
      ++k;
    }
    throw std::out_of_range("pair index");
  }
  i64 triple_at(std::size_t r, std::size_t s, std::size_t t, std::size_t n) const {
    std::size_t k = 0;
    for (auto tr : triples(n)) {
      if (tr[0] == r && tr[1] == s && tr[2] == t) return triple[k];
      ++k;
    }
    throw std::out_of_range("triple index");
  }

  CocycleDatum without_triples() const {
    CocycleDatum d = *this;
    for (auto &x : d.triple) x = 0;
    return d;
  }

  // Half-open ranges; returns a warning for values on the inclusive boundary.
  std::vector<std::string> validate(const AbelianGroupSpec &G) const {
    std::size_t n = G.rank();
    if (c.size() != n || pair.size() != pairs(n).size() || triple.size() != triples(n).size())
      throw std::invalid_argument("datum does not match group rank");
    std::vector<std::string> warn;
    auto chk = [&](i64 v, i64 bound, const std::string &name, bool inclusive_ok = true) {
      if (v < 0 || v > bound || (v == bound && !inclusive_ok))
        throw std::invalid_argument(name + "=" + std::to_string(v) + " outside [0," + std::to_string(bound) + ")");
      if (v == bound)
        warn.push_back(name + "=" + std::to_string(v) + " equals its class count; cohomologous to a smaller representative");
    };
    for (std::size_t l = 0; l < n; ++l) chk(c[l], G.m[l], "c" + std::to_string(l + 1), false);
    std::size_t k = 0;
    for (auto [s, t] : pairs(n))
      chk(pair[k++], std::gcd(G.m[s], G.m[t]), "c" + std::to_string(s + 1) + std::to_string(t + 1));
    k = 0;
    for (auto tr : triples(n))
      chk(triple[k++], G.gcd3(tr[0], tr[1], tr[2]),
          "c" + std::to_string(tr[0] + 1) + std::to_string(tr[1] + 1) + std::to_string(tr[2] + 1));
    return warn;
  }

  std::string to_string(std::size_t n) const {
    std::string s = "c=";
    for (std::size_t l = 0; l < c.size(); ++l) s += (l ? "," : "") + std::to_string(c[l]);
    std::size_t k = 0;
    for (auto [a, b] : pairs(n)) s += ";c" + std::to_string(a + 1) + std::to_string(b + 1) + "=" + std::to_string(pair[k++]);
    k = 0;
    for (auto tr : triples(n))
      s += ";c" + std::to_string(tr[0] + 1) + std::to_string(tr[1] + 1) + std::to_string(tr[2] + 1) + "=" +
           std::to_string(triple[k++]);
    return s;
  }

  bool operator==(const CocycleDatum &) const = default;
};

// "c=3,7,14;c12=1;c13=3;c23=5;c123=4"; omitted entries are 0.
inline CocycleDatum parse_datum(const AbelianGroupSpec &G, const std::string &text) {
  std::size_t n = G.rank();
  CocycleDatum d = CocycleDatum::zero(G);
  std::stringstream ss(text);
  std::string item;
  auto to_int = [](const std::string &t) {
    std::size_t pos = 0;
    i64 v;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception &) {
      throw std::invalid_argument("bad integer '" + t + "' in datum");
    }
    if (pos != t.size()) throw std::invalid_argument("bad integer '" + t + "' in datum");
    return v;
  };
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("datum entry '" + item + "' needs '='");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "c") {
      std::vector<i64> v;
      std::stringstream vs(val);
      std::string tok;
      while (std::getline(vs, tok, ',')) v.push_back(to_int(tok));
      if (v.size() != n) throw std::invalid_argument("c needs " + std::to_string(n) + " entries");
      d.c = v;
      continue;
    }
    if (key.size() < 2 || key[0] != 'c') throw std::invalid_argument("unknown datum key '" + key + "'");
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i < key.size(); ++i) {
      if (key[i] < '1' || key[i] > '9') throw std::invalid_argument("unknown datum key '" + key + "'");
      idx.push_back(static_cast<std::size_t>(key[i] - '1'));
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] >= n || (i && idx[i] <= idx[i - 1])) throw std::invalid_argument("bad datum index '" + key + "'");
    i64 v = to_int(val);
    if (idx.size() == 1) {
      d.c[idx[0]] = v;
    } else if (idx.size() == 2) {
      std::size_t k = 0;
      for (auto [a, b] : CocycleDatum::pairs(n)) {
        if (a == idx[0] && b == idx[1]) d.pair[k] = v;
        ++k;
      }
    } else if (idx.size() == 3) {
      std::size_t k = 0;
      for (auto tr : CocycleDatum::triples(n)) {
        if (tr[0] == idx[0] && tr[1] == idx[1] && tr[2] == idx[2]) d.triple[k] = v;
        ++k;
      }
    } else {
      throw std::invalid_argument("unknown datum key '" + key + "'");
    }
  }
  return d;
}

// All data in the half-open box, lexicographic in (c, c_st, c_rst).
inline std::vector<CocycleDatum> all_data(const AbelianGroupSpec &G) {
  std::size_t n = G.rank();
  std::vector<i64> bounds;
  for (auto m : G.m) bounds.push_back(m);
  for (auto [s, t] : CocycleDatum::pairs(n)) bounds.push_back(std::gcd(G.m[s], G.m[t]));
  for (auto tr : CocycleDatum::triples(n)) bounds.push_back(G.gcd3(tr[0], tr[1], tr[2]));
  std::vector<CocycleDatum> out;
  std::vector<i64> cur(bounds.size(), 0);
  for (;;) {
    CocycleDatum d;
    d.c.assign(cur.begin(), cur.begin() + n);
    d.pair.assign(cur.begin() + n, cur.begin() + n + n * (n - 1) / 2);
    d.triple.assign(cur.begin() + n + n * (n - 1) / 2, cur.end());
    out.push_back(d);
    std::size_t k = bounds.size();
    while (k > 0) {
      --k;
      if (++cur[k] < bounds[k]) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
    if (bounds.empty()) return out;
  }
}

// ---------------------------------------------------------------- omega_a

inline RootExp omega_abelian(const AbelianGroupSpec &G, const CocycleDatum &a, const AbelianElement &x,
                             const AbelianElement &y, const AbelianElement &z) {
  G.check(x), G.check(y), G.check(z);
  std::size_t n = G.rank();
  if (a.c.size() != n) throw std::invalid_argument("datum does not match group rank");
  i64 E = G.exponent();
  i64 e = 0;
  for (std::size_t l = 0; l < n; ++l) e += (E / G.m[l]) * a.c[l] * x[l] * ((y[l] + z[l]) / G.m[l]);
  std::size_t k = 0;
  for (auto [s, t] : CocycleDatum::pairs(n))
    e += (E / G.m[t]) * a.pair[k++] * x[t] * ((y[s] + z[s]) / G.m[s]);
  k = 0;
  for (auto tr : CocycleDatum::triples(n)) {
    auto [r, s, t] = tr;
    e -= (E / G.gcd3(r, s, t)) * a.triple[k++] * z[r] * y[s] * x[t];
  }
  return RootExp(E, e);
}

inline Cochain omega_abelian_cochain(const AbelianGroupSpec &G, const CocycleDatum &a) {
  std::size_t o = G.order();
  Cochain w(3, o, G.exponent());
  auto els = G.elements();
  for (std::size_t i = 0; i < o; ++i)
    for (std::size_t j = 0; j < o; ++j)
      for (std::size_t k = 0; k < o; ++k) w.set(omega_abelian(G, a, els[i], els[j], els[k]), i, j, k);
  return w;
}

// ---------------------------------------------------------------- omega_p

inline i64 ddn_modulus(i64 n) { return lcm64(2 * n * n, 4); }

inline RootExp omega_ddn(i64 n, i64 p, const DdnElement &x, const DdnElement &y, const DdnElement &z) {
  DdnSpec D(n);
  D.check(x), D.check(y), D.check(z);
  if (p < 0 || p >= 2 * n) throw std::invalid_argument("p must lie in [0, 2n)");
  i64 Q = ddn_modulus(n);
  i64 A = x.A, B = y.A, C = z.A, a = x.a, b = y.a, c = z.a;
  i64 sBC1 = ((B + C + 1) % 2) ? -1 : 1;
  i64 sC = C ? -1 : 1;
  i64 e = (Q / (2 * n)) * p * sBC1 * a * B * C;
  e += (Q / n) * p * sBC1 * a * floor_div(n - sC * b - c - n * B * C, 2 * n);
  e -= (Q / 4) * p * A * B * C;
  return RootExp(Q, e);
}

inline Cochain omega_ddn_cochain(const DdnSpec &D, i64 p) {
  std::size_t o = D.order();
  Cochain w(3, o, ddn_modulus(D.n));
  auto els = D.elements();
  for (std::size_t i = 0; i < o; ++i)
    for (std::size_t j = 0; j < o; ++j)
      for (std::size_t k = 0; k < o; ++k) w.set(omega_ddn(D.n, p, els[i], els[j], els[k]), i, j, k);
  return w;
}

// (-1)^{pAB} xi_n^{(pa/2)((-1)^B - 1)}
inline Cochain ddn_flat_closed_form(const DdnSpec &D, i64 p) {
  i64 Q = ddn_modulus(D.n);
  Cochain c(2, D.order(), Q);
  auto els = D.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = 0; j < els.size(); ++j) {
      i64 e = (Q / 2) * p * els[i].A * els[j].A;
      if (els[j].A) e -= (Q / D.n) * p * els[i].a;
      c.set(RootExp(Q, e), i, j);
    }
  return c;
}

// ---------------------------------------------------------------- derived cochains

inline Cochain flat(const GroupTable &G, const Cochain &w, std::size_t g) {
  if (w.arity != 3 || w.order != G.order) throw std::invalid_argument("flat needs a 3-cochain on G");
  Cochain r(2, G.order, w.modulus);
  for (std::size_t x = 0; x < G.order; ++x)
    for (std::size_t y = 0; y < G.order; ++y)
      r.set(w(g, x, y) * w(x, y, g) / w(x, g, y), x, y);
  return r;
}

inline Cochain coboundary(const GroupTable &G, const Cochain &rho) {
  if (rho.arity != 1 || rho.order != G.order) throw std::invalid_argument("coboundary needs a 1-cochain on G");
  if (!rho(G.e).is_one()) throw std::invalid_argument("coboundary needs rho(e) = 1");
  Cochain r(2, G.order, rho.modulus);
  for (std::size_t x = 0; x < G.order; ++x)
    for (std::size_t y = 0; y < G.order; ++y) r.set(rho(x) * rho(y) / rho(G.mul(x, y)), x, y);
  return r;
}

enum class CocycleKind { TwoCocycle, ThreeCocycle, FlatCondition };

struct CheckResult {
  bool pass = true;
  std::vector<std::size_t> witness;
  explicit operator bool() const { return pass; }
};

// flat_g is needed only for FlatCondition.
inline CheckResult check_cocycle(const GroupTable &G, const Cochain &c, CocycleKind kind, std::size_t g = 0,
                                 std::size_t cap = kDefaultCap) {
  if (G.order > cap) throw CapExceeded("group order exceeds exhaustive cap");
  std::size_t o = G.order;
  auto fail = [](std::vector<std::size_t> w) { return CheckResult{false, std::move(w)}; };
  switch (kind) {
    case CocycleKind::TwoCocycle:
      if (c.arity != 2) throw std::invalid_argument("2-cocycle check needs a 2-cochain");
      for (std::size_t x = 0; x < o; ++x) {
        if (!c(G.e, x).is_one() || !c(x, G.e).is_one()) return fail({x});
        for (std::size_t y = 0; y < o; ++y)
          for (std::size_t z = 0; z < o; ++z)
            if (!(c(x, y) * c(G.mul(x, y), z) == c(x, G.mul(y, z)) * c(y, z))) return fail({x, y, z});
      }
      return {};
    case CocycleKind::ThreeCocycle:
      if (c.arity != 3) throw std::invalid_argument("3-cocycle check needs a 3-cochain");
      for (std::size_t x = 0; x < o; ++x)
        for (std::size_t y = 0; y < o; ++y) {
          if (!c(G.e, x, y).is_one() || !c(x, G.e, y).is_one() || !c(x, y, G.e).is_one()) return fail({x, y});
          for (std::size_t z = 0; z < o; ++z)
            for (std::size_t t = 0; t < o; ++t)
              if (!(c(y, z, t) * c(x, G.mul(y, z), t) * c(x, y, z) == c(x, y, G.mul(z, t)) * c(G.mul(x, y), z, t)))
                return fail({x, y, z, t});
        }
      return {};
    case CocycleKind::FlatCondition:
      if (c.arity != 3) throw std::invalid_argument("flat condition needs a 3-cochain");
      for (std::size_t x = 0; x < o; ++x)
        for (std::size_t y = 0; y < o; ++y)
          for (std::size_t z = 0; z < o; ++z)
            if (!(c(G.mul(g, x), y, z) * c(x, G.mul(g, y), z) * c(x, y, G.mul(g, z)) ==
                  c(G.mul(x, g), y, z) * c(x, G.mul(y, g), z) * c(x, y, G.mul(z, g))))
              return fail({x, y, z});
      return {};
  }
  return {};
}

// f_g(g^j) = prod xi_{m_l^2}^{c_l f_l j_l} prod_{s<t} xi_{m_t m_s}^{c_st f_t j_s}, over N.
inline Cochain fg_witness(const AbelianGroupSpec &G, const CocycleDatum &a, const std::vector<i64> &f) {
  G.check(f);
  std::size_t n = G.rank();
  i64 N = G.N();
  Cochain w(1, G.order(), N);
  auto els = G.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    auto &j = els[i];
    i64 e = 0;
    for (std::size_t l = 0; l < n; ++l) e += (N / (G.m[l] * G.m[l])) * a.c[l] * f[l] * j[l];
    std::size_t k = 0;
    for (auto [s, t] : CocycleDatum::pairs(n)) e += (N / (G.m[s] * G.m[t])) * a.pair[k++] * f[t] * j[s];
    w.set(RootExp(N, e), i);
  }
  return w;
}

// f(X^A R^a) = (-1)^A xi_{2n}^{-pa}
inline Cochain ddn_witness(const DdnSpec &D, i64 p) {
  i64 Q = ddn_modulus(D.n);
  Cochain w(1, D.order(), Q);
  auto els = D.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    w.set(RootExp(Q, (Q / 2) * els[i].A - (Q / (2 * D.n)) * p * els[i].a), i);
  return w;
}

// theta_lambda(g^j) = prod xi_{m_l}^{lambda_l j_l}
inline Cochain character_cochain(const AbelianGroupSpec &G, const std::vector<i64> &lambda, i64 modulus) {
  Cochain w(1, G.order(), modulus);
  auto els = G.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    i64 e = 0;
    for (std::size_t l = 0; l < G.rank(); ++l) e += (modulus / G.m[l]) * lambda[l] * els[i][l];
    w.set(RootExp(modulus, e), i);
  }
  return w;
}

inline bool is_homomorphism(const GroupTable &G, const Cochain &c) {
  for (std::size_t x = 0; x < G.order; ++x)
    for (std::size_t y = 0; y < G.order; ++y)
      if (!(c(G.mul(x, y)) == c(x) * c(y))) return false;
  return true;
}

} // namespace qhopf
