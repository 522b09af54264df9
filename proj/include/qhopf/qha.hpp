#pragma once

#include "classify.hpp"
#include "cocycles.hpp"
#include "cyclo.hpp"
#include "groups.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhopf {

// ---------------------------------------------------------------- tensors

using Key = std::uint64_t;

// Element of H^{(x) arity}; the key of e_{i_0} (x) ... (x) e_{i_{k-1}} is sum_j i_j d^j.
struct Elem {
  int arity = 1;
  std::map<Key, Cyclo> t;

  Elem() = default;
  explicit Elem(int k) : arity(k) {}

  void add(Key k, const Cyclo &c) {
    if (c.is_zero()) return;
    auto it = t.find(k);
    if (it == t.end()) {
      t.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
  bool is_zero() const { return t.empty(); }
  bool operator==(const Elem &o) const { return arity == o.arity && t == o.t; }
  bool operator!=(const Elem &o) const { return !(*this == o); }
};

inline Elem basis_elem(std::size_t i, const Cyclo &c = Cyclo(1)) {
  Elem e(1);
  e.add(i, c);
  return e;
}

inline Elem operator+(Elem a, const Elem &b) {
  if (a.arity != b.arity) throw std::invalid_argument("adding tensors of different arity");
  for (auto &[k, c] : b.t) a.add(k, c);
  return a;
}
inline Elem operator-(Elem a, const Elem &b) {
  if (a.arity != b.arity) throw std::invalid_argument("subtracting tensors of different arity");
  for (auto &[k, c] : b.t) a.add(k, -c);
  return a;
}
inline Elem operator*(const Cyclo &s, const Elem &a) {
  Elem r(a.arity);
  if (s.is_zero()) return r;
  for (auto &[k, c] : a.t) r.add(k, s * c);
  return r;
}

inline Key ipow(std::size_t d, int e) {
  Key r = 1;
  for (int i = 0; i < e; ++i) r *= d;
  return r;
}

inline std::vector<std::size_t> decode(Key k, int arity, std::size_t d) {
  std::vector<std::size_t> r(static_cast<std::size_t>(arity));
  for (int j = 0; j < arity; ++j) {
    r[static_cast<std::size_t>(j)] = static_cast<std::size_t>(k % d);
    k /= d;
  }
  return r;
}

inline Elem tensor(const Elem &a, const Elem &b, std::size_t d) {
  Elem r(a.arity + b.arity);
  Key shift = ipow(d, a.arity);
  for (auto &[ka, ca] : a.t)
    for (auto &[kb, cb] : b.t) r.add(ka + kb * shift, ca * cb);
  return r;
}

// Replace factor pos by the image of its basis index; images share one arity.
inline Elem apply_at(const Elem &x, int pos, const std::vector<Elem> &img, int img_arity, std::size_t d) {
  Elem out(x.arity - 1 + img_arity);
  Key lowmod = ipow(d, pos), highdiv = ipow(d, pos + 1), place = ipow(d, pos + img_arity);
  for (auto &[k, c] : x.t) {
    Key low = k % lowmod, high = k / highdiv;
    std::size_t idx = static_cast<std::size_t>((k / lowmod) % d);
    for (auto &[ik, iv] : img[idx].t) out.add(low + ik * lowmod + high * place, c * iv);
  }
  return out;
}

// Re-index into a larger basis.
inline Elem rebase(const Elem &x, std::size_t dfrom, std::size_t dto,
                   const std::function<std::size_t(std::size_t)> &idx = {}) {
  Elem r(x.arity);
  for (auto &[k, c] : x.t) {
    auto dig = decode(k, x.arity, dfrom);
    Key nk = 0;
    for (int j = x.arity; j-- > 0;) nk = nk * dto + (idx ? idx(dig[static_cast<std::size_t>(j)]) : dig[static_cast<std::size_t>(j)]);
    r.add(nk, c);
  }
  return r;
}

// ---------------------------------------------------------------- matrices over Q(zeta)

using CMat = std::vector<std::vector<Cyclo>>;

inline CMat invert(CMat m) {
  std::size_t n = m.size();
  CMat inv(n, std::vector<Cyclo>(n, Cyclo(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Cyclo(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Cyclo piv = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] = m[c][j] * piv;
      inv[c][j] = inv[c][j] * piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      Cyclo f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!m[c][j].is_zero()) m[i][j] -= f * m[c][j];
        if (!inv[c][j].is_zero()) inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------- structure

struct QuasiHopfData {
  std::size_t d = 0;
  std::vector<std::string> labels;
  std::vector<Elem> mult;   // d*d products, arity 1
  Elem unit{1};
  std::vector<Elem> comult; // arity 2
  std::vector<Cyclo> counit;
  Elem Phi{3}, PhiInv{3};
  std::vector<Elem> S; // arity 1
  Elem alpha{1}, beta{1};

  const Elem &m(std::size_t i, std::size_t j) const { return mult[i * d + j]; }

  std::vector<Elem> counit_images() const {
    std::vector<Elem> r;
    for (auto &c : counit) {
      Elem e(0);
      e.add(0, c);
      r.push_back(e);
    }
    return r;
  }
};

inline Elem mul(const QuasiHopfData &Q, const Elem &a, const Elem &b) {
  if (a.arity != b.arity) throw std::invalid_argument("multiplying tensors of different arity");
  std::size_t d = Q.d;
  auto n = static_cast<std::size_t>(a.arity);
  Elem r(a.arity);
  std::vector<std::pair<std::vector<std::size_t>, const Cyclo *>> bs;
  bs.reserve(b.t.size());
  for (auto &[kb, cb] : b.t) bs.push_back({decode(kb, b.arity, d), &cb});
  std::vector<std::pair<Key, Cyclo>> acc, next;
  std::vector<const Elem *> f(n);
  for (auto &[ka, ca] : a.t) {
    auto da = decode(ka, a.arity, d);
    for (auto &[db, cb] : bs) {
      bool zero = false;
      for (std::size_t j = 0; j < n && !zero; ++j) {
        f[j] = &Q.m(da[j], db[j]);
        zero = f[j]->t.empty();
      }
      if (zero) continue;
      acc.assign(1, {0, ca * *cb});
      Key place = 1;
      for (std::size_t j = 0; j < n; ++j) {
        next.clear();
        for (auto &[k, v] : acc)
          for (auto &[mk, mv] : f[j]->t) next.push_back({k + mk * place, mv.is_one() ? v : v * mv});
        acc.swap(next);
        place *= d;
      }
      for (auto &[k, v] : acc) r.add(k, v);
    }
  }
  return r;
}

inline Elem one(const QuasiHopfData &Q, int k) {
  Elem r(0);
  r.add(0, Cyclo(1));
  for (int i = 0; i < k; ++i) r = tensor(r, Q.unit, Q.d);
  return r;
}

inline Elem delta_at(const QuasiHopfData &Q, const Elem &x, int pos) { return apply_at(x, pos, Q.comult, 2, Q.d); }
inline Elem eps_at(const QuasiHopfData &Q, const Elem &x, int pos) {
  return apply_at(x, pos, Q.counit_images(), 0, Q.d);
}
inline Elem S_at(const QuasiHopfData &Q, const Elem &x, int pos) { return apply_at(x, pos, Q.S, 1, Q.d); }

inline Cyclo scalar_of(const Elem &x) {
  if (x.arity != 0) throw std::invalid_argument("not a scalar");
  auto it = x.t.find(0);
  return it == x.t.end() ? Cyclo(0) : it->second;
}

// Linear functional on H given by its values on the basis.
inline Cyclo evaluate(const std::vector<Cyclo> &f, const Elem &x) {
  if (x.arity != 1) throw std::invalid_argument("functional needs an arity-1 element");
  Cyclo r(0);
  for (auto &[k, c] : x.t) r += c * f[static_cast<std::size_t>(k)];
  return r;
}

inline CMat matrix_of(const std::vector<Elem> &images, std::size_t d) {
  CMat m(d, std::vector<Cyclo>(d, Cyclo(0)));
  for (std::size_t j = 0; j < d; ++j)
    for (auto &[k, c] : images[j].t) m[static_cast<std::size_t>(k)][j] = c;
  return m;
}
inline std::vector<Elem> images_of(const CMat &m) {
  std::vector<Elem> r;
  for (std::size_t j = 0; j < m.size(); ++j) {
    Elem e(1);
    for (std::size_t i = 0; i < m.size(); ++i) e.add(i, m[i][j]);
    r.push_back(e);
  }
  return r;
}

inline std::vector<Elem> antipode_inverse(const QuasiHopfData &Q) { return images_of(invert(matrix_of(Q.S, Q.d))); }

inline std::string describe(const QuasiHopfData &Q, const Elem &x) {
  if (x.t.empty()) return "0";
  std::string s;
  for (auto &[k, c] : x.t) {
    auto dig = decode(k, x.arity, Q.d);
    std::string term = "(" + c.str() + ")";
    for (std::size_t j = 0; j < dig.size(); ++j) term += (j ? "(x)" : "") + Q.labels[dig[j]];
    s += (s.empty() ? "" : " + ") + term;
  }
  return s;
}

// First differing component, empty when the structure constants agree.
inline std::string structure_difference(const QuasiHopfData &A, const QuasiHopfData &B) {
  if (A.d != B.d) return "dimension";
  for (std::size_t i = 0; i < A.mult.size(); ++i)
    if (A.mult[i] != B.mult[i]) return "mult(" + std::to_string(i / A.d) + "," + std::to_string(i % A.d) + ")";
  if (A.unit != B.unit) return "unit";
  for (std::size_t i = 0; i < A.d; ++i) {
    if (A.comult[i] != B.comult[i]) return "comult(" + std::to_string(i) + ")";
    if (A.counit[i] != B.counit[i]) return "counit(" + std::to_string(i) + ")";
    if (A.S[i] != B.S[i]) return "S(" + std::to_string(i) + ")";
  }
  if (A.Phi != B.Phi) return "Phi";
  if (A.PhiInv != B.PhiInv) return "PhiInv";
  if (A.alpha != B.alpha) return "alpha";
  if (A.beta != B.beta) return "beta";
  return {};
}

// ---------------------------------------------------------------- axioms

struct AxiomResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const {
    for (auto &r : results)
      if (!r.pass) return false;
    return true;
  }
  const AxiomResult *find(const std::string &name) const {
    for (auto &r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
  std::string str() const {
    std::string s;
    for (auto &r : results) s += r.name + " " + (r.pass ? "PASS" : "FAIL " + r.witness) + "\n";
    return s;
  }
};

namespace detail {

inline std::string idx_list(std::initializer_list<std::size_t> v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

} // namespace detail

struct PqElements {
  Elem pR{2}, qR{2};
};

// p_R = x^1 (x) x^2 beta S(x^3), q_R = X^1 (x) S^{-1}(alpha X^3) X^2
inline PqElements pq_elements(const QuasiHopfData &Q) {
  std::size_t d = Q.d;
  auto Sinv = antipode_inverse(Q);
  PqElements r;
  for (auto &[k, c] : Q.PhiInv.t) {
    auto x = decode(k, 3, d);
    Elem right = mul(Q, mul(Q, basis_elem(x[1]), Q.beta), Q.S[x[2]]);
    r.pR = r.pR + c * tensor(basis_elem(x[0]), right, d);
  }
  for (auto &[k, c] : Q.Phi.t) {
    auto X = decode(k, 3, d);
    Elem right = mul(Q, apply_at(mul(Q, Q.alpha, basis_elem(X[2])), 0, Sinv, 1, d), basis_elem(X[1]));
    r.qR = r.qR + c * tensor(basis_elem(X[0]), right, d);
  }
  return r;
}

inline AxiomReport check_pq(const QuasiHopfData &Q) {
  std::size_t d = Q.d;
  AxiomReport rep;
  auto pq = pq_elements(Q);
  auto Sinv = antipode_inverse(Q);
  Elem one2 = one(Q, 2);
  AxiomResult qr1{"qr1"}, qr1a{"qr1a"}, pqra{"pqra"}, pqr{"pqr"};
  for (std::size_t h = 0; h < d; ++h) {
    Elem lhs(2), lhsa(2);
    for (auto &[k, c] : Q.comult[h].t) {
      auto hh = decode(k, 2, d);
      Elem one_Sh2 = tensor(Q.unit, Q.S[hh[1]], d);
      lhs = lhs + c * mul(Q, mul(Q, Q.comult[hh[0]], pq.pR), one_Sh2);
      Elem one_Sinvh2 = tensor(Q.unit, Sinv[hh[1]], d);
      lhsa = lhsa + c * mul(Q, mul(Q, one_Sinvh2, pq.qR), Q.comult[hh[0]]);
    }
    Elem h1 = tensor(basis_elem(h), Q.unit, d);
    if (qr1.pass && lhs != mul(Q, pq.pR, h1)) qr1 = {"qr1", false, detail::idx_list({h})};
    if (qr1a.pass && lhsa != mul(Q, h1, pq.qR)) qr1a = {"qr1a", false, detail::idx_list({h})};
  }
  Elem a(2), b(2);
  for (auto &[k, c] : pq.pR.t) {
    auto p = decode(k, 2, d);
    a = a + c * mul(Q, mul(Q, tensor(Q.unit, Sinv[p[1]], d), pq.qR), Q.comult[p[0]]);
  }
  for (auto &[k, c] : pq.qR.t) {
    auto q = decode(k, 2, d);
    b = b + c * mul(Q, mul(Q, Q.comult[q[0]], pq.pR), tensor(Q.unit, Q.S[q[1]], d));
  }
  if (a != one2) pqra = {"pqra", false, describe(Q, a)};
  if (b != one2) pqr = {"pqr", false, describe(Q, b)};
  rep.results = {qr1, qr1a, pqra, pqr};
  return rep;
}

inline AxiomReport check_axioms(const QuasiHopfData &Q, std::size_t cap = kDefaultCap, bool with_pq = true) {
  if (Q.d > cap) throw CapExceeded("dimension exceeds axiom-check cap");
  std::size_t d = Q.d;
  AxiomReport rep;
  auto fail = [](const std::string &n, std::string w) { return AxiomResult{n, false, std::move(w)}; };
  using detail::idx_list;

  AxiomResult assoc{"associativity"};
  for (std::size_t i = 0; i < d && assoc.pass; ++i)
    for (std::size_t j = 0; j < d && assoc.pass; ++j) {
      Elem ij = Q.m(i, j);
      for (std::size_t k = 0; k < d; ++k)
        if (mul(Q, ij, basis_elem(k)) != mul(Q, basis_elem(i), Q.m(j, k))) {
          assoc = fail(assoc.name, idx_list({i, j, k}));
          break;
        }
    }
  rep.results.push_back(assoc);

  AxiomResult unit{"unit"};
  for (std::size_t i = 0; i < d; ++i)
    if (mul(Q, Q.unit, basis_elem(i)) != basis_elem(i) || mul(Q, basis_elem(i), Q.unit) != basis_elem(i)) {
      unit = fail(unit.name, idx_list({i}));
      break;
    }
  rep.results.push_back(unit);

  AxiomResult eps_alg{"counit_algebra_map"}, delta_alg{"comult_algebra_map"}, santi{"antipode_anti_multiplicative"};
  if (evaluate(Q.counit, Q.unit) != Cyclo(1)) eps_alg = fail(eps_alg.name, "unit");
  if (delta_at(Q, Q.unit, 0) != one(Q, 2)) delta_alg = fail(delta_alg.name, "unit");
  if (apply_at(Q.unit, 0, Q.S, 1, d) != Q.unit) santi = fail(santi.name, "unit");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Elem &ij = Q.m(i, j);
      if (eps_alg.pass && evaluate(Q.counit, ij) != Q.counit[i] * Q.counit[j]) eps_alg = fail(eps_alg.name, idx_list({i, j}));
      if (delta_alg.pass && delta_at(Q, ij, 0) != mul(Q, Q.comult[i], Q.comult[j]))
        delta_alg = fail(delta_alg.name, idx_list({i, j}));
      if (santi.pass && apply_at(ij, 0, Q.S, 1, d) != mul(Q, Q.S[j], Q.S[i])) santi = fail(santi.name, idx_list({i, j}));
    }
  rep.results.push_back(eps_alg);
  rep.results.push_back(delta_alg);
  rep.results.push_back(santi);

  AxiomResult inv{"phi_invertible"};
  Elem one3 = one(Q, 3);
  if (mul(Q, Q.Phi, Q.PhiInv) != one3 || mul(Q, Q.PhiInv, Q.Phi) != one3) inv = fail(inv.name, "Phi*PhiInv");
  rep.results.push_back(inv);

  AxiomResult qcoass{"quasi_coassociativity"}, counit{"counit"}, q5a{"q5_alpha"}, q5b{"q5_beta"};
  for (std::size_t h = 0; h < d; ++h) {
    const Elem &D = Q.comult[h];
    if (qcoass.pass) {
      Elem l = mul(Q, delta_at(Q, D, 1), Q.Phi);
      Elem r = mul(Q, Q.Phi, delta_at(Q, D, 0));
      if (l != r) qcoass = fail(qcoass.name, idx_list({h}));
    }
    if (counit.pass && (eps_at(Q, D, 0) != basis_elem(h) || eps_at(Q, D, 1) != basis_elem(h)))
      counit = fail(counit.name, idx_list({h}));
    Elem sa(1), sb(1);
    for (auto &[k, c] : D.t) {
      auto hh = decode(k, 2, d);
      sa = sa + c * mul(Q, mul(Q, Q.S[hh[0]], Q.alpha), basis_elem(hh[1]));
      sb = sb + c * mul(Q, mul(Q, basis_elem(hh[0]), Q.beta), Q.S[hh[1]]);
    }
    if (q5a.pass && sa != Q.counit[h] * Q.alpha) q5a = fail(q5a.name, idx_list({h}));
    if (q5b.pass && sb != Q.counit[h] * Q.beta) q5b = fail(q5b.name, idx_list({h}));
  }
  rep.results.push_back(qcoass);
  rep.results.push_back(counit);

  AxiomResult norm{"phi_normalized"};
  if (eps_at(Q, Q.Phi, 1) != one(Q, 2)) norm = fail(norm.name, "(id,eps,id)Phi");
  rep.results.push_back(norm);

  AxiomResult pent{"pentagon"};
  {
    Elem lhs = mul(Q, mul(Q, tensor(Q.unit, Q.Phi, d), delta_at(Q, Q.Phi, 1)), tensor(Q.Phi, Q.unit, d));
    Elem rhs = mul(Q, delta_at(Q, Q.Phi, 2), delta_at(Q, Q.Phi, 0));
    if (lhs != rhs) pent = fail(pent.name, "lhs-rhs=" + describe(Q, lhs - rhs).substr(0, 200));
  }
  rep.results.push_back(pent);
  rep.results.push_back(q5a);
  rep.results.push_back(q5b);

  AxiomResult q6a{"q6_phi"}, q6b{"q6_phi_inverse"};
  {
    Elem s(1);
    for (auto &[k, c] : Q.Phi.t) {
      auto X = decode(k, 3, d);
      s = s + c * mul(Q, mul(Q, mul(Q, mul(Q, basis_elem(X[0]), Q.beta), Q.S[X[1]]), Q.alpha), basis_elem(X[2]));
    }
    if (s != Q.unit) q6a = fail(q6a.name, describe(Q, s));
    Elem t(1);
    for (auto &[k, c] : Q.PhiInv.t) {
      auto x = decode(k, 3, d);
      t = t + c * mul(Q, mul(Q, mul(Q, mul(Q, Q.S[x[0]], Q.alpha), basis_elem(x[1])), Q.beta), Q.S[x[2]]);
    }
    if (t != Q.unit) q6b = fail(q6b.name, describe(Q, t));
  }
  rep.results.push_back(q6a);
  rep.results.push_back(q6b);

  if (with_pq) {
    AxiomResult sinv{"antipode_invertible"};
    try {
      antipode_inverse(Q);
      auto pq = check_pq(Q);
      rep.results.push_back(sinv);
      for (auto &r : pq.results) rep.results.push_back(r);
    } catch (const std::domain_error &) {
      rep.results.push_back(fail(sinv.name, "S singular"));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- construction helpers

namespace detail {

inline QuasiHopfData empty_structure(std::size_t d) {
  QuasiHopfData Q;
  Q.d = d;
  Q.mult.assign(d * d, Elem(1));
  Q.comult.assign(d, Elem(2));
  Q.counit.assign(d, Cyclo(0));
  Q.S.assign(d, Elem(1));
  return Q;
}

// Delta, S, eps of each basis word from the images of the generators.
inline void extend_from_generators(QuasiHopfData &Q, const std::vector<std::vector<std::size_t>> &words,
                                   const std::map<std::size_t, Elem> &delta, const std::map<std::size_t, Elem> &S,
                                   const std::map<std::size_t, Cyclo> &eps) {
  for (std::size_t i = 0; i < Q.d; ++i) {
    Elem D = one(Q, 2), s = Q.unit;
    Cyclo e(1);
    for (auto g : words[i]) {
      D = mul(Q, D, delta.at(g));
      s = mul(Q, S.at(g), s);
      e = e * eps.at(g);
    }
    Q.comult[i] = D;
    Q.S[i] = s;
    Q.counit[i] = e;
  }
}

} // namespace detail

// ---------------------------------------------------------------- twists

struct TwistData {
  Elem F{2}, FInv{2};
};

inline std::string twist_failure(const QuasiHopfData &Q, const TwistData &T) {
  Elem one2 = one(Q, 2);
  if (mul(Q, T.F, T.FInv) != one2 || mul(Q, T.FInv, T.F) != one2) return "F*FInv != 1(x)1";
  if (eps_at(Q, T.F, 0) != Q.unit || eps_at(Q, T.F, 1) != Q.unit) return "F is not counital";
  return {};
}

inline QuasiHopfData twist(const QuasiHopfData &Q, const TwistData &T) {
  if (auto f = twist_failure(Q, T); !f.empty()) throw std::invalid_argument("invalid twist: " + f);
  std::size_t d = Q.d;
  QuasiHopfData R = Q;
  for (std::size_t h = 0; h < d; ++h) R.comult[h] = mul(Q, mul(Q, T.F, Q.comult[h]), T.FInv);
  auto build_phi = [&](const Elem &Phi, const Elem &F, const Elem &FInv, bool inverse) {
    Elem l1 = tensor(Q.unit, F, d), l2 = delta_at(Q, F, 1);
    Elem r1 = delta_at(Q, FInv, 0), r2 = tensor(FInv, Q.unit, d);
    if (!inverse) return mul(Q, mul(Q, mul(Q, mul(Q, l1, l2), Phi), r1), r2);
    // (Phi_F)^{-1} = (F (x) 1)(Delta (x) id)(F) Phi^{-1} (id (x) Delta)(F^{-1})(1 (x) F^{-1})
    Elem a1 = tensor(F, Q.unit, d), a2 = delta_at(Q, F, 0);
    Elem b1 = delta_at(Q, FInv, 1), b2 = tensor(Q.unit, FInv, d);
    return mul(Q, mul(Q, mul(Q, mul(Q, a1, a2), Phi), b1), b2);
  };
  R.Phi = build_phi(Q.Phi, T.F, T.FInv, false);
  R.PhiInv = build_phi(Q.PhiInv, T.F, T.FInv, true);
  Elem a(1), b(1);
  for (auto &[k, c] : T.FInv.t) {
    auto g = decode(k, 2, d);
    a = a + c * mul(Q, mul(Q, Q.S[g[0]], Q.alpha), basis_elem(g[1]));
  }
  for (auto &[k, c] : T.F.t) {
    auto f = decode(k, 2, d);
    b = b + c * mul(Q, mul(Q, basis_elem(f[0]), Q.beta), Q.S[f[1]]);
  }
  R.alpha = a;
  R.beta = b;
  return R;
}

// ---------------------------------------------------------------- change of basis, tensor products

// Column j of P holds the new basis vector j in old coordinates.
inline QuasiHopfData change_basis(const QuasiHopfData &Q, const CMat &P, const CMat &Pinv,
                                  std::vector<std::string> labels = {}) {
  std::size_t d = Q.d;
  auto to_new = images_of(Pinv);
  auto conv = [&](Elem x) {
    for (int p = 0; p < x.arity; ++p) x = apply_at(x, p, to_new, 1, d);
    return x;
  };
  std::vector<Elem> b;
  for (std::size_t j = 0; j < d; ++j) {
    Elem e(1);
    for (std::size_t i = 0; i < d; ++i) e.add(i, P[i][j]);
    b.push_back(e);
  }
  QuasiHopfData R = detail::empty_structure(d);
  R.labels = labels.empty() ? Q.labels : labels;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) R.mult[i * d + j] = conv(mul(Q, b[i], b[j]));
    R.comult[i] = conv(delta_at(Q, b[i], 0));
    R.counit[i] = evaluate(Q.counit, b[i]);
    R.S[i] = conv(apply_at(b[i], 0, Q.S, 1, d));
  }
  R.unit = conv(Q.unit);
  R.Phi = conv(Q.Phi);
  R.PhiInv = conv(Q.PhiInv);
  R.alpha = conv(Q.alpha);
  R.beta = conv(Q.beta);
  return R;
}

namespace detail {

// (a_0 (x) ... ) and (b_0 (x) ...) interleaved factorwise into (a_0 b_0) (x) ...
inline Elem interleave(const Elem &a, const Elem &b, std::size_t d1, std::size_t d2) {
  Elem r(a.arity);
  std::size_t D = d1 * d2;
  for (auto &[ka, ca] : a.t) {
    auto da = decode(ka, a.arity, d1);
    for (auto &[kb, cb] : b.t) {
      auto db = decode(kb, b.arity, d2);
      Key k = 0;
      for (int j = a.arity; j-- > 0;) k = k * D + da[static_cast<std::size_t>(j)] + d1 * db[static_cast<std::size_t>(j)];
      r.add(k, ca * cb);
    }
  }
  return r;
}

} // namespace detail

// Basis index i1 + d1*i2.
inline QuasiHopfData tensor_product(const QuasiHopfData &A, const QuasiHopfData &B) {
  std::size_t d1 = A.d, d2 = B.d, D = d1 * d2;
  QuasiHopfData R = detail::empty_structure(D);
  using detail::interleave;
  for (std::size_t j = 0; j < d2; ++j)
    for (std::size_t i = 0; i < d1; ++i) {
      std::string l1 = A.labels[i], l2 = B.labels[j];
      R.labels.push_back(l2 == "1" ? l1 : l1 == "1" ? l2 : l1 + "*" + l2);
    }
  for (std::size_t x = 0; x < D; ++x) {
    std::size_t i1 = x % d1, i2 = x / d1;
    for (std::size_t y = 0; y < D; ++y) {
      std::size_t j1 = y % d1, j2 = y / d1;
      R.mult[x * D + y] = interleave(A.m(i1, j1), B.m(i2, j2), d1, d2);
    }
    R.comult[x] = interleave(A.comult[i1], B.comult[i2], d1, d2);
    R.counit[x] = A.counit[i1] * B.counit[i2];
    R.S[x] = interleave(A.S[i1], B.S[i2], d1, d2);
  }
  R.unit = interleave(A.unit, B.unit, d1, d2);
  R.Phi = interleave(A.Phi, B.Phi, d1, d2);
  R.PhiInv = interleave(A.PhiInv, B.PhiInv, d1, d2);
  R.alpha = interleave(A.alpha, B.alpha, d1, d2);
  R.beta = interleave(A.beta, B.beta, d1, d2);
  return R;
}

// ---------------------------------------------------------------- presets

// k^G with reassociator sum omega(x,y,z) P_x (x) P_y (x) P_z, basis P_g.
inline QuasiHopfData kgw_function_basis(const GroupTable &G, const Cochain &w) {
  if (w.arity != 3 || w.order != G.order) throw std::invalid_argument("kGw needs a 3-cochain on G");
  std::size_t d = G.order;
  QuasiHopfData Q = detail::empty_structure(d);
  for (std::size_t g = 0; g < d; ++g) Q.labels.push_back("P" + G.labels[g]);
  auto root = [](const RootExp &r) { return Cyclo::root(r.modulus, r.exp); };
  for (std::size_t g = 0; g < d; ++g) {
    Q.mult[g * d + g] = basis_elem(g);
    Q.unit.add(g, Cyclo(1));
    Q.alpha.add(g, Cyclo(1));
    Q.beta.add(g, root(w(g, G.inv(g), g).inverse()));
    Q.counit[g] = Cyclo(g == G.e ? 1 : 0);
    Q.S[g] = basis_elem(G.inv(g));
    for (std::size_t x = 0; x < d; ++x) Q.comult[G.mul(x, g)].add(x + d * g, Cyclo(1));
  }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        Key k = x + d * (y + d * z);
        Q.Phi.add(k, root(w(x, y, z)));
        Q.PhiInv.add(k, root(w(x, y, z).inverse()));
      }
  return Q;
}

// Fourier matrix: column j is the group element g^j = sum_l xi^{j.l} 1_l in idempotent coordinates.
inline std::pair<CMat, CMat> fourier(const AbelianGroupSpec &G) {
  std::size_t d = G.order();
  auto els = G.elements();
  i64 E = G.exponent();
  CMat P(d, std::vector<Cyclo>(d)), Pinv(d, std::vector<Cyclo>(d));
  Cyclo inv_order(Rat(1, static_cast<unsigned long>(d)));
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t j = 0; j < d; ++j) {
      i64 e = 0;
      for (std::size_t t = 0; t < G.rank(); ++t) e += (E / G.m[t]) * els[j][t] * els[l][t];
      P[l][j] = Cyclo::root(E, e);
      Pinv[j][l] = inv_order * Cyclo::root(E, -e);
    }
  return {P, Pinv};
}

inline std::string group_element_label(const AbelianGroupSpec &G, const AbelianElement &x) {
  std::string s;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t] == 0) continue;
    std::string gen = G.rank() == 1 ? "g" : "g" + std::to_string(t + 1);
    s += (s.empty() ? "" : "*") + gen + (x[t] > 1 ? "^" + std::to_string(x[t]) : "");
  }
  return s.empty() ? "1" : s;
}

// k[G] with reassociator from omega, in the group basis (lexicographic elements).
inline QuasiHopfData kgw(const AbelianGroupSpec &G, const Cochain &w) {
  auto F = kgw_function_basis(G.table(), w);
  auto [P, Pinv] = fourier(G);
  std::vector<std::string> labels;
  for (auto &x : G.elements()) labels.push_back(group_element_label(G, x));
  return change_basis(F, P, Pinv, labels);
}

inline QuasiHopfData kgw(const AbelianGroupSpec &G, const CocycleDatum &a) {
  return kgw(G, omega_abelian_cochain(G, a));
}

inline QuasiHopfData group_algebra_c2() {
  AbelianGroupSpec C2({2});
  return kgw(C2, CocycleDatum::zero(C2));
}

namespace detail {

// p_- = (1 - g)/2 with g at index gi, unit at index 0
inline Elem p_minus(std::size_t gi) {
  return Cyclo(Rat(1, 2)) * basis_elem(0) - Cyclo(Rat(1, 2)) * basis_elem(gi);
}
inline Elem p_plus(std::size_t gi) {
  return Cyclo(Rat(1, 2)) * basis_elem(0) + Cyclo(Rat(1, 2)) * basis_elem(gi);
}

inline void set_phi_sign_reassociator(QuasiHopfData &Q, std::size_t gi) {
  Elem pm = p_minus(gi);
  Elem P3 = tensor(tensor(pm, pm, Q.d), pm, Q.d);
  Q.Phi = one(Q, 3) - Cyclo(2) * P3;
  Q.PhiInv = Q.Phi;
}

} // namespace detail

// k[C2] with Phi = 1 - 2 p_-(x)p_-(x)p_-, alpha = 1, beta = g.
inline QuasiHopfData h2() {
  QuasiHopfData Q = group_algebra_c2();
  detail::set_phi_sign_reassociator(Q, 1);
  Q.beta = basis_elem(1);
  return Q;
}

// Sweedler's algebra, basis {1, g, x, gx}.
inline QuasiHopfData h4() {
  QuasiHopfData Q = detail::empty_structure(4);
  Q.labels = {"1", "g", "x", "gx"};
  // g^a x^b * g^c x^e = (-1)^{bc} g^{a+c} x^{b+e}
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t a = i & 1, b = i >> 1, c = j & 1, e = j >> 1;
      if (b + e > 1) continue;
      Q.mult[i * 4 + j] = basis_elem(((a + c) & 1) | ((b + e) << 1), Cyclo((b * c) ? -1 : 1));
    }
  Q.unit = basis_elem(0);
  auto t = [&](std::size_t i, std::size_t j) { return tensor(basis_elem(i), basis_elem(j), 4); };
  Q.comult[0] = t(0, 0);
  Q.comult[1] = t(1, 1);
  Q.comult[2] = t(1, 2) + t(2, 0);       // g(x)x + x(x)1
  Q.comult[3] = t(0, 3) + t(3, 1);       // (g(x)g)(g(x)x + x(x)1)
  Q.counit = {Cyclo(1), Cyclo(1), Cyclo(0), Cyclo(0)};
  Q.S[0] = basis_elem(0);
  Q.S[1] = basis_elem(1);
  Q.S[2] = basis_elem(3, Cyclo(-1)); // -gx
  Q.S[3] = basis_elem(2);            // S(gx) = S(x)S(g) = -gxg = x
  Q.Phi = one(Q, 3);
  Q.PhiInv = Q.Phi;
  Q.alpha = Q.unit;
  Q.beta = Q.unit;
  return Q;
}

// H_q(8): basis g^a x^k at index a + 2k, q = i (sign +1) or -i (sign -1).
inline QuasiHopfData hq8(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("hq8 sign must be +1 or -1");
  QuasiHopfData Q = detail::empty_structure(8);
  Q.labels = {"1", "g", "x", "gx", "x^2", "gx^2", "x^3", "gx^3"};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::size_t a = i & 1, k = i >> 1, b = j & 1, l = j >> 1;
      if (k + l > 3) continue;
      Q.mult[i * 8 + j] = basis_elem(((a + b) & 1) + 2 * (k + l), Cyclo((k * b) % 2 ? -1 : 1));
    }
  Q.unit = basis_elem(0);
  Cyclo q = sign * Cyclo::root(4, 1);
  Elem pp = detail::p_plus(1), pm = detail::p_minus(1);
  Elem g = basis_elem(1), x = basis_elem(2);
  Elem pq = pp + q * pm;
  Elem dx = tensor(x, pq, 8) + tensor(Q.unit, mul(Q, pp, x), 8) + tensor(g, mul(Q, pm, x), 8);
  Elem sx = Cyclo(-1) * mul(Q, x, pq);
  std::vector<std::vector<std::size_t>> words(8);
  for (std::size_t i = 0; i < 8; ++i) {
    if (i & 1) words[i].push_back(1);
    for (std::size_t k = 0; k < (i >> 1); ++k) words[i].push_back(2);
  }
  detail::extend_from_generators(Q, words, {{1, tensor(g, g, 8)}, {2, dx}}, {{1, g}, {2, sx}},
                                 {{1, Cyclo(1)}, {2, Cyclo(0)}});
  detail::set_phi_sign_reassociator(Q, 1);
  Q.alpha = g;
  Q.beta = Q.unit;
  return Q;
}

// Nichols Hopf algebra H_{2^{n+1}}: basis g^a x_M (x_M increasing product), index a | (M << 1).
inline QuasiHopfData nichols(std::size_t n) {
  if (n < 1 || n > 5) throw std::invalid_argument("nichols needs 1 <= n <= 5");
  std::size_t d = std::size_t(1) << (n + 1);
  QuasiHopfData Q = detail::empty_structure(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::string s = (i & 1) ? "g" : "";
    for (std::size_t t = 0; t < n; ++t)
      if ((i >> (t + 1)) & 1) s += "x" + std::to_string(t + 1);
    Q.labels.push_back(s.empty() ? "1" : s);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t a = i & 1, M = i >> 1, b = j & 1, N = j >> 1;
      if (M & N) continue;
      int sign = (b && (__builtin_popcountll(M) & 1)) ? -1 : 1;
      for (std::size_t s = 0; s < n; ++s) // inversions: s in M, t in N, s > t
        if ((M >> s) & 1) sign *= (__builtin_popcountll(N & ((std::size_t(1) << s) - 1)) & 1) ? -1 : 1;
      Q.mult[i * d + j] = basis_elem(((a + b) & 1) | ((M | N) << 1), Cyclo(sign));
    }
  Q.unit = basis_elem(0);
  Elem g = basis_elem(1);
  std::map<std::size_t, Elem> delta{{1, tensor(g, g, d)}}, S{{1, g}};
  std::map<std::size_t, Cyclo> eps{{1, Cyclo(1)}};
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t xi = std::size_t(1) << (t + 1);
    delta[xi] = tensor(g, basis_elem(xi), d) + tensor(basis_elem(xi), Q.unit, d);
    S[xi] = basis_elem(xi | 1, Cyclo(-1));
    eps[xi] = Cyclo(0);
  }
  std::vector<std::vector<std::size_t>> words(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (i & 1) words[i].push_back(1);
    for (std::size_t t = 0; t < n; ++t)
      if ((i >> (t + 1)) & 1) words[i].push_back(std::size_t(1) << (t + 1));
  }
  detail::extend_from_generators(Q, words, delta, S, eps);
  Q.Phi = one(Q, 3);
  Q.PhiInv = Q.Phi;
  Q.alpha = Q.unit;
  Q.beta = Q.unit;
  return Q;
}

// ---------------------------------------------------------------- H4 twists

struct H4TwistScalars {
  Cyclo a{1}, b{0}, c{0}, mu{0}, nu{0}, tau{0}, u{0}, v{0}, w{0};
  bool operator==(const H4TwistScalars &) const = default;
};

inline H4TwistScalars h4_twist_inverse_scalars(const H4TwistScalars &s) {
  if (s.a.is_zero()) throw std::domain_error("H4 twist needs a != 0");
  H4TwistScalars r;
  Cyclo ia = s.a.inverse();
  r.a = ia;
  r.b = -s.b * ia;
  r.c = -s.c * ia;
  r.mu = -s.mu * ia;
  r.nu = -s.nu * ia;
  r.tau = s.c * s.mu * ia - s.tau;
  r.u = -s.u * ia;
  r.v = s.u * s.b * ia - s.v;
  r.w = -s.w * ia;
  return r;
}

inline Elem h4_twist_element(const H4TwistScalars &s) {
  QuasiHopfData H = h4();
  Elem pp = detail::p_plus(1), pm = detail::p_minus(1), x = basis_elem(2);
  Elem ppx = mul(H, pp, x), pmx = mul(H, pm, x);
  auto t = [&](const Elem &l, const Elem &r) { return tensor(l, r, 4); };
  return t(pp, H.unit) + t(pm, pp) + s.a * t(pm, pm) + s.b * t(pm, pmx) + s.c * t(pm, ppx) + s.mu * t(pmx, pm) +
         s.nu * t(pmx, pmx) + s.tau * t(pmx, ppx) + s.u * t(ppx, pm) + s.v * t(ppx, pmx) + s.w * t(ppx, ppx);
}

inline TwistData h4_twist(const H4TwistScalars &s) {
  TwistData T{h4_twist_element(s), h4_twist_element(h4_twist_inverse_scalars(s))};
  if (auto f = twist_failure(h4(), T); !f.empty()) throw std::logic_error("h4_twist: " + f);
  return T;
}

struct TwistEquivWitness {
  Cyclo omega_sq;
  std::optional<Cyclo> omega; // when a square root is at hand
  Cyclo kappa;
};

inline std::optional<Cyclo> rational_sqrt(const Cyclo &s) {
  if (!s.is_rational()) return std::nullopt;
  Rat r = s.rational();
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
  Int n = sqrt(Int(r.get_num())), dd = sqrt(Int(r.get_den()));
  return Cyclo(Rat(n, dd));
}

// (H4)_F and (H4)_G isomorphic: a = a', (b',c',mu',u') = omega (b,c,mu,u), nu' = omega^2 nu + kappa a,
// tau' = omega^2 tau + kappa, v' = omega^2 v - kappa, w' = omega^2 w - kappa.
inline std::optional<TwistEquivWitness> h4_twist_equiv(const H4TwistScalars &F, const H4TwistScalars &G) {
  if (F.a.is_zero() || G.a.is_zero()) throw std::domain_error("H4 twist needs a != 0");
  if (F.a != G.a) return std::nullopt;
  std::optional<Cyclo> w;
  for (auto [x, y] : {std::pair{F.b, G.b}, {F.c, G.c}, {F.mu, G.mu}, {F.u, G.u}}) {
    if (x.is_zero()) {
      if (!y.is_zero()) return std::nullopt;
      continue;
    }
    Cyclo cand = y / x;
    if (w && *w != cand) return std::nullopt;
    w = cand;
  }
  if (w && w->is_zero()) return std::nullopt;
  auto consistent = [&](const Cyclo &s, const Cyclo &k) {
    return G.nu == s * F.nu + k * F.a && G.tau == s * F.tau + k && G.v == s * F.v - k && G.w == s * F.w - k;
  };
  std::optional<Cyclo> s;
  if (w) {
    s = *w * *w;
  } else {
    // kappa = tau' - s tau; remaining equations are s*A = B
    std::array<std::pair<Cyclo, Cyclo>, 3> eqs{{{F.v + F.tau, G.v + G.tau},
                                                 {F.w + F.tau, G.w + G.tau},
                                                 {F.nu - F.a * F.tau, G.nu - F.a * G.tau}}};
    for (auto &[A, B] : eqs)
      if (!A.is_zero()) {
        s = B / A;
        break;
      }
    if (!s) s = Cyclo(1);
  }
  if (s->is_zero()) return std::nullopt;
  Cyclo k = G.tau - *s * F.tau;
  if (!consistent(*s, k)) return std::nullopt;
  TwistEquivWitness r{*s, w, k};
  if (!r.omega) r.omega = rational_sqrt(*s);
  return r;
}

// ---------------------------------------------------------------- (sigma, v) pairs and biproducts

struct SigmaV {
  std::vector<Cyclo> sigma; // values on the basis
  Elem v{1};
};

struct PairCheck {
  bool ok = true;
  std::string failure;
};

inline std::vector<Elem> functional_images(const std::vector<Cyclo> &f) {
  std::vector<Elem> r;
  for (auto &c : f) {
    Elem e(0);
    e.add(0, c);
    r.push_back(e);
  }
  return r;
}

inline bool is_algebra_map(const QuasiHopfData &Q, const std::vector<Cyclo> &sigma) {
  if (evaluate(sigma, Q.unit) != Cyclo(1)) return false;
  for (std::size_t i = 0; i < Q.d; ++i)
    for (std::size_t j = 0; j < Q.d; ++j)
      if (evaluate(sigma, Q.m(i, j)) != sigma[i] * sigma[j]) return false;
  return true;
}

inline PairCheck check_pair(const QuasiHopfData &Q, const SigmaV &sv) {
  std::size_t d = Q.d;
  if (sv.sigma.size() != d) throw std::invalid_argument("sigma needs one value per basis element");
  if (!is_algebra_map(Q, sv.sigma)) throw std::invalid_argument("sigma is not a unital algebra map");
  if (evaluate(sv.sigma, sv.v) != Cyclo(-1)) return {false, "sigma(v) != -1"};
  if (evaluate(Q.counit, sv.v) != Cyclo(1)) return {false, "eps(v) != 1"};
  // Delta(v) = sigma(y^1 x^3 X^2) x^1 X^1 v y^2 (x) x^2 v X^3 y^3; sigma is multiplicative, so the
  // y-sum factors out as (sigma (x) id (x) id)(PhiInv).
  auto sig = functional_images(sv.sigma);
  Elem xX(2);
  for (auto &[kx, cx] : Q.PhiInv.t) {
    auto x = decode(kx, 3, d);
    if (sv.sigma[x[2]].is_zero()) continue;
    Elem x2v = mul(Q, basis_elem(x[1]), sv.v);
    for (auto &[kX, cX] : Q.Phi.t) {
      auto X = decode(kX, 3, d);
      Cyclo s = cx * cX * sv.sigma[x[2]] * sv.sigma[X[1]];
      if (s.is_zero()) continue;
      xX = xX + s * tensor(mul(Q, Q.m(x[0], X[0]), sv.v), mul(Q, x2v, basis_elem(X[2])), d);
    }
  }
  Elem rhs = mul(Q, xX, apply_at(Q.PhiInv, 0, sig, 0, d));
  if (delta_at(Q, sv.v, 0) != rhs) return {false, "Delta(v) identity"};
  for (std::size_t h = 0; h < d; ++h) {
    Elem l(1), r(1);
    for (auto &[k, c] : Q.comult[h].t) {
      auto hh = decode(k, 2, d);
      l = l + (c * sv.sigma[hh[1]]) * mul(Q, basis_elem(hh[0]), sv.v);
      r = r + (c * sv.sigma[hh[0]]) * mul(Q, sv.v, basis_elem(hh[1]));
    }
    if (l != r) return {false, "commutation at basis " + std::to_string(h)};
  }
  return {};
}

// H(theta)_{sigma,v} in the basis {b, b theta}: index i for b_i, d+i for b_i theta.
inline QuasiHopfData biproduct_theta(const QuasiHopfData &Q, const SigmaV &sv) {
  if (auto pc = check_pair(Q, sv); !pc.ok) throw std::invalid_argument("invalid pair: " + pc.failure);
  std::size_t d = Q.d, D = 2 * d;
  auto up = [&](const Elem &x) { return rebase(x, d, D); };
  auto theta_times = [&](const Elem &x) { // theta * h, h in H
    return rebase(x, d, D, [d](std::size_t i) { return i + d; });
  };
  // sigma(h_1) h_2
  std::vector<Elem> sl(d, Elem(1));
  for (std::size_t i = 0; i < d; ++i)
    for (auto &[k, c] : Q.comult[i].t) {
      auto hh = decode(k, 2, d);
      sl[i] = sl[i] + (c * sv.sigma[hh[0]]) * basis_elem(hh[1]);
    }

  // stage 1: basis {b, theta b}
  QuasiHopfData A = detail::empty_structure(D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      A.mult[i * D + j] = up(Q.m(i, j));
      A.mult[i * D + d + j] = theta_times(mul(Q, sl[i], basis_elem(j)));
      A.mult[(d + i) * D + j] = theta_times(Q.m(i, j));
    }
  A.unit = up(Q.unit);
  Elem theta = theta_times(Q.unit);
  for (std::size_t i = 0; i < d; ++i) A.counit[i] = Q.counit[i];
  A.Phi = up(Q.Phi);
  A.PhiInv = up(Q.PhiInv);
  A.alpha = up(Q.alpha);
  A.beta = up(Q.beta);

  // sigma is multiplicative: with Xs = sigma(X^2) X^1 (x) X^3 and xs = sigma(x^1) x^2 (x) x^3,
  // Delta(theta) = (v (x) theta) Xs xs + (theta (x) 1) xs.
  auto sg = functional_images(sv.sigma);
  Elem Xs = apply_at(Q.Phi, 1, sg, 0, d);
  Elem xs = apply_at(Q.PhiInv, 0, sg, 0, d);
  Elem dtheta = mul(A, tensor(up(sv.v), theta, D), up(mul(Q, Xs, xs))) + mul(A, tensor(theta, A.unit, D), up(xs));
  // S(theta) = -sigma(X^2 x^1_2) S(X^1 x^1_1 v) alpha theta X^3 x^2 beta S(x^3)
  //          = -S(v) S(z^1) alpha theta z^2 beta S(z^3), z = (Xs (x) 1)(sigma(x^1_2) x^1_1 (x) x^2 (x) x^3)
  Elem y = apply_at(delta_at(Q, Q.PhiInv, 0), 1, sg, 0, d);
  Elem z = mul(Q, tensor(Xs, Q.unit, d), y);
  Elem Sv = apply_at(sv.v, 0, Q.S, 1, d);
  Elem stheta(1);
  for (auto &[k, c] : z.t) {
    auto zz = decode(k, 3, d);
    Elem left = mul(Q, mul(Q, Sv, Q.S[zz[0]]), Q.alpha);
    Elem right = mul(Q, mul(Q, basis_elem(zz[1]), Q.beta), Q.S[zz[2]]);
    stheta = stheta + (-c) * mul(A, up(left), theta_times(right));
  }
  for (std::size_t i = 0; i < d; ++i) {
    A.comult[i] = up(Q.comult[i]);
    A.comult[d + i] = mul(A, dtheta, A.comult[i]);
    A.S[i] = up(Q.S[i]);
    A.S[d + i] = mul(A, A.S[i], stheta);
  }

  // stage 2: b theta = sigma(b_1) theta b_2
  CMat P(D, std::vector<Cyclo>(D, Cyclo(0)));
  for (std::size_t j = 0; j < d; ++j) {
    P[j][j] = Cyclo(1);
    Elem bt = mul(A, basis_elem(j), theta);
    for (auto &[k, c] : bt.t) P[static_cast<std::size_t>(k)][d + j] = c;
  }
  std::vector<std::string> labels = Q.labels;
  for (std::size_t j = 0; j < d; ++j) labels.push_back(Q.labels[j] == "1" ? "t" : Q.labels[j] + "*t");
  return change_basis(A, P, invert(P), labels);
}

// k[C2] (x) Q with the new grouplike at index d + i.
inline QuasiHopfData biproduct_g(const QuasiHopfData &Q) {
  QuasiHopfData C = group_algebra_c2();
  C.labels = {"1", "h"};
  return tensor_product(Q, C);
}

// sigma(g^j) = prod xi^{f.j}, v = sum_l zeta_N^{e(l)} 1_l, on kgw(G, omega_abar).
inline SigmaV from_classification(const AbelianGroupSpec &G, const CocycleDatum &a, const PairSolution &p) {
  auto desc = descriptor(G, a, p);
  auto els = G.elements();
  std::size_t d = G.order();
  i64 E = G.exponent();
  SigmaV sv;
  for (auto &j : els) {
    i64 e = 0;
    for (std::size_t t = 0; t < G.rank(); ++t) e += (E / G.m[t]) * p.f[t] * j[t];
    sv.sigma.push_back(Cyclo::root(E, e));
  }
  auto [P, Pinv] = fourier(G);
  for (std::size_t j = 0; j < d; ++j) {
    Cyclo c(0);
    for (std::size_t l = 0; l < d; ++l) c += Pinv[j][l] * Cyclo::root(desc.N, desc.v_exps[l]);
    sv.v.add(j, c);
  }
  return sv;
}

// ---------------------------------------------------------------- preset names

// h4 | h2 | hq8:+ | hq8:- | nichols:N | kGw:abelian:2,2:c=0,1;c12=1 | kGw:ddn:2:p=1 | hq16:+ | hq16:-
inline QuasiHopfData preset(const std::string &name) {
  if (name == "h4") return h4();
  if (name == "h2") return h2();
  if (name == "hq8:+") return hq8(1);
  if (name == "hq8:-") return hq8(-1);
  if (name == "hq16:+") return biproduct_g(hq8(1));
  if (name == "hq16:-") return biproduct_g(hq8(-1));
  if (name.rfind("nichols:", 0) == 0) {
    std::string n = name.substr(8);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad nichols rank '" + n + "'");
    return nichols(std::stoul(n));
  }
  if (name.rfind("kGw:", 0) == 0) {
    std::string rest = name.substr(4);
    // kind:params[:datum]
    auto c1 = rest.find(':');
    if (c1 == std::string::npos) throw std::invalid_argument("kGw preset needs a group");
    auto c2 = rest.find(':', c1 + 1);
    std::string gspec = rest.substr(0, c2), datum = c2 == std::string::npos ? "" : rest.substr(c2 + 1);
    auto G = parse_group(gspec);
    if (auto *A = std::get_if<AbelianGroupSpec>(&G)) {
      auto a = parse_datum(*A, datum);
      a.validate(*A);
      return kgw(*A, a);
    }
    auto &Dd = std::get<DdnSpec>(G);
    i64 p = 0;
    if (!datum.empty()) {
      if (datum.rfind("p=", 0) != 0) throw std::invalid_argument("ddn datum must be 'p=<int>'");
      p = std::stoll(datum.substr(2));
    }
    return kgw_function_basis(Dd.table(), omega_ddn_cochain(Dd, p));
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

} // namespace qhopf
