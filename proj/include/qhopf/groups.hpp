#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qhopf {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i64 lcm64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultCap = 64;

// Multiplication table of a finite group; elements are indices 0..order-1.
struct GroupTable {
  std::size_t order = 0;
  std::size_t e = 0;
  std::vector<std::size_t> mul_; // order*order
  std::vector<std::size_t> inv_;
  std::vector<std::string> labels;

  std::size_t mul(std::size_t x, std::size_t y) const { return mul_[x * order + y]; }
  std::size_t inv(std::size_t x) const { return inv_[x]; }
};

using AbelianElement = std::vector<i64>;

struct AbelianGroupSpec {
  std::vector<i64> m;

  explicit AbelianGroupSpec(std::vector<i64> moduli) : m(std::move(moduli)) {
    if (m.empty()) throw std::invalid_argument("abelian group needs at least one modulus");
    for (i64 x : m)
      if (x < 2) throw std::invalid_argument("abelian group moduli must be >= 2");
  }

  std::size_t rank() const { return m.size(); }

  std::size_t order() const {
    std::size_t o = 1;
    for (i64 x : m) o *= static_cast<std::size_t>(x);
    return o;
  }

  // LCM of the triple gcds; 1 when n < 3.
  i64 M() const {
    i64 r = 1;
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b)
        for (std::size_t c = b + 1; c < m.size(); ++c) r = lcm64(r, gcd3(a, b, c));
    return r;
  }
  i64 gcd3(std::size_t r, std::size_t s, std::size_t t) const {
    return std::gcd(std::gcd(m[r], m[s]), m[t]);
  }
  // LCM{m_j^2, m_s m_t}
  i64 N() const {
    i64 r = 1;
    for (std::size_t j = 0; j < m.size(); ++j) r = lcm64(r, m[j] * m[j]);
    for (std::size_t s = 0; s < m.size(); ++s)
      for (std::size_t t = s + 1; t < m.size(); ++t) r = lcm64(r, m[s] * m[t]);
    return r;
  }
  // LCM{m_j}: value modulus of omega_a
  i64 exponent() const {
    i64 r = 1;
    for (i64 x : m) r = lcm64(r, x);
    return r;
  }
  i64 L() const {
    if (m.size() != 2) throw std::invalid_argument("L is defined for two cyclic factors");
    return lcm64(m[0], m[1]);
  }

  // lexicographic: first coordinate most significant
  std::size_t index(const AbelianElement &x) const {
    std::size_t i = 0;
    for (std::size_t j = 0; j < m.size(); ++j) i = i * m[j] + static_cast<std::size_t>(x[j]);
    return i;
  }
  AbelianElement element(std::size_t i) const {
    AbelianElement x(m.size());
    for (std::size_t j = m.size(); j-- > 0;) {
      x[j] = static_cast<i64>(i % m[j]);
      i /= m[j];
    }
    return x;
  }
  std::vector<AbelianElement> elements() const {
    std::vector<AbelianElement> r;
    for (std::size_t i = 0; i < order(); ++i) r.push_back(element(i));
    return r;
  }

  void check(const AbelianElement &x) const {
    if (x.size() != m.size()) throw std::invalid_argument("element length does not match moduli");
    for (std::size_t j = 0; j < m.size(); ++j)
      if (x[j] < 0 || x[j] >= m[j]) throw std::invalid_argument("element exponent out of range");
  }

  AbelianElement mul(const AbelianElement &x, const AbelianElement &y) const {
    check(x), check(y);
    AbelianElement r(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) r[j] = (x[j] + y[j]) % m[j];
    return r;
  }
  AbelianElement inv(const AbelianElement &x) const {
    check(x);
    AbelianElement r(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) r[j] = mod(-x[j], m[j]);
    return r;
  }
  AbelianElement identity() const { return AbelianElement(m.size(), 0); }

  std::string label(const AbelianElement &x) const {
    std::string s = "(";
    for (std::size_t j = 0; j < x.size(); ++j) s += (j ? "," : "") + std::to_string(x[j]);
    return s + ")";
  }

  std::string spec_string() const {
    std::string s = "abelian:";
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? "," : "") + std::to_string(m[j]);
    return s;
  }

  GroupTable table() const {
    GroupTable t;
    t.order = order();
    t.e = 0;
    t.mul_.resize(t.order * t.order);
    t.inv_.resize(t.order);
    auto els = elements();
    for (std::size_t i = 0; i < t.order; ++i) {
      t.labels.push_back(label(els[i]));
      t.inv_[i] = index(inv(els[i]));
      for (std::size_t j = 0; j < t.order; ++j) t.mul_[i * t.order + j] = index(mul(els[i], els[j]));
    }
    return t;
  }
};

// <a>_{2n}: the representative of a mod 2n in [-n+1, n]
inline i64 bracket_rem(i64 a, i64 n) {
  if (n < 1) throw std::invalid_argument("bracket_rem needs n >= 1");
  return a + 2 * floor_div(n - a, 2 * n) * n;
}

struct DdnElement {
  int A = 0;
  i64 a = 0;
  bool operator==(const DdnElement &o) const { return A == o.A && a == o.a; }
};

struct DdnSpec {
  i64 n;

  explicit DdnSpec(i64 n_) : n(n_) {
    if (n < 2) throw std::invalid_argument("double dihedral group needs n >= 2");
  }

  std::size_t order() const { return static_cast<std::size_t>(4 * n); }

  void check(const DdnElement &x) const {
    if ((x.A != 0 && x.A != 1) || x.a < -n + 1 || x.a > n)
      throw std::invalid_argument("double dihedral element out of range");
  }

  DdnElement mul(const DdnElement &x, const DdnElement &y) const {
    check(x), check(y);
    i64 sign = y.A ? -1 : 1;
    return {(x.A + y.A) % 2, bracket_rem(sign * x.a + y.a + n * x.A * y.A, n)};
  }
  DdnElement inv(const DdnElement &x) const {
    for (auto &y : elements())
      if (mul(x, y) == identity()) return y;
    throw std::logic_error("no inverse");
  }
  DdnElement identity() const { return {0, 0}; }
  DdnElement R(i64 k) const { return {0, bracket_rem(k, n)}; }
  DdnElement X() const { return {1, 0}; }

  // index = A*2n + (a + n - 1)
  std::size_t index(const DdnElement &x) const {
    return static_cast<std::size_t>(x.A * 2 * n + (x.a + n - 1));
  }
  DdnElement element(std::size_t i) const {
    return {static_cast<int>(i / (2 * n)), static_cast<i64>(i % (2 * n)) - n + 1};
  }
  std::vector<DdnElement> elements() const {
    std::vector<DdnElement> r;
    for (std::size_t i = 0; i < order(); ++i) r.push_back(element(i));
    return r;
  }

  std::string label(const DdnElement &x) const {
    return "(" + std::to_string(x.A) + "," + std::to_string(x.a) + ")";
  }

  GroupTable table() const {
    GroupTable t;
    t.order = order();
    t.e = index(identity());
    t.mul_.resize(t.order * t.order);
    t.inv_.resize(t.order);
    auto els = elements();
    for (std::size_t i = 0; i < t.order; ++i) {
      t.labels.push_back(label(els[i]));
      for (std::size_t j = 0; j < t.order; ++j) t.mul_[i * t.order + j] = index(mul(els[i], els[j]));
    }
    for (std::size_t i = 0; i < t.order; ++i)
      for (std::size_t j = 0; j < t.order; ++j)
        if (t.mul(i, j) == t.e) t.inv_[i] = j;
    return t;
  }
};

// Exhaustive commutation; indices into the group table.
inline std::vector<std::size_t> center(const GroupTable &G, std::size_t cap = kDefaultCap) {
  if (G.order > cap) throw CapExceeded("group order exceeds exhaustive cap");
  std::vector<std::size_t> z;
  for (std::size_t x = 0; x < G.order; ++x) {
    bool central = true;
    for (std::size_t y = 0; y < G.order && central; ++y) central = G.mul(x, y) == G.mul(y, x);
    if (central) z.push_back(x);
  }
  return z;
}

inline std::vector<DdnElement> center(const DdnSpec &D, std::size_t cap = kDefaultCap) {
  std::vector<DdnElement> r;
  for (auto i : center(D.table(), cap)) r.push_back(D.element(i));
  return r;
}

inline std::vector<AbelianElement> center(const AbelianGroupSpec &G, std::size_t cap = kDefaultCap) {
  std::vector<AbelianElement> r;
  for (auto i : center(G.table(), cap)) r.push_back(G.element(i));
  return r;
}

// All lambda with 0 <= lambda_j < m_j, lexicographic.
inline std::vector<std::vector<i64>> characters(const AbelianGroupSpec &G) { return G.elements(); }

inline std::string group_axiom_failure(const GroupTable &G) {
  for (std::size_t x = 0; x < G.order; ++x) {
    if (G.mul(G.e, x) != x || G.mul(x, G.e) != x) return "identity fails at " + G.labels[x];
    if (G.mul(x, G.inv(x)) != G.e || G.mul(G.inv(x), x) != G.e) return "inverse fails at " + G.labels[x];
    for (std::size_t y = 0; y < G.order; ++y)
      for (std::size_t z = 0; z < G.order; ++z)
        if (G.mul(G.mul(x, y), z) != G.mul(x, G.mul(y, z)))
          return "associativity fails at " + G.labels[x] + "," + G.labels[y] + "," + G.labels[z];
  }
  return {};
}

using GroupSpec = std::variant<AbelianGroupSpec, DdnSpec>;

// "abelian:2,6" or "ddn:3"
inline GroupSpec parse_group(const std::string &s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("group spec needs 'kind:params': " + s);
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  auto to_int = [&](const std::string &t) -> i64 {
    std::size_t pos = 0;
    i64 v;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception &) {
      throw std::invalid_argument("bad integer '" + t + "' in group spec");
    }
    if (pos != t.size()) throw std::invalid_argument("bad integer '" + t + "' in group spec");
    return v;
  };
  if (kind == "abelian") {
    std::vector<i64> m;
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) m.push_back(to_int(tok));
    return AbelianGroupSpec(m);
  }
  if (kind == "ddn") return DdnSpec(to_int(rest));
  throw std::invalid_argument("unknown group kind '" + kind + "'");
}

} // namespace qhopf
