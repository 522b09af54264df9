#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhopf/qha.hpp"

#include <random>

using namespace qhopf;

namespace {

Elem t2(std::size_t i, std::size_t j, std::size_t d) { return tensor(basis_elem(i), basis_elem(j), d); }

SigmaV nichols_pair(const QuasiHopfData &Q) {
  SigmaV s;
  for (std::size_t i = 0; i < Q.d; ++i) s.sigma.push_back(i == 0 ? Cyclo(1) : i == 1 ? Cyclo(-1) : Cyclo(0));
  s.v = basis_elem(1);
  return s;
}

Cyclo small_rational(std::mt19937 &rng, bool nonzero = false) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  for (;;) {
    Rat r(num(rng), den(rng));
    r.canonicalize();
    if (!nonzero || r != 0) return Cyclo(r);
  }
}

H4TwistScalars random_scalars(std::mt19937 &rng) {
  H4TwistScalars s;
  s.a = small_rational(rng, true);
  s.b = small_rational(rng), s.c = small_rational(rng), s.mu = small_rational(rng);
  s.nu = small_rational(rng), s.tau = small_rational(rng), s.u = small_rational(rng);
  s.v = small_rational(rng), s.w = small_rational(rng);
  return s;
}

H4TwistScalars transport(const H4TwistScalars &s, const Cyclo &w, const Cyclo &k) {
  H4TwistScalars r = s;
  Cyclo w2 = w * w;
  r.b = w * s.b, r.c = w * s.c, r.mu = w * s.mu, r.u = w * s.u;
  r.nu = w2 * s.nu + k * s.a;
  r.tau = w2 * s.tau + k;
  r.v = w2 * s.v - k;
  r.w = w2 * s.w - k;
  return r;
}

} // namespace

TEST_CASE("tensor helpers") {
  Elem a = basis_elem(1) + Cyclo(2) * basis_elem(3);
  Elem b = basis_elem(0);
  Elem ab = tensor(a, b, 4);
  CHECK(ab.arity == 2);
  CHECK(ab.t.size() == 2);
  CHECK(ab.t.at(1 + 0 * 4) == Cyclo(1));
  CHECK(ab.t.at(3) == Cyclo(2));
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(a + ab, std::invalid_argument);
  CMat m{{Cyclo(2), Cyclo(1)}, {Cyclo(1), Cyclo(1)}};
  auto inv = invert(m);
  CHECK(inv[0][0] == Cyclo(1));
  CHECK(inv[0][1] == Cyclo(-1));
  CHECK(inv[1][1] == Cyclo(2));
  CHECK_THROWS_AS(invert(CMat{{Cyclo(1), Cyclo(1)}, {Cyclo(2), Cyclo(2)}}), std::domain_error);
}

TEST_CASE("presets pass the axiom suite") {
  for (auto &name : {"h4", "h2", "hq8:+", "hq8:-", "nichols:1", "nichols:2", "nichols:3"}) {
    auto r = check_axioms(preset(name));
    INFO(name << "\n" << r.str());
    CHECK(r.all_pass());
  }
  for (auto &g : {"abelian:2", "abelian:4", "abelian:2,2"}) {
    auto G = std::get<AbelianGroupSpec>(parse_group(g));
    for (auto &a : all_data(G)) {
      auto r = check_axioms(kgw(G, a));
      INFO(g << " " << a.to_string(G.rank()) << "\n" << r.str());
      CHECK(r.all_pass());
    }
  }
  DdnSpec D(2);
  for (i64 p = 0; p < 4; ++p) CHECK(check_axioms(kgw_function_basis(D.table(), omega_ddn_cochain(D, p)), 64, false).all_pass());
}

TEST_CASE("preset shapes") {
  auto H2 = h2();
  CHECK(H2.d == 2);
  Elem pm = Cyclo(Rat(1, 2)) * (basis_elem(0) - basis_elem(1));
  CHECK(H2.Phi == one(H2, 3) - Cyclo(2) * tensor(tensor(pm, pm, 2), pm, 2));
  CHECK(structure_difference(nichols(1), h4()).empty());
  CHECK(nichols(3).d == 16);

  auto Q = hq8(1);
  CHECK(Q.d == 8);
  Cyclo i = Cyclo::root(4, 1);
  Elem pp = Cyclo(Rat(1, 2)) * (basis_elem(0) + basis_elem(1)), pmq = Cyclo(Rat(1, 2)) * (basis_elem(0) - basis_elem(1));
  Elem x = basis_elem(2), g = basis_elem(1);
  Elem expect = tensor(x, pp + i * pmq, 8) + tensor(Q.unit, mul(Q, pp, x), 8) + tensor(g, mul(Q, pmq, x), 8);
  CHECK(Q.comult[2] == expect);
  CHECK(mul(Q, mul(Q, x, x), mul(Q, x, x)).is_zero());
  CHECK(mul(Q, x, g) == Cyclo(-1) * mul(Q, g, x));
  CHECK_FALSE(hq8(1).comult[2] == hq8(-1).comult[2]);

  // k[C2] in the group basis from the function basis
  auto C = kgw(AbelianGroupSpec({2}), parse_datum(AbelianGroupSpec({2}), "c=1"));
  CHECK(structure_difference(C, H2).empty());

  CHECK_THROWS_AS(hq8(0), std::invalid_argument);
  CHECK_THROWS_AS(nichols(0), std::invalid_argument);
  CHECK_THROWS_AS(preset("h5"), std::invalid_argument);
  CHECK_THROWS_AS(preset("nichols:x"), std::invalid_argument);
  CHECK_THROWS_AS(preset("kGw:abelian:2,2:c=2,0"), std::invalid_argument);
  CHECK(preset("kGw:abelian:2,2:c=0,1;c12=1").d == 4);
  CHECK(preset("kGw:ddn:2:p=1").d == 8);
  CHECK(preset("hq16:+").d == 16);
}

TEST_CASE("a broken reassociator is detected") {
  auto Q = h4();
  Elem pm = Cyclo(Rat(1, 2)) * (basis_elem(0) - basis_elem(1));
  Q.Phi = one(Q, 3) - Cyclo(2) * tensor(tensor(pm, pm, 4), pm, 4);
  Q.PhiInv = Q.Phi;
  auto r = check_axioms(Q);
  auto qc = r.find("quasi_coassociativity");
  REQUIRE(qc);
  CHECK_FALSE(qc->pass);
  CHECK(qc->witness == "2");
  CHECK_THROWS_AS(check_axioms(nichols(3), 8), CapExceeded);
}

TEST_CASE("p_R and q_R") {
  auto C = group_algebra_c2();
  auto pq = pq_elements(C);
  CHECK(pq.pR == one(C, 2));
  CHECK(pq.qR == one(C, 2));
  CHECK(check_pq(h4()).all_pass());
  AbelianGroupSpec K({2, 2});
  for (auto &a : all_data(K)) CHECK(check_pq(kgw(K, a)).all_pass());
  CHECK(check_pq(hq8(-1)).all_pass());
}

TEST_CASE("twists of k[C2]") {
  auto C = group_algebra_c2();
  Elem pm = Cyclo(Rat(1, 2)) * (basis_elem(0) - basis_elem(1));
  Elem P = tensor(pm, pm, 2);
  for (long k : {-1L, 2L, 3L, 5L}) {
    TwistData T{one(C, 2) - Cyclo(k) * P, one(C, 2) + Cyclo(Rat(k) / Rat(1 - k)) * P};
    auto R = twist(C, T);
    CHECK(R.Phi == one(C, 3));
    CHECK(check_axioms(R).all_pass());
  }
  TwistData id{one(C, 2), one(C, 2)};
  CHECK(structure_difference(twist(h2(), id), h2()).empty());
  TwistData singular{one(C, 2) - P, one(C, 2)};
  CHECK_THROWS_AS(twist(C, singular), std::invalid_argument);
  TwistData unnormalized{Cyclo(2) * one(C, 2), Cyclo(Rat(1, 2)) * one(C, 2)};
  CHECK_THROWS_AS(twist(C, unnormalized), std::invalid_argument);
}

TEST_CASE("H4 twists") {
  auto H = h4();
  for (long tau : {-1L, 0L, 1L, 2L}) {
    H4TwistScalars s;
    s.nu = Cyclo(tau), s.tau = Cyclo(tau), s.v = Cyclo(-tau), s.w = Cyclo(-tau);
    CHECK(h4_twist_element(s) == one(H, 2) - Cyclo(tau) * t2(3, 2, 4));
    auto R = twist(H, h4_twist(s));
    CHECK(R.comult == H.comult);
    CHECK(check_axioms(R).all_pass());
  }
  H4TwistScalars near;
  auto T = h4_twist(near);
  CHECK(mul(H, T.F, T.FInv) == one(H, 2));

  H4TwistScalars ab;
  ab.a = Cyclo(2), ab.b = Cyclo(3);
  CHECK(h4_twist_inverse_scalars(ab).b == Cyclo(Rat(-3, 2)));

  H4TwistScalars zero;
  zero.a = Cyclo(0);
  CHECK_THROWS_AS(h4_twist(zero), std::domain_error);

  std::mt19937 rng(2026);
  for (int it = 0; it < 20; ++it) {
    auto s = random_scalars(rng);
    auto b = h4_twist_inverse_scalars(s);
    CHECK(b.a == s.a.inverse());
    CHECK(b.tau == s.c * s.mu / s.a - s.tau);
    CHECK(b.v == s.u * s.b / s.a - s.v);
    auto T = h4_twist(s);
    CHECK(mul(H, T.FInv, T.F) == one(H, 2));
    if (it < 5) {
      auto R = twist(H, T);
      CHECK(check_axioms(R).all_pass());
      CHECK(structure_difference(twist(R, TwistData{T.FInv, T.F}), H).empty());
    }
  }
}

TEST_CASE("H4 twist equivalence") {
  std::mt19937 rng(17);
  auto s = random_scalars(rng);
  auto w = h4_twist_equiv(s, s);
  REQUIRE(w);
  CHECK(w->omega_sq == Cyclo(1));
  CHECK(w->kappa == Cyclo(0));

  H4TwistScalars a1, a2;
  a2.a = Cyclo(2);
  CHECK_FALSE(h4_twist_equiv(a1, a2));

  s.b = Cyclo(1);
  auto planted = h4_twist_equiv(s, transport(s, Cyclo(2), Cyclo(1)));
  REQUIRE(planted);
  REQUIRE(planted->omega);
  CHECK(*planted->omega == Cyclo(2));
  CHECK(planted->kappa == Cyclo(1));

  for (int it = 0; it < 20; ++it) {
    auto f = random_scalars(rng);
    Cyclo om = small_rational(rng, true), k = small_rational(rng);
    auto g = transport(f, om, k);
    auto fw = h4_twist_equiv(f, g);
    REQUIRE(fw);
    CHECK(fw->omega_sq == om * om);
    CHECK(fw->kappa == k);
    auto bw = h4_twist_equiv(g, f);
    REQUIRE(bw);
    CHECK(bw->omega_sq == (om * om).inverse());
    CHECK(bw->kappa == -k / (om * om));
    auto other = f;
    other.a = f.a + Cyclo(1);
    if (!other.a.is_zero()) CHECK_FALSE(h4_twist_equiv(f, other));
  }
  // no omega can fix the odd part
  H4TwistScalars p, q;
  p.b = Cyclo(1);
  q.b = Cyclo(1), q.c = Cyclo(1);
  CHECK_FALSE(h4_twist_equiv(p, q));
}

TEST_CASE("pair checks") {
  SigmaV g{{Cyclo(1), Cyclo(-1)}, basis_elem(1)};
  auto bad = check_pair(h2(), g);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failure == "Delta(v) identity");
  CHECK(check_pair(group_algebra_c2(), g).ok);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto N = nichols(n);
    CHECK(check_pair(N, nichols_pair(N)).ok);
  }
  // k[C2] (x) H_q(8): index i1 + 2 i2
  auto T = tensor_product(group_algebra_c2(), hq8(1));
  SigmaV s;
  for (std::size_t i = 0; i < T.d; ++i) {
    std::size_t c = i % 2, h = i / 2;
    s.sigma.push_back(h > 1 ? Cyclo(0) : Cyclo(c ? -1 : 1));
  }
  s.v = basis_elem(1);
  CHECK(check_pair(T, s).ok);
  SigmaV wrong = s;
  wrong.v = basis_elem(2);
  CHECK_FALSE(check_pair(T, wrong).ok);
  SigmaV notalg{{Cyclo(1), Cyclo(2)}, basis_elem(1)};
  CHECK_THROWS_AS(check_pair(group_algebra_c2(), notalg), std::invalid_argument);
}

TEST_CASE("pairs from the classification") {
  AbelianGroupSpec K({2, 2});
  auto a0 = CocycleDatum::zero(K);
  PairSolution p{{0, 1}, {0, 1}, integrality_E(K, a0, {0, 1}, {0, 1}).E_times_N};
  CHECK(from_classification(K, a0, p).v == basis_elem(1));

  auto a1 = parse_datum(K, "c=0,0;c12=1");
  PairSolution q{{0, 1}, {0, 1}, integrality_E(K, a1, {0, 1}, {0, 1}).E_times_N};
  Cyclo i = Cyclo::root(4, 1);
  Elem gplus = Cyclo(Rat(1, 2)) * (Cyclo(1) + i) * basis_elem(1) + Cyclo(Rat(1, 2)) * (Cyclo(1) - i) * basis_elem(3);
  CHECK(from_classification(K, a1, q).v == gplus);

  for (auto &a : all_data(K))
    for (auto &pr : enumerate_pairs(K, a)) CHECK(check_pair(kgw(K, a), from_classification(K, a, pr)).ok);
}

TEST_CASE("biproducts") {
  SigmaV g{{Cyclo(1), Cyclo(-1)}, basis_elem(1)};
  auto B = biproduct_theta(group_algebra_c2(), g);
  CHECK(structure_difference(B, h4()).empty());
  for (std::size_t n = 1; n <= 2; ++n) {
    auto N = nichols(n);
    auto Bn = biproduct_theta(N, nichols_pair(N));
    CHECK(Bn.d == 2 * N.d);
    CHECK(structure_difference(Bn, nichols(n + 1)).empty());
  }
  CHECK_THROWS_AS(biproduct_theta(h2(), g), std::invalid_argument);

  // H sits inside H(theta) as a quasi-Hopf subalgebra
  AbelianGroupSpec K({2, 2});
  auto a = parse_datum(K, "c=0,1;c12=1");
  auto Q = kgw(K, a);
  auto pr = enumerate_pairs(K, a).front();
  auto Bq = biproduct_theta(Q, from_classification(K, a, pr));
  std::size_t d = Q.d, D = Bq.d;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) CHECK(Bq.m(i, j) == rebase(Q.m(i, j), d, D));
    CHECK(Bq.comult[i] == rebase(Q.comult[i], d, D));
    CHECK(Bq.S[i] == rebase(Q.S[i], d, D));
    CHECK(Bq.counit[i] == Q.counit[i]);
  }
  CHECK(Bq.Phi == rebase(Q.Phi, d, D));
  CHECK(Bq.alpha == rebase(Q.alpha, d, D));
  CHECK(check_axioms(Bq).all_pass());
}

TEST_CASE("adjoining a central grouplike") {
  auto H = biproduct_g(h2());
  CHECK(H.d == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(H.m(i, j) == H.m(j, i));
  CHECK(check_axioms(H).all_pass());
  auto Q = hq8(1);
  auto H16 = biproduct_g(Q);
  CHECK(H16.d == 16);
  for (std::size_t i = 0; i < Q.d; ++i) CHECK(H16.counit[i] == Q.counit[i]);
  CHECK(check_axioms(tensor_product(h4(), group_algebra_c2())).all_pass());
}

TEST_CASE("change of basis") {
  auto Q = hq8(-1);
  CMat I(Q.d, std::vector<Cyclo>(Q.d, Cyclo(0)));
  for (std::size_t i = 0; i < Q.d; ++i) I[i][i] = Cyclo(1);
  CHECK(structure_difference(change_basis(Q, I, I), Q).empty());
  // a non-trivial basis change keeps the axioms
  CMat P = I;
  P[1][2] = Cyclo(3);
  auto R = change_basis(Q, P, invert(P));
  CHECK(check_axioms(R).all_pass());
  CHECK_FALSE(structure_difference(R, Q).empty());
}
