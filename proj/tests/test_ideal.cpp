#include "doctest.h"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "chainring/errors.hpp"
#include "chainring/ideal.hpp"
#include "chainring/quotient.hpp"

using namespace chainring;

namespace {

// x^3 - (1+u) over R^3 for F_3: phi = x-1, phi^3 = u (a chain ring).
RingCtxPtr ring_chain() {
  auto F = FieldContext::make(3, 1);
  ChainRing R(F, 3);
  return RingContext::constacyclic(F, 1, 3, 1, R.make({1, 1, 0}));
}

// x^3 - (1+u^2) over R^3 for F_3: phi = x-1, phi^3 = u^2 (not a chain).
RingCtxPtr ring_k2() {
  auto F = FieldContext::make(3, 1);
  ChainRing R(F, 3);
  return RingContext::constacyclic(F, 1, 3, 1, R.make({1, 0, 1}));
}

// x^4 - (1+u^2) over R^3 for F_2: phi = x-1, p^s = 4, phi^4 = u^2.
RingCtxPtr ring_k2_p2() {
  auto F = FieldContext::make(2, 1);
  ChainRing R(F, 3);
  return RingContext::constacyclic(F, 2, 3, 1, R.make({1, 0, 1}));
}

// x^3 - (1+2u^2) over R^3 for F_3: phi = x-1, phi^3 = 2u^2. The wrap
// cofactor is 2 here, not 1, which exercises the w-weighted beta terms.
RingCtxPtr ring_k2_w2() {
  auto F = FieldContext::make(3, 1);
  ChainRing R(F, 3);
  return RingContext::constacyclic(F, 1, 3, 1, R.make({1, 0, 2}));
}

// h-cofactor values for closed-form sweeps: zero, every scalar unit, and
// one unit with a nonzero phi-multiple mixed in.
std::vector<FieldPoly> cofactor_values(const RingContext& Q) {
  const FieldContext& F = Q.field();
  std::vector<FieldPoly> hs{F.pzero()};
  for (Fq c = 1; c < Q.q(); ++c) hs.push_back(F.pconst(c));
  hs.push_back(F.padd(F.pconst(1), Q.phi()));
  return hs;
}

// Deterministic element stream for property loops.
struct ElemStream {
  const RingContext& Q;
  std::uint64_t state = 0x243f6a8885a308d3ULL;
  explicit ElemStream(const RingContext& q) : Q(q) {}
  RingContext::Vec next() {
    RingContext::Vec v(Q.dim());
    for (int i = 0; i < Q.dim(); ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      v[i] = static_cast<Fq>((state >> 33) % Q.q());
    }
    return v;
  }
};

RingContext::Vec u2phi(const RingContext& Q, int e) { return Q.monomial(2, e, 0).coords; }

}  // namespace

TEST_CASE("row spaces keep a reduced echelon basis") {
  auto F = FieldContext::make(3, 1);
  RowSpace S(F, 4);
  CHECK(S.rank() == 0);
  CHECK(S.key().empty());
  CHECK(S.contains({0, 0, 0, 0}));

  REQUIRE(S.insert({0, 2, 1, 0}).has_value());
  // Normalization scales the pivot to 1.
  CHECK(S.rows()[0] == std::vector<Fq>{0, 1, 2, 0});
  REQUIRE(S.insert({1, 1, 1, 1}).has_value());
  CHECK(S.rank() == 2);
  CHECK(S.pivots() == std::vector<int>{0, 1});
  // Pivot columns of other rows are cleared.
  CHECK(S.rows()[0][1] == 0);

  CHECK(!S.insert({1, 1, 1, 1}).has_value());
  CHECK(S.contains({2, 2, 2, 2}));
  CHECK(!S.contains({0, 0, 0, 1}));
  CHECK_THROWS_AS((void)S.insert({1, 0, 0}), InvalidInput);

  // The key depends only on the span, not the insertion order.
  RowSpace S2(F, 4);
  (void)S2.insert({1, 1, 1, 1});
  (void)S2.insert({2, 1, 0, 2});  // = 2*(1,1,1,1) + (0,2,1,0)
  CHECK(S.key() == S2.key());
}

TEST_CASE("spans close under the module actions") {
  auto Q = ring_chain();
  CHECK(Ideal::span(Q, {Q->monomial(2, 0, 0).coords}).dim() == 3);
  CHECK(Ideal::zero_ideal(Q).dim() == 0);
  CHECK(Ideal::unit_ideal(Q).dim() == Q->dim());

  auto K = ring_k2();
  ElemStream es(*K);
  for (int round = 0; round < 24; ++round) {
    std::vector<RingContext::Vec> gens;
    for (int g = 0; g <= round % 3; ++g) gens.push_back(es.next());
    Ideal I = Ideal::span(K, gens);
    for (const auto& g : gens) CHECK(I.contains(g));
    RingContext::Vec prod(K->dim());
    for (const auto& row : I.basis().rows()) {
      K->vmul_x_into(row, prod);
      CHECK(I.contains(prod));
      K->vmul_u_into(row, prod);
      CHECK(I.contains(prod));
      // Closure under arbitrary ring multiples follows; spot-check one.
      CHECK(I.contains(K->vmul(row, es.next())));
    }
  }
}

TEST_CASE("ideal sums and comparisons") {
  auto K = ring_k2();
  ElemStream es(*K);
  for (int round = 0; round < 16; ++round) {
    Ideal A = Ideal::span(K, {es.next()});
    Ideal B = Ideal::span(K, {es.next()});
    Ideal S = ideal_sum(A, B);
    CHECK(S.contains_ideal(A));
    CHECK(S.contains_ideal(B));
    std::vector<RingContext::Vec> both = {A.generators()[0], B.generators()[0]};
    CHECK(S == Ideal::span(K, both));
    CHECK((S == A) == (A.contains_ideal(B)));
  }
  Ideal Z = Ideal::zero_ideal(K);
  CHECK(ideal_sum(Z, Z) == Z);

  auto other = ring_k2();
  CHECK_THROWS_AS((void)(Ideal::zero_ideal(K) == Ideal::zero_ideal(other)), InvalidInput);
  CHECK_THROWS_AS((void)Ideal::span(K, {{0, 0}}), InvalidInput);
}

TEST_CASE("torsional degrees read off the echelon pivots") {
  auto K = ring_k2();
  Ideal Z = Ideal::zero_ideal(K);
  CHECK(Z.torsion_profile() == std::vector<int>{3, 3, 3});
  CHECK(Z.cardinality_exponent() == 0);
  Ideal One = Ideal::unit_ideal(K);
  CHECK(One.torsion_profile() == std::vector<int>{0, 0, 0});
  CHECK(One.cardinality_exponent() == 9);

  for (int a = 0; a < 3; ++a) {
    Ideal I = Ideal::span(K, {u2phi(*K, a)});
    CHECK(I.torsion_profile() == std::vector<int>{3, 3, a});
    CHECK(I.cardinality_exponent() == 3 - a);
  }

  // Degree != 1 base polynomial: x^2 + x + 1 over F_2. phi^2 = u*x^2 + u^2
  // puts a valuation-0 element at the first u-level, so T1 drops to 0.
  auto F2 = FieldContext::make(2, 1);
  ChainRing R2(F2, 2);
  auto T = RingContext::quadratic_trace(F2, 1, 2, R2.make({1, 1}));
  Ideal P = Ideal::span(T, {T->phi_elem().coords});
  CHECK(P.torsion_degree(0) == 1);
  CHECK(P.torsion_degree(1) == 0);
  CHECK(P.cardinality_exponent() == 6);

  // Reducible base polynomial: torsion is undefined.
  auto F3 = FieldContext::make(3, 1);
  ChainRing R3(F3, 3);
  auto W = RingContext::constacyclic(F3, 1, 3, 2, R3.make({1, 0, 0}));
  CHECK(!W->phi_irreducible());
  CHECK_THROWS_AS((void)Ideal::span(W, {W->u_elem().coords}).torsion_degree(0),
                  UnsupportedParameter);
}

TEST_CASE("pivot torsion agrees with honest membership") {
  auto K = ring_k2();
  ElemStream es(*K);
  for (int round = 0; round < 40; ++round) {
    // Shift a random element into varied u-levels and phi-depths so the
    // sweep sees more than unit ideals.
    RingContext::Vec g = K->vmul(es.next(), K->monomial(round % 3, (round / 3) % 3, 0).coords);
    Ideal I = Ideal::span(K, {g});
    for (int level = 1; level < K->t(); ++level)
      CHECK(I.torsion_degree(level) == I.smallest_u_level_exponent(level));
    // Level 0 by exhaustive scan when the ideal is small enough.
    auto n = I.element_count();
    if (n && *n <= 6561) {
      int best = K->pss();
      for (std::uint64_t idx = 0; idx < *n; ++idx) {
        int v = K->level_phi_valuation(I.element_at(idx), 0);
        if (v < best) best = v;
      }
      CHECK(best == I.torsion_degree(0));
    }
  }
}

TEST_CASE("smallest u-level exponents, worked example") {
  auto K = ring_k2();
  // g = u phi^2 + u^2: pure u^2-level members first appear at exponent 1.
  RingContext::Vec g = K->vadd(K->monomial(1, 2, 0).coords, K->monomial(2, 0, 0).coords);
  Ideal I = Ideal::span(K, {g});
  CHECK(I.smallest_u_level_exponent(0) == K->pss());
  CHECK(I.smallest_u_level_exponent(1) == 2);
  CHECK(I.smallest_u_level_exponent(2) == 1);
  CHECK_THROWS_AS((void)I.smallest_u_level_exponent(-1), InvalidInput);
  CHECK_THROWS_AS((void)I.smallest_u_level_exponent(3), InvalidInput);
  // Same value from the closed form for a one-generator level-1 ideal.
  CHECK(closed_form_L_type3(*K, 2, 0, K->field().pconst(1)) == 1);
}

TEST_CASE("level-1 closed form") {
  auto K = ring_k2();
  const FieldContext& F = K->field();
  FieldPoly one = F.pconst(1);
  FieldPoly zero = F.pzero();

  CHECK(closed_form_L_type3(*K, 2, 0, zero) == 2);
  CHECK(closed_form_L_type3(*K, 2, 0, one) == 1);
  CHECK(closed_form_L_type3(*K, 2, 1, one) == 2);
  CHECK(closed_form_L_type3(*K, 1, 0, F.pconst(2)) == 1);

  // Every admissible (a, t, h) agrees with the span oracle, for both wrap
  // cofactors.
  for (const auto& Rp : {ring_k2(), ring_k2_w2()})
    for (int a = 1; a <= Rp->pss() - 1; ++a)
      for (int t = 0; t < a; ++t)
        for (const FieldPoly& h : cofactor_values(*Rp)) {
          RingContext::Vec gen = Rp->monomial(1, a, 0).coords;
          if (!h.is_zero())
            gen = Rp->vadd(gen, Rp->vmul(Rp->monomial(2, t, 0).coords,
                                         Rp->from_field_poly(h).coords));
          Ideal I = Ideal::span(Rp, {gen});
          CHECK(closed_form_L_type3(*Rp, a, t, h) == I.smallest_u_level_exponent(2));
        }

  CHECK_THROWS_AS((void)closed_form_L_type3(*K, 0, 0, one), InvalidInput);
  CHECK_THROWS_AS((void)closed_form_L_type3(*K, 2, 2, one), InvalidInput);
  CHECK_THROWS_AS((void)closed_form_L_type3(*K, 2, 0, K->phi()), InvalidInput);
  CHECK_THROWS_AS((void)closed_form_L_type3(*ring_chain(), 2, 0, one), UnsupportedParameter);
}

TEST_CASE("level-0 closed form") {
  auto K = ring_k2();
  const FieldContext& F = K->field();
  FieldPoly one = F.pconst(1);
  FieldPoly zero = F.pzero();

  CHECK(closed_form_L_type5(*K, 1, 0, 0, one, zero) == 0);   // a < p^s - a + t0
  CHECK(closed_form_L_type5(*K, 2, 0, 0, zero, zero) == 0);  // h0 = 0
  CHECK(closed_form_L_type5(*K, 2, 0, 0, one, zero) == 0);   // beta = 0

  // p^s = 4 leaves room for a nonzero answer. At h0 = 1, t0 = 1, a = 3 the
  // beta polynomial vanishes outright, and the annihilator slack decides:
  // phi^3 * (phi^3 + u phi) = phi^6 + u phi^4 = u^2 phi^2, so L = a - t0 = 2.
  auto K4 = ring_k2_p2();
  const FieldContext& F2 = K4->field();
  FieldPoly one2 = F2.pconst(1);
  FieldPoly zero2 = F2.pzero();
  CHECK(closed_form_L_type5(*K4, 3, 1, 0, one2, zero2) == 2);
  CHECK(closed_form_L_type5(*K4, 3, 1, 0, one2, one2) == 2);

  // Span oracle across the admissible range: p^s = 3 with both wrap
  // cofactors, and p^s = 4.
  for (const auto& Rp : {K, ring_k2_w2(), K4}) {
    std::vector<FieldPoly> hs = cofactor_values(*Rp);
    for (int a = 1; a <= Rp->pss() - 1; ++a)
      for (int t0 = 0; t0 <= Rp->pss() - 1; ++t0)
        for (int t1 = 0; t1 <= t0; ++t1)
          for (const FieldPoly& h0 : hs)
            for (const FieldPoly& h1 : hs) {
              RingContext::Vec gen = Rp->monomial(0, a, 0).coords;
              if (!h0.is_zero())
                gen = Rp->vadd(gen, Rp->vmul(Rp->monomial(1, t0, 0).coords,
                                             Rp->from_field_poly(h0).coords));
              if (!h1.is_zero())
                gen = Rp->vadd(gen, Rp->vmul(Rp->monomial(2, t1, 0).coords,
                                             Rp->from_field_poly(h1).coords));
              Ideal I = Ideal::span(Rp, {gen});
              CHECK(closed_form_L_type5(*Rp, a, t0, t1, h0, h1) ==
                    I.smallest_u_level_exponent(2));
            }
  }

  CHECK_THROWS_AS((void)closed_form_L_type5(*K, 0, 0, 0, one, zero), InvalidInput);
  CHECK_THROWS_AS((void)closed_form_L_type5(*K, 2, 0, 1, one, zero), InvalidInput);
  CHECK_THROWS_AS((void)closed_form_L_type5(*K, 2, 0, 0, K->phi(), zero), InvalidInput);
}

TEST_CASE("two-generator closed form") {
  auto K = ring_k2();
  const FieldContext& F = K->field();
  FieldPoly one = F.pconst(1);
  FieldPoly zero = F.pzero();

  auto r = closed_form_L_type7(*K, 2, 1, 0, 0, 0, one, zero, zero);
  CHECK(r.L == 0);
  CHECK(!r.outside_stated_cases);

  // b < p^s - a + t0 <= a has no stated case; the result is pinned to 0.
  auto flagged = closed_form_L_type7(*K, 2, 1, 1, 0, 0, one, zero, zero);
  CHECK(flagged.outside_stated_cases);
  CHECK(flagged.L == 0);

  // Span oracle over the admissible range, flagged region included; p^s = 3
  // with both wrap cofactors, and p^s = 4.
  for (const auto& Rp : {K, ring_k2_w2(), ring_k2_p2()}) {
    std::vector<FieldPoly> hs = cofactor_values(*Rp);
    for (int a = 2; a <= Rp->pss() - 1; ++a)
      for (int b = 1; b < a; ++b)
        for (int t0 = 0; t0 <= Rp->pss() - 1; ++t0)
          for (int t1 = 0; t1 <= t0; ++t1)
            for (int t2 = 0; t2 < b; ++t2)
              for (const FieldPoly& h0 : hs)
                for (const FieldPoly& h1 : hs)
                  for (const FieldPoly& h2 : hs) {
                    RingContext::Vec g0 = Rp->monomial(0, a, 0).coords;
                    if (!h0.is_zero())
                      g0 = Rp->vadd(g0, Rp->vmul(Rp->monomial(1, t0, 0).coords,
                                                 Rp->from_field_poly(h0).coords));
                    if (!h1.is_zero())
                      g0 = Rp->vadd(g0, Rp->vmul(Rp->monomial(2, t1, 0).coords,
                                                 Rp->from_field_poly(h1).coords));
                    RingContext::Vec g1 = Rp->monomial(1, b, 0).coords;
                    if (!h2.is_zero())
                      g1 = Rp->vadd(g1, Rp->vmul(Rp->monomial(2, t2, 0).coords,
                                                 Rp->from_field_poly(h2).coords));
                    Ideal I = Ideal::span(Rp, {g0, g1});
                    auto got = closed_form_L_type7(*Rp, a, b, t0, t1, t2, h0, h1, h2);
                    CHECK(got.L == I.smallest_u_level_exponent(2));
                    if (got.outside_stated_cases) CHECK(got.L == 0);
                  }
  }

  CHECK_THROWS_AS((void)closed_form_L_type7(*K, 1, 1, 0, 0, 0, one, zero, zero), InvalidInput);
  CHECK_THROWS_AS((void)closed_form_L_type7(*K, 2, 1, 0, 0, 1, one, zero, zero), InvalidInput);
}

TEST_CASE("classification of worked instances") {
  auto K = ring_k2();
  const FieldContext& F = K->field();

  auto tinfo = [&](std::vector<RingContext::Vec> gens) {
    return classify_t3(Ideal::span(K, std::move(gens)));
  };

  CHECK(classify_t3(Ideal::zero_ideal(K)).tag == 1);
  CHECK(classify_t3(Ideal::unit_ideal(K)).tag == 1);

  auto i2 = tinfo({u2phi(*K, 0)});
  CHECK(i2.tag == 2);
  CHECK(i2.a == 0);
  auto i2b = tinfo({u2phi(*K, 1)});
  CHECK(i2b.tag == 2);
  CHECK(i2b.a == 1);

  auto i3 = tinfo({K->monomial(1, 2, 0).coords});
  CHECK(i3.tag == 3);
  CHECK(i3.a == 2);
  CHECK(i3.L == 2);
  CHECK(!i3.t2.has_value());
  CHECK(i3.h2.is_zero());

  auto i3b = tinfo({K->vadd(K->monomial(1, 2, 0).coords, u2phi(*K, 0))});
  CHECK(i3b.tag == 3);
  CHECK(i3b.a == 2);
  CHECK(i3b.L == 1);
  CHECK(i3b.t2 == 0);
  CHECK(i3b.h2 == F.pconst(1));
  CHECK(i3b.constraint_notes.empty());

  auto i4 = tinfo({K->monomial(1, 2, 0).coords, u2phi(*K, 0)});
  CHECK(i4.tag == 4);
  CHECK(i4.a == 2);
  CHECK(i4.b == 0);
  CHECK(i4.L == 2);

  auto i5 = tinfo({K->vadd(K->monomial(0, 2, 0).coords, K->monomial(1, 0, 0).coords)});
  CHECK(i5.tag == 5);
  CHECK(i5.a == 2);
  CHECK(i5.L == 1);
  CHECK(i5.M == 0);
  CHECK(i5.t0 == 0);
  CHECK(i5.h0 == F.pconst(1));
  CHECK(!i5.t1.has_value());
  CHECK(i5.constraint_notes.empty());

  // <phi^2, u^2> collapses: phi^3 = u^2 already lies in <phi^2>.
  auto i5b = tinfo({K->monomial(0, 2, 0).coords, u2phi(*K, 0)});
  CHECK(i5b.tag == 5);
  CHECK(i5b.a == 2);

  auto i7 = tinfo({K->monomial(0, 2, 0).coords, K->monomial(1, 1, 0).coords});
  CHECK(i7.tag == 7);
  CHECK(i7.a == 2);
  CHECK(i7.b == 1);
  CHECK(i7.M == 0);
  CHECK(i7.L == 2);

  CHECK_THROWS_AS((void)classify_t3(Ideal::zero_ideal(ring_chain())), UnsupportedParameter);
}

TEST_CASE("classification round-trips over random ideals") {
  auto K = ring_k2();
  ElemStream es(*K);
  std::set<int> seen;
  for (int round = 0; round < 120; ++round) {
    std::vector<RingContext::Vec> gens;
    int ngens = 1 + round % 2;
    for (int g = 0; g < ngens; ++g) {
      int k = (round + 2 * g) % 3;
      int j = (round / 3 + g) % 3;
      gens.push_back(K->vmul(es.next(), K->monomial(k, j, 0).coords));
    }
    Ideal I = Ideal::span(K, gens);
    IdealTypeInfo info = classify_t3(I);
    seen.insert(info.tag);
    REQUIRE(info.tag >= 1);
    REQUIRE(info.tag <= 8);
    if (info.tag == 1) {
      CHECK((I.dim() == 0 || I.dim() == K->dim()));
      continue;
    }
    // The reconstructed generators span the ideal exactly.
    CHECK(Ideal::span(K, info.generators) == I);
    // Emitted parameters match the torsion profile per type.
    auto T = I.torsion_profile();
    switch (info.tag) {
      case 2: CHECK(info.a == T[2]); break;
      case 3: CHECK(info.a == T[1]); CHECK(info.L == T[2]); break;
      case 4: CHECK(info.a == T[1]); CHECK(info.b == T[2]); break;
      case 5: CHECK(info.a == T[0]); CHECK(info.L == T[1]); CHECK(info.M == T[2]); break;
      case 6: CHECK(info.a == T[0]); CHECK(info.M == T[1]); CHECK(info.b == T[2]); break;
      case 7: CHECK(info.a == T[0]); CHECK(info.b == T[1]); CHECK(info.M == T[2]); break;
      case 8: CHECK(info.a == T[0]); CHECK(info.b == T[1]); CHECK(info.c == T[2]); break;
      default: break;
    }
  }
  // The biased stream must exercise a real spread of types.
  CHECK(seen.size() >= 4);
}

TEST_CASE("chain certificates") {
  auto C = ring_chain();
  ChainCertificate cert = chain_check(C);
  CHECK(cert.is_chain);
  REQUIRE(cert.chain.size() == 10);
  for (int i = 0; i <= 9; ++i) {
    CHECK(cert.card_exponents[i] == 9 - i);
    CHECK(cert.chain[i].dim() == 9 - i);
  }
  CHECK(!cert.witness.has_value());

  // Quadratic-trace chain: phi has degree 2, so the exponents drop by two.
  auto F2 = FieldContext::make(2, 1);
  ChainRing R2(F2, 2);
  auto T = RingContext::quadratic_trace(F2, 1, 2, R2.make({1, 1}));
  ChainCertificate tc = chain_check(T);
  CHECK(tc.is_chain);
  REQUIRE(tc.chain.size() == 5);
  for (int i = 0; i <= 4; ++i) CHECK(tc.card_exponents[i] == 2 * (4 - i));

  auto K = ring_k2();
  ChainCertificate nc = chain_check(K);
  CHECK(!nc.is_chain);
  CHECK(nc.chain.empty());
  REQUIRE(nc.witness.has_value());
  CHECK(nc.witness->dim() == 8);
  CHECK(nc.witness_verified_nonprincipal);
  CHECK(nc.principal_scan_count == 6561);

  // Scan cap too small: the witness stands but is not verified.
  ChainCertificate uc = chain_check(K, 16);
  CHECK(!uc.witness_verified_nonprincipal);
  CHECK(uc.principal_scan_count == 0);

  auto F3 = FieldContext::make(3, 1);
  ChainRing R3(F3, 3);
  auto W = RingContext::constacyclic(F3, 1, 3, 2, R3.make({1, 0, 0}));
  CHECK_THROWS_AS((void)chain_check(W), UnsupportedParameter);
  ChainRing R1(F3, 1);
  auto T1 = RingContext::constacyclic(F3, 1, 1, 1, R1.make({1}));
  CHECK_THROWS_AS((void)chain_check(T1), UnsupportedParameter);
}

TEST_CASE("principal scans") {
  auto K = ring_k2();
  RingContext::Vec g = K->vadd(K->monomial(1, 2, 0).coords, u2phi(*K, 0));
  Ideal I = Ideal::span(K, {g});
  auto v = is_principal_scan(I, 1u << 16);
  REQUIRE(v.has_value());
  CHECK(*v);

  Ideal W = ideal_sum(Ideal::span(K, {K->u_elem().coords}),
                      Ideal::span(K, {K->phi_elem().coords}));
  auto nv = is_principal_scan(W, 1u << 16);
  REQUIRE(nv.has_value());
  CHECK(!*nv);

  CHECK(!is_principal_scan(W, 1).has_value());
  auto z = is_principal_scan(Ideal::zero_ideal(K), 4);
  REQUIRE(z.has_value());
  CHECK(*z);
}
