#include "chainring/decompose.hpp"

#include <utility>

#include "chainring/errors.hpp"

namespace chainring {

namespace {

void rp_trim(const ChainRing& Rt, RtPoly& a) {
  while (!a.empty() && Rt.is_zero(a.back())) a.pop_back();
}

int rp_deg(const RtPoly& a) { return static_cast<int>(a.size()) - 1; }

RtPoly rp_mul(const ChainRing& Rt, const RtPoly& a, const RtPoly& b) {
  if (a.empty() || b.empty()) return {};
  RtPoly out(a.size() + b.size() - 1, Rt.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = Rt.add(out[i + j], Rt.mul(a[i], b[j]));
  rp_trim(Rt, out);
  return out;
}

RtPoly rp_sub(const ChainRing& Rt, const RtPoly& a, const RtPoly& b) {
  RtPoly out = a;
  if (out.size() < b.size()) out.resize(b.size(), Rt.zero());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = Rt.sub(out[j], b[j]);
  rp_trim(Rt, out);
  return out;
}

/// Remainder of a modulo a monic divisor.
RtPoly rp_rem(const ChainRing& Rt, RtPoly a, const RtPoly& d) {
  rp_trim(Rt, a);
  int dd = rp_deg(d);
  while (rp_deg(a) >= dd) {
    RtElem lead = a.back();
    int shift = rp_deg(a) - dd;
    for (int j = 0; j <= dd; ++j)
      a[shift + j] = Rt.sub(a[shift + j], Rt.mul(lead, d[j]));
    rp_trim(Rt, a);
  }
  return a;
}

/// x^{n p^s} - delta as an R^t polynomial.
RtPoly modulus_poly(const ChainRing& Rt, const RingContext& R) {
  RtPoly f(static_cast<std::size_t>(R.spec().n) * R.pss() + 1, Rt.zero());
  f.front() = Rt.neg(R.spec().constant);
  f.back() = Rt.one();
  return f;
}

/// x^{p^s} - c.
RtPoly linear_factor(const ChainRing& Rt, int pss, const RtElem& c) {
  RtPoly f(static_cast<std::size_t>(pss) + 1, Rt.zero());
  f.front() = Rt.neg(c);
  f.back() = Rt.one();
  return f;
}

FieldPoly level_field_poly(const RtPoly& a, int level) {
  FieldPoly g;
  g.c.resize(a.size(), 0);
  for (std::size_t j = 0; j < a.size(); ++j) g.c[j] = a[j].parts[level];
  while (!g.c.empty() && g.c.back() == 0) g.c.pop_back();
  return g;
}

/// R^t polynomial as an element of the quotient (reduced mod its modulus).
RingContext::Vec embed(const RingContext& Q, const RtPoly& a) {
  RingContext::Vec acc(Q.dim(), 0);
  for (int level = 0; level < Q.t(); ++level) {
    FieldPoly g = level_field_poly(a, level);
    if (!g.is_zero()) acc = Q.vadd(acc, Q.from_field_poly(g, level).coords);
  }
  return acc;
}

/// Quotient element as an R^t polynomial of degree < block.
RtPoly rtpoly_of(const RingContext& Q, const RingContext::Vec& v) {
  RingContext::Vec std_form = Q.to_std(v);
  ChainRing Rt = Q.coeff_ring();
  RtPoly out(Q.block(), Rt.zero());
  for (int k = 0; k < Q.t(); ++k)
    for (int e = 0; e < Q.block(); ++e)
      out[e].parts[k] = std_form[static_cast<std::size_t>(k) * Q.block() + e];
  rp_trim(Rt, out);
  return out;
}

/// The two nontrivial cube roots of unity, smallest field index first.
std::pair<Fq, Fq> cube_units(const FieldContext& F) {
  std::vector<Fq> found;
  for (Fq z = 2; z < F.q(); ++z)
    if (F.pow(z, 3) == 1) found.push_back(z);
  if (found.size() != 2) throw ParadoxError("expected exactly two nontrivial cube roots of unity");
  return {found[0], found[1]};
}

void build_transport(SplitPlan& plan) {
  const RingContext& R = *plan.parent;
  const FieldContext& F = R.field();
  ChainRing Rt = R.coeff_ring();

  RtPoly prod{Rt.one()};
  for (const RtPoly& f : plan.factors) prod = rp_mul(Rt, prod, f);
  if (!rp_sub(Rt, prod, modulus_poly(Rt, R)).empty())
    throw ParadoxError("factor product does not reproduce the modulus");

  RingContext::Vec one = R.one().coords;
  RingContext::Vec three = R.vadd(one, R.vadd(one, one));
  for (std::size_t i = 0; i < plan.factors.size(); ++i) {
    RtPoly cof{Rt.one()};
    for (std::size_t j = 0; j < plan.factors.size(); ++j)
      if (j != i) cof = rp_mul(Rt, cof, plan.factors[j]);
    FieldPoly cbar = level_field_poly(cof, 0);
    FieldPoly fbar = level_field_poly(plan.factors[i], 0);
    FieldContext::XGcd xg = F.pxgcd(cbar, fbar);
    if (xg.g.deg() != 0) throw ParadoxError("factors are not coprime modulo u");
    // cbar * g == 1 (mod fbar), so E starts out idempotent modulo u; the
    // cubic update squares the u-valuation of E^2 - E each round.
    FieldPoly g = F.pscale(F.inv(xg.g.c[0]), xg.sa);
    RingContext::Vec E = R.vmul(embed(R, cof), R.from_field_poly(g).coords);
    for (int round = 0;; ++round) {
      RingContext::Vec sq = R.vmul(E, E);
      if (sq == E) break;
      if (round >= 8) throw ParadoxError("idempotent lift did not converge");
      E = R.vmul(sq, R.vsub(three, R.vadd(E, E)));
    }
    plan.idempotents.push_back(R.wrap(std::move(E)));
  }

  RingContext::Vec sum(R.dim(), 0);
  for (const QuotElement& e : plan.idempotents) sum = R.vadd(sum, e.coords);
  if (sum != one) throw ParadoxError("idempotents do not sum to 1");
  for (std::size_t i = 0; i < plan.idempotents.size(); ++i)
    for (std::size_t j = i + 1; j < plan.idempotents.size(); ++j)
      if (!R.vis_zero(R.vmul(plan.idempotents[i].coords, plan.idempotents[j].coords)))
        throw ParadoxError("idempotents are not orthogonal");
}

}  // namespace

SplitPlan plan_split(const RingCtxPtr& parent) {
  if (!parent) throw InvalidInput("plan_split: missing ring");
  const RingContext& R = *parent;
  if (R.spec().kind != ModulusKind::constacyclic)
    throw UnsupportedParameter("plan_split needs a constacyclic modulus");
  const int n = R.spec().n;
  if (n != 2 && n != 3)
    throw UnsupportedParameter("plan_split handles n = 2 and n = 3 only");
  if (n == 2 && R.p() == 2) throw UnsupportedParameter("the n = 2 split needs odd p");

  ChainRing Rt = R.coeff_ring();
  const FieldContext& F = R.field();
  const RtElem& delta = R.spec().constant;

  SplitPlan plan;
  plan.parent = parent;

  if (!Rt.is_nth_power(delta, n)) {
    plan.kind = n == 2 ? SplitCase::non_square : SplitCase::non_cube;
    // A non-power residue makes the base polynomial irreducible; anything
    // else means the power test and the factorizer disagree.
    if (!R.phi_irreducible())
      throw ParadoxError("power test says irreducible but the base polynomial factors");
    return plan;
  }

  RtElem root = Rt.nth_root(delta, n);
  plan.root = root;

  if (n == 2) {
    plan.kind = SplitCase::square;
    RtElem mroot = Rt.neg(root);
    plan.factors = {linear_factor(Rt, R.pss(), root), linear_factor(Rt, R.pss(), mroot)};
    plan.components = {
        RingContext::constacyclic(R.field_ptr(), R.s(), R.t(), 1, root),
        RingContext::constacyclic(R.field_ptr(), R.s(), R.t(), 1, mroot)};
  } else if (F.q() % 3 == 1) {
    plan.kind = SplitCase::cube_all_linear;
    auto [b, c] = cube_units(F);
    plan.b = b;
    plan.c = c;
    RtElem broot = Rt.mul_scalar(b, root);
    RtElem croot = Rt.mul_scalar(c, root);
    plan.factors = {linear_factor(Rt, R.pss(), root), linear_factor(Rt, R.pss(), broot),
                    linear_factor(Rt, R.pss(), croot)};
    plan.components = {
        RingContext::constacyclic(R.field_ptr(), R.s(), R.t(), 1, root),
        RingContext::constacyclic(R.field_ptr(), R.s(), R.t(), 1, broot),
        RingContext::constacyclic(R.field_ptr(), R.s(), R.t(), 1, croot)};
  } else {
    plan.kind = SplitCase::cube_linear_quadratic;
    // x^{2 p^s} + root x^{p^s} + root^2, the cofactor of x^{p^s} - root.
    RtPoly quad(2 * static_cast<std::size_t>(R.pss()) + 1, Rt.zero());
    quad.front() = Rt.mul(root, root);
    quad[static_cast<std::size_t>(R.pss())] = root;
    quad.back() = Rt.one();
    plan.factors = {linear_factor(Rt, R.pss(), root), std::move(quad)};
    plan.components = {
        RingContext::constacyclic(R.field_ptr(), R.s(), R.t(), 1, root),
        RingContext::quadratic_trace(R.field_ptr(), R.s(), R.t(), root)};
  }

  build_transport(plan);
  return plan;
}

std::vector<QuotElement> crt_forward(const SplitPlan& plan, const QuotElement& a) {
  if (!plan.splits()) throw InvalidInput("crt_forward: the plan does not split");
  if (a.ring.get() != plan.parent.get())
    throw InvalidInput("crt_forward: element from another ring");
  ChainRing Rt = plan.parent->coeff_ring();
  RtPoly pa = rtpoly_of(*plan.parent, a.coords);
  std::vector<QuotElement> out;
  out.reserve(plan.factors.size());
  for (std::size_t i = 0; i < plan.factors.size(); ++i) {
    RtPoly rem = rp_rem(Rt, pa, plan.factors[i]);
    out.push_back(plan.components[i]->wrap(embed(*plan.components[i], rem)));
  }
  return out;
}

QuotElement crt_backward(const SplitPlan& plan, const std::vector<QuotElement>& parts) {
  if (!plan.splits()) throw InvalidInput("crt_backward: the plan does not split");
  if (parts.size() != plan.components.size())
    throw InvalidInput("crt_backward: one part per component required");
  const RingContext& R = *plan.parent;
  RingContext::Vec acc(R.dim(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].ring.get() != plan.components[i].get())
      throw InvalidInput("crt_backward: part built for a different component");
    RtPoly lifted = rtpoly_of(*plan.components[i], parts[i].coords);
    acc = R.vadd(acc, R.vmul(embed(R, lifted), plan.idempotents[i].coords));
  }
  return R.wrap(std::move(acc));
}

Ideal ideal_product(const SplitPlan& plan, const std::vector<Ideal>& parts) {
  if (!plan.splits()) throw InvalidInput("ideal_product: the plan does not split");
  if (parts.size() != plan.components.size())
    throw InvalidInput("ideal_product: one ideal per component required");
  const RingContext& R = *plan.parent;
  int expect_dim = 0;
  std::vector<RingContext::Vec> gens;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].ring().get() != plan.components[i].get())
      throw InvalidInput("ideal_product: ideal built for a different component");
    expect_dim += parts[i].dim();
    for (const auto& row : parts[i].basis().rows()) {
      RtPoly lifted = rtpoly_of(*plan.components[i], row);
      gens.push_back(R.vmul(embed(R, lifted), plan.idempotents[i].coords));
    }
  }
  Ideal out = Ideal::span(plan.parent, std::move(gens));
  if (out.dim() != expect_dim)
    throw ParadoxError("ideal_product: component dimensions do not add up");
  return out;
}

std::vector<Ideal> component_ideals(const SplitPlan& plan, const Ideal& I) {
  if (!plan.splits()) throw InvalidInput("component_ideals: the plan does not split");
  if (I.ring().get() != plan.parent.get())
    throw InvalidInput("component_ideals: ideal from another ring");
  ChainRing Rt = plan.parent->coeff_ring();
  std::vector<Ideal> out;
  out.reserve(plan.components.size());
  for (std::size_t i = 0; i < plan.components.size(); ++i) {
    std::vector<RingContext::Vec> gens;
    for (const auto& row : I.basis().rows()) {
      RtPoly rem = rp_rem(Rt, rtpoly_of(*plan.parent, row), plan.factors[i]);
      gens.push_back(embed(*plan.components[i], rem));
    }
    out.push_back(Ideal::span(plan.components[i], std::move(gens)));
  }
  return out;
}

}  // namespace chainring
