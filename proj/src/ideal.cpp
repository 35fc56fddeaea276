#include "chainring/ideal.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "chainring/errors.hpp"

namespace chainring {

// --- RowSpace --------------------------------------------------------------------

RowSpace::RowSpace(FieldCtxPtr field, int width) : field_(std::move(field)), width_(width) {
  if (!field_) throw InvalidInput("RowSpace: null field");
  if (width_ < 0) throw InvalidInput("RowSpace: negative width");
}

std::optional<std::vector<Fq>> RowSpace::insert(std::vector<Fq> v) {
  if (static_cast<int>(v.size()) != width_) throw InvalidInput("RowSpace: row width mismatch");
  const FieldContext& F = *field_;
  // Each stored row has zeros at the other rows' pivot columns, so one pass
  // in pivot order reduces v completely.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Fq c = v[pivots_[r]];
    if (c == 0) continue;
    const auto& row = rows_[r];
    for (int j = pivots_[r]; j < width_; ++j) v[j] = F.sub(v[j], F.mul(c, row[j]));
  }
  int piv = -1;
  for (int j = 0; j < width_; ++j)
    if (v[j] != 0) {
      piv = j;
      break;
    }
  if (piv < 0) return std::nullopt;
  Fq sc = F.inv(v[piv]);
  for (int j = piv; j < width_; ++j) v[j] = F.mul(sc, v[j]);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Fq c = rows_[r][piv];
    if (c == 0) continue;
    auto& row = rows_[r];
    for (int j = piv; j < width_; ++j) row[j] = F.sub(row[j], F.mul(c, v[j]));
  }
  std::size_t pos = 0;
  while (pos < rows_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, v);
  pivots_.insert(pivots_.begin() + pos, piv);
  return v;
}

bool RowSpace::contains(std::vector<Fq> v) const {
  if (static_cast<int>(v.size()) != width_) throw InvalidInput("RowSpace: row width mismatch");
  const FieldContext& F = *field_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Fq c = v[pivots_[r]];
    if (c == 0) continue;
    const auto& row = rows_[r];
    for (int j = pivots_[r]; j < width_; ++j) v[j] = F.sub(v[j], F.mul(c, row[j]));
  }
  for (Fq x : v)
    if (x != 0) return false;
  return true;
}

std::string RowSpace::key() const {
  std::string out;
  out.reserve(rows_.size() * static_cast<std::size_t>(width_) * 2);
  for (const auto& row : rows_)
    for (Fq x : row) {
      out.push_back(static_cast<char>(x & 0xff));
      out.push_back(static_cast<char>((x >> 8) & 0xff));
    }
  return out;
}

// --- Ideal -----------------------------------------------------------------------

Ideal::Ideal(RingCtxPtr ring, std::vector<RingContext::Vec> gens, RowSpace space)
    : ring_(std::move(ring)), gens_(std::move(gens)), space_(std::move(space)), key_(space_.key()) {}

Ideal Ideal::span(RingCtxPtr ring, std::vector<RingContext::Vec> gens) {
  if (!ring) throw InvalidInput("span: null ring");
  const int dim = ring->dim();
  RowSpace space(ring->field_ptr(), dim);
  // Worklist closure: every vector ever inserted gets its x- and u-multiples
  // inserted too, so the final space is closed under both actions (its rows
  // are combinations of inserted vectors).
  std::vector<RingContext::Vec> work;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != dim) throw InvalidInput("span: generator has wrong length");
    if (auto ins = space.insert(g)) work.push_back(std::move(*ins));
  }
  RingContext::Vec prod(dim);
  while (!work.empty()) {
    RingContext::Vec r = std::move(work.back());
    work.pop_back();
    ring->vmul_x_into(r, prod);
    if (auto ins = space.insert(prod)) work.push_back(std::move(*ins));
    ring->vmul_u_into(r, prod);
    if (auto ins = space.insert(prod)) work.push_back(std::move(*ins));
  }
  return Ideal(std::move(ring), std::move(gens), std::move(space));
}

Ideal Ideal::span_elems(const std::vector<QuotElement>& gens) {
  if (gens.empty()) throw InvalidInput("span_elems: need at least one generator");
  std::vector<RingContext::Vec> vs;
  vs.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.ring != gens.front().ring) throw InvalidInput("span_elems: mixed rings");
    vs.push_back(g.coords);
  }
  return span(gens.front().ring, std::move(vs));
}

Ideal Ideal::zero_ideal(RingCtxPtr ring) { return span(std::move(ring), {}); }

Ideal Ideal::unit_ideal(RingCtxPtr ring) {
  RingContext::Vec one = ring->one().coords;
  return span(std::move(ring), {std::move(one)});
}

bool Ideal::contains_ideal(const Ideal& other) const {
  if (ring_.get() != other.ring_.get()) throw InvalidInput("ideal comparison across rings");
  for (const auto& row : other.space_.rows())
    if (!space_.contains(row)) return false;
  return true;
}

bool Ideal::operator==(const Ideal& o) const {
  if (ring_.get() != o.ring_.get()) throw InvalidInput("ideal comparison across rings");
  return key_ == o.key_;
}

long long Ideal::cardinality_exponent() const {
  long long e = static_cast<long long>(ring_->m()) * dim();
  if (ring_->phi_irreducible()) {
    long long sum = 0;
    for (int l = 0; l < ring_->t(); ++l) sum += torsion_degree(l);
    long long law = static_cast<long long>(ring_->m()) * ring_->deg_phi() *
                    (static_cast<long long>(ring_->t()) * ring_->pss() - sum);
    if (law != e) throw Error("torsion filtration does not account for the ideal's size");
  }
  return e;
}

std::optional<std::uint64_t> Ideal::element_count() const {
  std::uint64_t n = 1;
  const auto q = static_cast<std::uint64_t>(ring_->q());
  for (int i = 0; i < dim(); ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / q) return std::nullopt;
    n *= q;
  }
  return n;
}

RingContext::Vec Ideal::element_at(std::uint64_t idx) const {
  const auto q = static_cast<std::uint64_t>(ring_->q());
  RingContext::Vec acc(ring_->dim(), 0);
  for (const auto& row : space_.rows()) {
    Fq digit = static_cast<Fq>(idx % q);
    idx /= q;
    if (digit != 0) acc = ring_->vadd(acc, ring_->vscale(digit, row));
  }
  if (idx != 0) throw InvalidInput("element index out of range");
  return acc;
}

int Ideal::torsion_degree(int level) const {
  if (!ring_->phi_irreducible())
    throw UnsupportedParameter("torsional degrees are defined over an irreducible phi");
  if (level < 0 || level >= ring_->t()) throw InvalidInput("torsion level out of range");
  const int lo = level * ring_->block();
  const int hi = lo + ring_->block();
  // Rows with pivot at this u-level span the torsion module's numerators;
  // pivots are sorted, so the first hit carries the smallest phi-exponent.
  for (std::size_t r = 0; r < space_.rows().size(); ++r) {
    int p = space_.pivots()[r];
    if (p >= lo && p < hi) return (p - lo) / ring_->deg_phi();
  }
  return ring_->pss();
}

std::vector<int> Ideal::torsion_profile() const {
  std::vector<int> T(ring_->t());
  for (int l = 0; l < ring_->t(); ++l) T[l] = torsion_degree(l);
  for (int l = 0; l + 1 < ring_->t(); ++l)
    if (T[l] < T[l + 1]) throw Error("torsional degrees must be non-increasing");
  return T;
}

int Ideal::smallest_u_level_exponent(int level) const {
  if (level < 0 || level >= ring_->t()) throw InvalidInput("u-level must be in 0..t-1");
  const RingContext& R = *ring_;
  RowSpace aug(R.field_ptr(), R.dim());
  for (const auto& row : space_.rows()) aug.insert(row);
  for (int lv = level + 1; lv < R.t(); ++lv)
    for (int c = 0; c < R.block(); ++c) {
      RingContext::Vec e(R.dim(), 0);
      e[lv * R.block() + c] = 1;
      aug.insert(std::move(e));
    }
  for (int ex = 0; ex < R.pss(); ++ex)
    if (aug.contains(R.monomial(level, ex, 0).coords)) return ex;
  return R.pss();
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (a.ring().get() != b.ring().get()) throw InvalidInput("ideal sum across rings");
  // Both bases are already closed under x and u, so the union's row space is
  // too; span() re-closes anyway, which costs nothing extra at fixpoint.
  std::vector<RingContext::Vec> gens = a.basis().rows();
  for (const auto& row : b.basis().rows()) gens.push_back(row);
  return Ideal::span(a.ring(), std::move(gens));
}

std::optional<bool> is_principal_scan(const Ideal& I, std::uint64_t cap) {
  auto n = I.element_count();
  if (!n || *n > cap) return std::nullopt;
  for (std::uint64_t idx = 0; idx < *n; ++idx) {
    Ideal J = Ideal::span(I.ring(), {I.element_at(idx)});
    if (J == I) return true;
  }
  return false;
}

// --- closed forms ---------------------------------------------------------------

namespace {

void check_t3_family(const RingContext& R) {
  if (R.t() != 3) throw UnsupportedParameter("closed forms require t = 3");
  if (!R.k() || *R.k() != 2)
    throw UnsupportedParameter("closed forms require the wraparound to land at u^2");
  if (!R.phi_irreducible()) throw UnsupportedParameter("closed forms require irreducible phi");
}

// Reduce mod phi^{p^s}; a nonzero part must stay coprime to phi.
FieldPoly prep_cofactor(const RingContext& R, const FieldPoly& h, const char* name) {
  const FieldContext& F = R.field();
  FieldPoly hr = F.pmod(h, R.phi_power(R.pss()));
  if (!hr.is_zero() && F.pmod(hr, R.phi()).is_zero())
    throw InvalidInput(std::string(name) + " must be zero or coprime to phi");
  return hr;
}

FieldPoly inv_mod(const FieldContext& F, const FieldPoly& h, const FieldPoly& mod) {
  auto xg = F.pxgcd(h, mod);
  if (xg.g.deg() != 0) throw InvalidInput("cofactor is not invertible");
  return F.pmod(xg.sa, mod);
}

int phi_val(const RingContext& R, FieldPoly g) {
  const FieldContext& F = R.field();
  for (int v = 0; v < R.pss(); ++v) {
    if (g.is_zero()) return R.pss();
    auto qr = F.pdivmod(g, R.phi());
    if (!qr.second.is_zero()) return v;
    g = std::move(qr.first);
  }
  return R.pss();
}

// phi^{p^s} = u^2 * w in this family; the multiplication-by-phi^a overflow
// re-enters the second u-level scaled by w, so w shows up in the closed
// forms. It is a unit here (for the n = 1 family it is just delta_2).
FieldPoly wrap_cofactor(const RingContext& R) {
  RingContext::Vec v = R.vpow(R.phi_elem().coords, R.pss());
  if (!R.level_poly(v, 0).is_zero() || !R.level_poly(v, 1).is_zero() ||
      R.level_phi_valuation(v, 2) != 0)
    throw UnsupportedParameter("phi^{p^s} must be u^2 times a unit");
  return R.level_poly(v, 2);
}

}  // namespace

int closed_form_L_type3(const RingContext& R, int a, int t, const FieldPoly& h) {
  check_t3_family(R);
  const int pss = R.pss();
  if (!(0 <= t && t < a && a <= pss - 1))
    throw InvalidInput("type 3 parameters need 0 <= t < a <= p^s - 1");
  FieldPoly hr = prep_cofactor(R, h, "h");
  if (hr.is_zero()) return a;
  return std::min(a, pss - a + t);
}

int closed_form_L_type5(const RingContext& R, int a, int t0, int t1, const FieldPoly& h0,
                        const FieldPoly& h1) {
  check_t3_family(R);
  const int pss = R.pss();
  if (!(1 <= a && a <= pss - 1)) throw InvalidInput("type 5 parameters need 1 <= a <= p^s - 1");
  if (!(0 <= t1 && t1 <= t0 && t0 <= pss - 1))
    throw InvalidInput("type 5 parameters need 0 <= t1 <= t0 <= p^s - 1");
  const FieldContext& F = R.field();
  FieldPoly h0r = prep_cofactor(R, h0, "h0");
  FieldPoly h1r = prep_cofactor(R, h1, "h1");
  if (h0r.is_zero()) return 0;
  if (a < pss - a + t0) return 0;
  const FieldPoly& mod = R.phi_power(pss);
  FieldPoly w = wrap_cofactor(R);
  FieldPoly h0inv = inv_mod(F, h0r, mod);
  FieldPoly poly = F.pmod(F.pmul(R.phi_power(t0), h0r), mod);
  poly = F.psub(poly,
                F.pmod(F.pmul(R.phi_power(2 * a - pss - t0), F.pmod(F.pmul(w, h0inv), mod)), mod));
  if (!h1r.is_zero())
    poly = F.psub(
        poly, F.pmod(F.pmul(R.phi_power(a + t1 - t0), F.pmod(F.pmul(h1r, h0inv), mod)), mod));
  int L = std::min(a, phi_val(R, F.pmod(poly, mod)));
  // The pinning equation determines the level-1 multiplier only modulo the
  // annihilator of phi^{p^s - a + t0}; for t0 > 0 that slack reaches exponent
  // a - t0 at the top level.
  if (t0 > 0) L = std::min(L, a - t0);
  return L;
}

Level2PairResult closed_form_L_type7(const RingContext& R, int a, int b, int t0, int t1, int t2,
                                     const FieldPoly& h0, const FieldPoly& h1,
                                     const FieldPoly& h2) {
  check_t3_family(R);
  const int pss = R.pss();
  if (!(1 <= b && b < a && a <= pss - 1))
    throw InvalidInput("type 7 parameters need 1 <= b < a <= p^s - 1");
  if (!(0 <= t1 && t1 <= t0 && t0 <= pss - 1))
    throw InvalidInput("type 7 parameters need 0 <= t1 <= t0 <= p^s - 1");
  if (!(0 <= t2 && t2 < b)) throw InvalidInput("type 7 parameters need 0 <= t2 < b");
  const FieldContext& F = R.field();
  FieldPoly h0r = prep_cofactor(R, h0, "h0");
  FieldPoly h1r = prep_cofactor(R, h1, "h1");
  FieldPoly h2r = prep_cofactor(R, h2, "h2");
  if (h0r.is_zero() || a < pss - a + t0) return {0, false};
  if (b < pss - a + t0) {
    // No stated case covers b < p^s - a + t0 <= a; the membership argument
    // for the small-b side still forces the exponent to 0.
    return {0, true};
  }
  const FieldPoly& mod = R.phi_power(pss);
  FieldPoly w = wrap_cofactor(R);
  FieldPoly h0inv = inv_mod(F, h0r, mod);
  FieldPoly wh0inv = F.pmod(F.pmul(w, h0inv), mod);
  FieldPoly h1h0inv = F.pmod(F.pmul(h1r, h0inv), mod);
  FieldPoly poly1 = F.pmod(F.pmul(R.phi_power(t0), h0r), mod);
  poly1 = F.psub(poly1, F.pmod(F.pmul(R.phi_power(2 * a - pss - t0), wh0inv), mod));
  if (!h1r.is_zero()) poly1 = F.psub(poly1, F.pmod(F.pmul(R.phi_power(a + t1 - t0), h1h0inv), mod));
  FieldPoly poly2 = F.pmod(F.pmul(R.phi_power(t2), h2r), mod);
  poly2 = F.psub(poly2, F.pmod(F.pmul(R.phi_power(a + b - pss - t0), wh0inv), mod));
  if (!h1r.is_zero()) poly2 = F.psub(poly2, F.pmod(F.pmul(R.phi_power(b + t1 - t0), h1h0inv), mod));
  int beta1 = phi_val(R, F.pmod(poly1, mod));
  int beta2 = phi_val(R, F.pmod(poly2, mod));
  int L = std::min({b, beta1, beta2});
  // Same annihilator slack as the single-generator case.
  if (t0 > 0) L = std::min(L, a - t0);
  return {L, false};
}

// --- classification ---------------------------------------------------------------

namespace {

struct Witness {
  RingContext::Vec g;                // normalized: own level part is exactly phi^T
  std::optional<int> up1_t, up2_t;   // phi-exponents one and two levels up
  FieldPoly up1_h, up2_h;            // matching cofactors (zero when absent)
};

// Take the echelon row with the smallest pivot at `level` and scale it by the
// inverse of its level cofactor. The product stays in the ideal, spans the
// same principal ideal, and its `level` part becomes exactly phi^expect.
Witness extract_witness(const Ideal& I, int level, int expect) {
  const RingContext& R = *I.ring();
  const FieldContext& F = R.field();
  const int lo = level * R.block();
  const int hi = lo + R.block();
  const RingContext::Vec* row = nullptr;
  for (std::size_t r = 0; r < I.basis().rows().size(); ++r) {
    int p = I.basis().pivots()[r];
    if (p >= lo && p < hi) {
      row = &I.basis().rows()[r];
      break;
    }
  }
  if (!row) throw ClassificationFailure("no echelon witness at the requested u-level");
  auto nf = R.levelwise_normal_form(*row);
  if (nf.front().level != level) throw ClassificationFailure("witness row has lower-level support");
  QuotElement inv = R.poly_unit_inverse(nf.front().cofactor);
  Witness w;
  w.g = R.vmul(*row, inv.coords);
  w.up1_h = F.pzero();
  w.up2_h = F.pzero();
  auto gnf = R.levelwise_normal_form(w.g);
  if (gnf.front().level != level || gnf.front().exponent != expect ||
      !(gnf.front().cofactor == F.pconst(1)))
    throw ClassificationFailure("witness normalization did not yield a monic phi power");
  for (std::size_t i = 1; i < gnf.size(); ++i) {
    if (gnf[i].level == level + 1) {
      w.up1_t = gnf[i].exponent;
      w.up1_h = gnf[i].cofactor;
    } else if (gnf[i].level == level + 2) {
      w.up2_t = gnf[i].exponent;
      w.up2_h = gnf[i].cofactor;
    }
  }
  return w;
}

}  // namespace

IdealTypeInfo classify_t3(const Ideal& I) {
  const RingCtxPtr& rp = I.ring();
  const RingContext& R = *rp;
  if (R.t() != 3) throw UnsupportedParameter("classification requires t = 3");
  if (!R.k() || *R.k() != 2)
    throw UnsupportedParameter("classification requires the wraparound to land at u^2");
  if (!R.phi_irreducible()) throw UnsupportedParameter("classification requires irreducible phi");

  const FieldContext& F = R.field();
  const int pss = R.pss();
  IdealTypeInfo info;
  info.h0 = F.pzero();
  info.h1 = F.pzero();
  info.h2 = F.pzero();

  if (I.dim() == 0) {
    info.tag = 1;
    return info;
  }
  std::vector<int> T = I.torsion_profile();
  if (T[0] == 0) {
    if (I.dim() != R.dim()) throw ClassificationFailure("a unit's span must be the whole ring");
    info.tag = 1;
    info.generators.push_back(R.one().coords);
    return info;
  }

  auto require_eq = [&](const Ideal& J, const char* what) {
    if (!(J == I)) throw ClassificationFailure(std::string("reconstruction mismatch for ") + what);
  };
  auto u2phi = [&](int e) { return R.monomial(2, e, 0).coords; };
  auto note = [&](bool ok, const char* txt) {
    if (!ok) info.constraint_notes.emplace_back(txt);
  };

  if (T[0] >= pss && T[1] >= pss) {
    info.tag = 2;
    info.a = T[2];
    Ideal J = Ideal::span(rp, {u2phi(T[2])});
    require_eq(J, "the type 2 generator");
    info.generators = {u2phi(T[2])};
    return info;
  }

  if (T[0] >= pss) {
    Witness w = extract_witness(I, 1, T[1]);
    info.t2 = w.up1_t;
    info.h2 = w.up1_h;
    Ideal J = Ideal::span(rp, {w.g});
    if (J == I) {
      info.tag = 3;
      info.a = T[1];
      info.L = T[2];
      info.generators = {w.g};
      if (info.t2) note(*info.t2 < *info.L, "t2 < L");
      note(*info.L < *info.a, "L < a");
    } else {
      info.tag = 4;
      info.a = T[1];
      info.b = T[2];
      info.L = J.torsion_degree(2);
      Ideal K = ideal_sum(J, Ideal::span(rp, {u2phi(T[2])}));
      require_eq(K, "the type 4 generators");
      info.generators = {w.g, u2phi(T[2])};
      if (info.t2) note(*info.t2 < *info.b, "t2 < b");
      note(*info.b < *info.L, "b < L");
      note(*info.L < *info.a, "L < a");
    }
    return info;
  }

  Witness w0 = extract_witness(I, 0, T[0]);
  info.t0 = w0.up1_t;
  info.h0 = w0.up1_h;
  info.t1 = w0.up2_t;
  info.h1 = w0.up2_h;
  Ideal J0 = Ideal::span(rp, {w0.g});
  if (J0 == I) {
    info.tag = 5;
    info.a = T[0];
    info.L = T[1];
    info.M = T[2];
    info.generators = {w0.g};
    if (info.t0 && info.t1) note(*info.t1 < *info.t0, "t1 < t0");
    if (info.t0) note(*info.t0 < *info.L, "t0 < L");
    note(*info.L < *info.a, "L < a");
    if (info.t1) note(*info.t1 < *info.M, "t1 < M");
    note(*info.M < *info.L, "M < L");
  } else if (J0.torsion_degree(1) == T[1]) {
    info.tag = 6;
    info.a = T[0];
    info.M = T[1];
    info.b = T[2];
    info.L = J0.torsion_degree(2);
    Ideal K = ideal_sum(J0, Ideal::span(rp, {u2phi(T[2])}));
    require_eq(K, "the type 6 generators");
    info.generators = {w0.g, u2phi(T[2])};
    if (info.t0 && info.t1) note(*info.t1 < *info.t0, "t1 < t0");
    if (info.t1) note(*info.t1 < *info.b, "t1 < b");
    note(*info.b < *info.L, "b < L");
    note(*info.L < *info.a, "L < a");
    if (info.t0) note(*info.t0 < *info.M, "t0 < M");
    note(*info.M < *info.L, "M < L");
  } else {
    Witness w1 = extract_witness(I, 1, T[1]);
    info.t2 = w1.up1_t;
    info.h2 = w1.up1_h;
    Ideal J01 = ideal_sum(J0, Ideal::span(rp, {w1.g}));
    if (J01 == I) {
      info.tag = 7;
      info.a = T[0];
      info.b = T[1];
      info.M = T[2];
      info.L = J0.torsion_degree(1);
      info.generators = {w0.g, w1.g};
      if (info.t0 && info.t1) note(*info.t1 < *info.t0, "t1 < t0");
      if (info.t0) note(*info.t0 < *info.b, "t0 < b");
      note(*info.b < *info.L, "b < L");
      note(*info.L < *info.a, "L < a");
      if (info.t2) note(*info.t2 < *info.b, "t2 < b");
      if (info.t1) note(*info.t1 < *info.M, "t1 < M");
      if (info.t2) note(*info.t2 < *info.M, "t2 < M");
      note(*info.M < *info.b, "M < b");
    } else {
      info.tag = 8;
      info.a = T[0];
      info.b = T[1];
      info.c = T[2];
      info.L = J0.torsion_degree(1);
      info.M = J01.torsion_degree(2);
      Ideal K = ideal_sum(J01, Ideal::span(rp, {u2phi(T[2])}));
      require_eq(K, "the type 8 generators");
      info.generators = {w0.g, w1.g, u2phi(T[2])};
      if (info.t0 && info.t1) note(*info.t1 < *info.t0, "t1 < t0");
      if (info.t1) note(*info.t1 < *info.c, "t1 < c");
      if (info.t2) note(*info.t2 < *info.c, "t2 < c");
      note(*info.c < *info.b, "c < b");
      note(*info.b < *info.a, "b < a");
      if (info.t0) note(*info.t0 < *info.b, "t0 < b");
      note(*info.c < *info.M, "c < M");
      note(*info.b < *info.L, "b < L");
    }
  }
  return info;
}

// --- chain predicate ---------------------------------------------------------------

ChainCertificate chain_check(const RingCtxPtr& rp, std::uint64_t principal_scan_cap) {
  const RingContext& R = *rp;
  if (!R.phi_irreducible()) throw UnsupportedParameter("chain predicate requires irreducible phi");
  if (R.t() < 2) throw UnsupportedParameter("chain predicate requires t >= 2");
  ChainCertificate cert;
  cert.is_chain = R.k() && *R.k() == 1;
  const long long top = static_cast<long long>(R.t()) * R.pss();
  if (cert.is_chain) {
    for (long long i = 0; i <= top; ++i) {
      Ideal I = Ideal::span(rp, {R.vpow(R.phi_elem().coords, i)});
      long long e = static_cast<long long>(R.m()) * R.deg_phi() * (top - i);
      if (I.cardinality_exponent() != e) throw Error("chain cardinality law failed");
      if (i > 0 && !(cert.chain.back().contains_ideal(I) && I.dim() < cert.chain.back().dim()))
        throw Error("phi powers do not strictly descend");
      cert.chain.push_back(std::move(I));
      cert.card_exponents.push_back(e);
    }
  } else {
    Ideal U = Ideal::span(rp, {R.u_elem().coords});
    Ideal P = Ideal::span(rp, {R.phi_elem().coords});
    if (U.contains_ideal(P) || P.contains_ideal(U))
      throw Error("witness ideals <u> and <phi> are comparable");
    Ideal W = ideal_sum(U, P);
    auto n = W.element_count();
    if (n && *n <= principal_scan_cap) {
      auto verdict = is_principal_scan(W, principal_scan_cap);
      cert.principal_scan_count = *n;
      if (verdict && *verdict) throw Error("witness ideal <u, phi> turned out principal");
      cert.witness_verified_nonprincipal = verdict.has_value();
    }
    cert.witness = std::move(W);
  }
  return cert;
}

}  // namespace chainring
