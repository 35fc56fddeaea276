#include "chainring/quotient.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "chainring/errors.hpp"

namespace chainring {

namespace {

// Construction cost grows with the square of the dimension; past this the
// multiplication tables stop being cheap to precompute.
constexpr int kMaxDim = 1024;
// Unit-test fallback for reducible base polynomials is a dense linear solve.
constexpr int kMaxSolveDim = 256;

}  // namespace

RingCtxPtr RingContext::make(FieldCtxPtr field, int s, int t, ModulusSpec spec) {
  if (!field) throw InvalidInput("quotient: null field");
  if (s < 0) throw InvalidInput("quotient: s must be >= 0");
  if (t < 1) throw InvalidInput("quotient: t must be >= 1");
  if (static_cast<int>(spec.constant.parts.size()) != t)
    throw InvalidInput("quotient: modulus constant has wrong length");
  for (Fq d : spec.constant.parts)
    if (d >= field->q()) throw InvalidInput("quotient: modulus constant digit out of range");
  if (spec.constant.parts[0] == 0) throw NotAUnit("quotient: modulus constant must be a unit");
  if (spec.kind == ModulusKind::constacyclic) {
    if (spec.n < 1) throw InvalidInput("quotient: n must be >= 1");
    if (std::gcd(static_cast<long long>(spec.n), field->p()) != 1)
      throw UnsupportedParameter("quotient: n must be coprime to p");
  } else {
    if (field->p() == 3)
      throw UnsupportedParameter("quotient: trace modulus needs p != 3");
  }

  auto rc = std::shared_ptr<RingContext>(new RingContext());
  rc->field_ = std::move(field);
  rc->s_ = s;
  rc->t_ = t;
  rc->spec_ = std::move(spec);
  rc->build();
  return rc;
}

RingCtxPtr RingContext::constacyclic(FieldCtxPtr field, int s, int t, int n, RtElem delta) {
  ModulusSpec spec;
  spec.kind = ModulusKind::constacyclic;
  spec.n = n;
  spec.constant = std::move(delta);
  return make(std::move(field), s, t, std::move(spec));
}

RingCtxPtr RingContext::quadratic_trace(FieldCtxPtr field, int s, int t, RtElem dt) {
  ModulusSpec spec;
  spec.kind = ModulusKind::quadratic_trace;
  spec.constant = std::move(dt);
  return make(std::move(field), s, t, std::move(spec));
}

void RingContext::build() {
  const FieldContext& F = *field_;

  long long pss_ll = 1;
  for (int i = 0; i < s_; ++i) {
    pss_ll *= F.p();
    if (pss_ll > kMaxDim) throw TooLarge("quotient: p^s too large");
  }
  pss_ = static_cast<int>(pss_ll);
  deg_phi_ = spec_.kind == ModulusKind::constacyclic ? spec_.n : 2;
  if (static_cast<long long>(pss_) * deg_phi_ * t_ > kMaxDim)
    throw TooLarge("quotient: ring dimension too large");
  block_ = pss_ * deg_phi_;
  dim_ = t_ * block_;

  // Base polynomial phi with phi^{p^s} = f mod u, built from the p^s-th root
  // of the constant's residue.
  Fq c0 = spec_.constant.parts[0];
  Fq root = F.ps_root(c0, s_);
  if (spec_.kind == ModulusKind::constacyclic) {
    phi_ = F.padd(F.pmonomial(deg_phi_, 1), F.pconst(F.neg(root)));
  } else {
    phi_ = F.padd(F.pmonomial(2, 1),
                  F.padd(F.pmonomial(1, root), F.pconst(F.mul(root, root))));
    alpha0_ = root;
  }

  phi_pow_.resize(pss_ + 1);
  phi_pow_[0] = F.pconst(1);
  for (int j = 1; j <= pss_; ++j) phi_pow_[j] = F.pmul(phi_pow_[j - 1], phi_);
  phi_irreducible_ = F.pis_irreducible(phi_);

  // Non-leading coefficients of f, indexed by x-degree.
  ChainRing R = coeff_ring();
  f_terms_.clear();
  if (spec_.kind == ModulusKind::constacyclic) {
    f_terms_.emplace_back(0, R.neg(spec_.constant));
  } else {
    const RtElem& dt = spec_.constant;
    f_terms_.emplace_back(0, R.mul(dt, dt));
    f_terms_.emplace_back(pss_, dt);
  }

  // k = u-adic valuation of f - phi^{p^s}. The level-0 parts must cancel
  // exactly; anything else means the root above was wrong.
  {
    std::vector<RtElem> diff(block_ + 1, R.zero());
    diff[block_] = R.one();
    for (const auto& [e, ce] : f_terms_) diff[e] = R.add(diff[e], ce);
    const FieldPoly& pp = phi_pow_[pss_];
    for (int e = 0; e <= pp.deg(); ++e)
      diff[e] = R.sub(diff[e], R.from_scalar(pp.coeff(e)));
    int best = t_;
    for (const RtElem& ce : diff)
      if (!R.is_zero(ce)) best = std::min(best, R.u_valuation(ce));
    if (best == 0) throw Error("quotient: base polynomial mismatch at level 0");
    if (best < t_) k_ = best;
  }

  nilp_index_ = k_ ? ((t_ + *k_ - 1) / *k_) * pss_ : pss_;

  // Multiplication-by-x table: one sparse column per basis monomial. The
  // columns are produced by the generic product so the phi^{p^s} wraparound
  // (which mixes u-levels) is never special-cased.
  Vec xv = reduce_poly_level(F.pmonomial(1, 1), 0);
  x_cols_.assign(dim_, {});
  for (int col = 0; col < dim_; ++col) {
    Vec e(dim_, 0);
    e[col] = 1;
    Vec prod = vmul(xv, e);
    for (int row = 0; row < dim_; ++row)
      if (prod[row] != 0) x_cols_[col].emplace_back(row, prod[row]);
  }

  // The nilpotency index must match honest powering of phi.
  {
    Vec phiv = reduce_poly_level(phi_, 0);
    if (!vis_zero(vpow(phiv, nilp_index_)))
      throw Error("quotient: nilpotency index too small");
    if (nilp_index_ > 0 && vis_zero(vpow(phiv, nilp_index_ - 1)))
      throw Error("quotient: nilpotency index too large");
  }
}

std::optional<std::uint64_t> RingContext::element_count() const {
  std::uint64_t n = 1;
  std::uint64_t qq = static_cast<std::uint64_t>(q());
  for (int i = 0; i < dim_; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / qq) return std::nullopt;
    n *= qq;
  }
  return n;
}

bool RingContext::count_at_most(std::uint64_t cap) const {
  std::uint64_t n = 1;
  std::uint64_t qq = static_cast<std::uint64_t>(q());
  for (int i = 0; i < dim_; ++i) {
    if (n > cap / qq) return false;
    n *= qq;
  }
  return n <= cap;
}

// --- elements ----------------------------------------------------------------

QuotElement RingContext::wrap(Vec v) const {
  if (static_cast<int>(v.size()) != dim_) throw InvalidInput("quotient: bad coordinate length");
  return QuotElement{shared_from_this(), std::move(v)};
}

QuotElement RingContext::zero() const { return wrap(Vec(dim_, 0)); }

QuotElement RingContext::one() const { return monomial(0, 0, 0, 1); }

QuotElement RingContext::x_elem() const {
  return wrap(reduce_poly_level(field_->pmonomial(1, 1), 0));
}

QuotElement RingContext::u_elem() const {
  return t_ >= 2 ? monomial(1, 0, 0, 1) : zero();
}

QuotElement RingContext::phi_elem() const {
  return wrap(reduce_poly_level(phi_, 0));
}

QuotElement RingContext::monomial(int k, int j, int i, Fq a) const {
  if (k < 0 || k >= t_ || j < 0 || j >= pss_ || i < 0 || i >= deg_phi_)
    throw InvalidInput("quotient: monomial exponents out of range");
  if (a >= q()) throw InvalidInput("quotient: monomial coefficient out of range");
  Vec v(dim_, 0);
  v[coord_index(k, j, i)] = a;
  return wrap(std::move(v));
}

QuotElement RingContext::from_field_poly(const FieldPoly& g, int level) const {
  return wrap(reduce_poly_level(g, level));
}

QuotElement RingContext::from_chain_const(const RtElem& c) const {
  if (static_cast<int>(c.parts.size()) != t_)
    throw InvalidInput("quotient: constant has wrong length");
  Vec v(dim_, 0);
  for (int k = 0; k < t_; ++k) {
    if (c.parts[k] >= q()) throw InvalidInput("quotient: constant digit out of range");
    v[coord_index(k, 0, 0)] = c.parts[k];
  }
  return wrap(std::move(v));
}

RingContext::Vec RingContext::vec_from_index(std::uint64_t idx) const {
  Vec v(dim_, 0);
  std::uint64_t qq = static_cast<std::uint64_t>(q());
  for (int i = 0; i < dim_ && idx != 0; ++i) {
    v[i] = static_cast<Fq>(idx % qq);
    idx /= qq;
  }
  if (idx != 0) throw InvalidInput("quotient: element index out of range");
  return v;
}

// --- representations ----------------------------------------------------------

RingContext::Vec RingContext::to_std(const Vec& canon) const {
  const FieldContext& F = *field_;
  Vec out(dim_, 0);
  for (int k = 0; k < t_; ++k) {
    FieldPoly acc;
    for (int j = pss_ - 1; j >= 0; --j) {
      acc = F.pmul(acc, phi_);
      FieldPoly digit;
      digit.c.assign(canon.begin() + coord_index(k, j, 0),
                     canon.begin() + coord_index(k, j, 0) + deg_phi_);
      while (!digit.c.empty() && digit.c.back() == 0) digit.c.pop_back();
      acc = F.padd(acc, digit);
    }
    for (int e = 0; e <= acc.deg(); ++e) out[k * block_ + e] = acc.coeff(e);
  }
  return out;
}

RingContext::Vec RingContext::from_std(const Vec& std_form) const {
  const FieldContext& F = *field_;
  Vec out(dim_, 0);
  for (int k = 0; k < t_; ++k) {
    FieldPoly rest;
    rest.c.assign(std_form.begin() + k * block_, std_form.begin() + (k + 1) * block_);
    while (!rest.c.empty() && rest.c.back() == 0) rest.c.pop_back();
    for (int j = 0; j < pss_; ++j) {
      auto [quot, digit] = F.pdivmod(rest, phi_);
      for (int i = 0; i <= digit.deg(); ++i) out[coord_index(k, j, i)] = digit.coeff(i);
      rest = std::move(quot);
    }
    if (!rest.is_zero()) throw Error("quotient: base-phi expansion overflow");
  }
  return out;
}

FieldPoly RingContext::level_poly(const Vec& a, int kk) const {
  if (kk < 0 || kk >= t_) throw InvalidInput("quotient: level out of range");
  const FieldContext& F = *field_;
  FieldPoly acc;
  for (int j = pss_ - 1; j >= 0; --j) {
    acc = F.pmul(acc, phi_);
    FieldPoly digit;
    digit.c.assign(a.begin() + coord_index(kk, j, 0),
                   a.begin() + coord_index(kk, j, 0) + deg_phi_);
    while (!digit.c.empty() && digit.c.back() == 0) digit.c.pop_back();
    acc = F.padd(acc, digit);
  }
  return acc;
}

int RingContext::level_phi_valuation(const Vec& a, int kk) const {
  if (kk < 0 || kk >= t_) throw InvalidInput("quotient: level out of range");
  for (int j = 0; j < pss_; ++j)
    for (int i = 0; i < deg_phi_; ++i)
      if (a[coord_index(kk, j, i)] != 0) return j;
  return pss_;
}

std::vector<RingContext::LevelTerm> RingContext::levelwise_normal_form(const Vec& a) const {
  if (vis_zero(a)) throw InvalidInput("quotient: zero has no normal form");
  const FieldContext& F = *field_;
  std::vector<LevelTerm> terms;
  for (int kk = 0; kk < t_; ++kk) {
    int j = level_phi_valuation(a, kk);
    if (j == pss_) continue;
    // Recompose the digits above j; the lowest digit is nonzero, so phi does
    // not divide the cofactor.
    FieldPoly cof;
    for (int jj = pss_ - 1; jj >= j; --jj) {
      cof = F.pmul(cof, phi_);
      FieldPoly digit;
      digit.c.assign(a.begin() + coord_index(kk, jj, 0),
                     a.begin() + coord_index(kk, jj, 0) + deg_phi_);
      while (!digit.c.empty() && digit.c.back() == 0) digit.c.pop_back();
      cof = F.padd(cof, digit);
    }
    terms.push_back(LevelTerm{kk, j, std::move(cof)});
  }
  return terms;
}

RingContext::Vec RingContext::recompose(const std::vector<LevelTerm>& terms) const {
  const FieldContext& F = *field_;
  Vec acc(dim_, 0);
  for (const LevelTerm& term : terms) {
    if (term.level < 0 || term.level >= t_) throw InvalidInput("quotient: level out of range");
    if (term.exponent < 0) throw InvalidInput("quotient: negative exponent");
    FieldPoly g = F.pmul(F.ppow(phi_, term.exponent), term.cofactor);
    acc = vadd(acc, reduce_poly_level(g, term.level));
  }
  return acc;
}

// --- arithmetic ----------------------------------------------------------------

bool RingContext::vis_zero(const Vec& a) const {
  return std::all_of(a.begin(), a.end(), [](Fq d) { return d == 0; });
}

RingContext::Vec RingContext::vadd(const Vec& a, const Vec& b) const {
  const FieldContext& F = *field_;
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = F.add(a[i], b[i]);
  return out;
}

RingContext::Vec RingContext::vsub(const Vec& a, const Vec& b) const {
  const FieldContext& F = *field_;
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = F.sub(a[i], b[i]);
  return out;
}

RingContext::Vec RingContext::vneg(const Vec& a) const {
  const FieldContext& F = *field_;
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = F.neg(a[i]);
  return out;
}

RingContext::Vec RingContext::vscale(Fq s, const Vec& a) const {
  const FieldContext& F = *field_;
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = F.mul(s, a[i]);
  return out;
}

// Reduce a degree-major working buffer (work[d*t + level]) modulo f, top
// degree first. f is monic, so x^N = -(non-leading terms); the coefficient
// products run through R^t and mix u-levels.
void RingContext::reduce_work(std::vector<Fq>& work, int nterms) const {
  const FieldContext& F = *field_;
  for (int d = nterms - 1; d >= block_; --d) {
    Fq* cd = &work[static_cast<std::size_t>(d) * t_];
    bool nz = false;
    for (int k = 0; k < t_; ++k) nz = nz || cd[k] != 0;
    if (!nz) continue;
    for (const auto& [e, fe] : f_terms_) {
      Fq* tgt = &work[static_cast<std::size_t>(d - block_ + e) * t_];
      for (int k1 = 0; k1 < t_; ++k1) {
        if (cd[k1] == 0) continue;
        for (int k2 = 0; k1 + k2 < t_; ++k2) {
          if (fe.parts[k2] == 0) continue;
          tgt[k1 + k2] = F.sub(tgt[k1 + k2], F.mul(cd[k1], fe.parts[k2]));
        }
      }
    }
    for (int k = 0; k < t_; ++k) cd[k] = 0;
  }
}

RingContext::Vec RingContext::vmul(const Vec& a, const Vec& b) const {
  const FieldContext& F = *field_;
  Vec as = to_std(a), bs = to_std(b);
  int W = 2 * block_ - 1;
  std::vector<Fq> work(static_cast<std::size_t>(W) * t_, 0);
  for (int k1 = 0; k1 < t_; ++k1) {
    for (int e1 = 0; e1 < block_; ++e1) {
      Fq v1 = as[k1 * block_ + e1];
      if (v1 == 0) continue;
      for (int k2 = 0; k1 + k2 < t_; ++k2) {
        for (int e2 = 0; e2 < block_; ++e2) {
          Fq v2 = bs[k2 * block_ + e2];
          if (v2 == 0) continue;
          std::size_t pos = static_cast<std::size_t>(e1 + e2) * t_ + (k1 + k2);
          work[pos] = F.add(work[pos], F.mul(v1, v2));
        }
      }
    }
  }
  reduce_work(work, W);
  Vec cs(dim_, 0);
  for (int k = 0; k < t_; ++k)
    for (int e = 0; e < block_; ++e) cs[k * block_ + e] = work[static_cast<std::size_t>(e) * t_ + k];
  return from_std(cs);
}

RingContext::Vec RingContext::reduce_poly_level(const FieldPoly& g, int level) const {
  if (level < 0 || level >= t_) throw InvalidInput("quotient: level out of range");
  if (g.is_zero()) return Vec(dim_, 0);
  int W = g.deg() + 1;
  std::vector<Fq> work(static_cast<std::size_t>(std::max(W, block_)) * t_, 0);
  for (int d = 0; d < W; ++d) work[static_cast<std::size_t>(d) * t_ + level] = g.coeff(d);
  reduce_work(work, W);
  Vec cs(dim_, 0);
  for (int k = 0; k < t_; ++k)
    for (int e = 0; e < block_; ++e) cs[k * block_ + e] = work[static_cast<std::size_t>(e) * t_ + k];
  return from_std(cs);
}

RingContext::Vec RingContext::vpow(const Vec& a, long long e) const {
  if (e < 0) throw InvalidInput("quotient: negative exponent");
  Vec base = a;
  Vec acc(dim_, 0);
  acc[coord_index(0, 0, 0)] = 1;
  while (e > 0) {
    if (e & 1) acc = vmul(acc, base);
    base = vmul(base, base);
    e >>= 1;
  }
  return acc;
}

void RingContext::vmul_x_into(const Vec& a, Vec& out) const {
  const FieldContext& F = *field_;
  out.assign(dim_, 0);
  for (int col = 0; col < dim_; ++col) {
    Fq v = a[col];
    if (v == 0) continue;
    for (const auto& [row, w] : x_cols_[col]) out[row] = F.add(out[row], F.mul(v, w));
  }
}

void RingContext::vmul_u_into(const Vec& a, Vec& out) const {
  out.assign(dim_, 0);
  for (int k = 0; k + 1 < t_; ++k)
    std::copy(a.begin() + k * block_ + 0, a.begin() + (k + 1) * block_,
              out.begin() + (k + 1) * block_);
}

QuotElement RingContext::add(const QuotElement& a, const QuotElement& b) const {
  check_same_ring(a, b);
  return QuotElement{a.ring, vadd(a.coords, b.coords)};
}

QuotElement RingContext::sub(const QuotElement& a, const QuotElement& b) const {
  check_same_ring(a, b);
  return QuotElement{a.ring, vsub(a.coords, b.coords)};
}

QuotElement RingContext::neg(const QuotElement& a) const {
  check_same_ring(a, a);
  return QuotElement{a.ring, vneg(a.coords)};
}

QuotElement RingContext::mul(const QuotElement& a, const QuotElement& b) const {
  check_same_ring(a, b);
  return QuotElement{a.ring, vmul(a.coords, b.coords)};
}

QuotElement RingContext::pow(const QuotElement& a, long long e) const {
  check_same_ring(a, a);
  return QuotElement{a.ring, vpow(a.coords, e)};
}

void RingContext::check_same_ring(const QuotElement& a, const QuotElement& b) const {
  if (a.ring.get() != this || b.ring.get() != this)
    throw InvalidInput("quotient: element from a different ring");
}

// --- units ---------------------------------------------------------------------

bool RingContext::is_unit(const Vec& a) const {
  if (phi_irreducible_) {
    // Local ring with maximal ideal <u, phi>: a unit is anything with a
    // nonzero u^0 phi^0 coordinate.
    for (int i = 0; i < deg_phi_; ++i)
      if (a[coord_index(0, 0, i)] != 0) return true;
    return false;
  }
  if (dim_ > kMaxSolveDim)
    throw UnsupportedParameter("quotient: unit test needs irreducible phi at this size");
  return solve_inverse(a).has_value();
}

std::optional<RingContext::Vec> RingContext::solve_inverse(const Vec& a) const {
  const FieldContext& F = *field_;
  // Augmented system [M | 1] for M = multiplication by a.
  int n = dim_;
  std::vector<Vec> rows(n, Vec(n + 1, 0));
  for (int col = 0; col < n; ++col) {
    Vec e(n, 0);
    e[col] = 1;
    Vec prod = vmul(a, e);
    for (int row = 0; row < n; ++row) rows[row][col] = prod[row];
  }
  rows[coord_index(0, 0, 0)][n] = 1;

  std::vector<int> pivot_of_row;
  int r = 0;
  for (int c = 0; c <= n && r < n; ++c) {
    int sel = -1;
    for (int i = r; i < n; ++i)
      if (rows[i][c] != 0) { sel = i; break; }
    if (sel < 0) continue;
    if (c == n) return std::nullopt;  // inconsistent: pivot in the constant column
    std::swap(rows[r], rows[sel]);
    Fq piv_inv = F.inv(rows[r][c]);
    for (int j = c; j <= n; ++j) rows[r][j] = F.mul(piv_inv, rows[r][j]);
    for (int i = 0; i < n; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Fq factor = rows[i][c];
      for (int j = c; j <= n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(factor, rows[r][j]));
    }
    pivot_of_row.push_back(c);
    ++r;
  }
  Vec b(n, 0);
  for (int i = 0; i < r; ++i) b[pivot_of_row[i]] = rows[i][n];
  // Free variables were set to zero; accept only a genuine inverse.
  if (vmul(a, b) != one_vec()) return std::nullopt;
  return b;
}

RingContext::Vec RingContext::one_vec() const {
  Vec v(dim_, 0);
  v[coord_index(0, 0, 0)] = 1;
  return v;
}

QuotElement RingContext::poly_unit_inverse(const FieldPoly& g) const {
  const FieldContext& F = *field_;
  if (g.is_zero()) throw DivisionByZero("quotient: inverse of zero");
  // Bezout against phi^{p^s}: a*g + b*phi^{p^s} = 1 over the field, so in the
  // ring a*g = 1 - eta with eta = b*phi^{p^s} nilpotent. A geometric series
  // finishes the job.
  FieldContext::XGcd bez = F.pxgcd(g, phi_pow_[pss_]);
  if (bez.g.deg() != 0) throw NotAUnit("quotient: polynomial shares a factor with phi");
  Fq scale = F.inv(bez.g.coeff(0));
  FieldPoly ainv = F.pscale(scale, bez.sa);
  FieldPoly bpart = F.pscale(scale, bez.sb);
  Vec eta = vmul(reduce_poly_level(bpart, 0), reduce_poly_level(phi_pow_[pss_], 0));
  int rounds = k_ ? (t_ + *k_ - 1) / *k_ : 1;
  Vec series = one_vec();
  Vec etapow = one_vec();
  for (int i = 1; i < rounds; ++i) {
    etapow = vmul(etapow, eta);
    series = vadd(series, etapow);
  }
  Vec result = vmul(reduce_poly_level(ainv, 0), series);
  if (vmul(result, reduce_poly_level(g, 0)) != one_vec())
    throw ParadoxError("quotient: polynomial inverse failed verification");
  return wrap(std::move(result));
}

// --- printing ------------------------------------------------------------------

std::string RingContext::to_string(const Vec& a) const {
  const FieldContext& F = *field_;
  if (vis_zero(a)) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < t_; ++k) {
    for (int j = 0; j < pss_; ++j) {
      for (int i = 0; i < deg_phi_; ++i) {
        Fq c = a[coord_index(k, j, i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        std::vector<std::string> factors;
        if (k == 1) factors.push_back("u");
        if (k > 1) factors.push_back("u^" + std::to_string(k));
        if (j == 1) factors.push_back("phi");
        if (j > 1) factors.push_back("phi^" + std::to_string(j));
        if (i == 1) factors.push_back("x");
        if (i > 1) factors.push_back("x^" + std::to_string(i));
        if (c != 1 || factors.empty()) factors.insert(factors.begin(), F.to_string(c));
        for (std::size_t f = 0; f < factors.size(); ++f) {
          if (f) os << "*";
          os << factors[f];
        }
      }
    }
  }
  return os.str();
}

}  // namespace chainring
