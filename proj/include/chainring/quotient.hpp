#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainring/chain_ring.hpp"
#include "chainring/field.hpp"

namespace chainring {

enum class ModulusKind {
  /// f(x) = x^{n p^s} - delta, delta a unit of R^t, gcd(n, p) = 1.
  constacyclic,
  /// f(x) = x^{2 p^s} + dt x^{p^s} + dt^2, dt a unit of R^t, gcd(3, p) = 1.
  /// This is the quadratic factor left over by a cube-root split when the
  /// cubic character of the residue field blocks a full linear split.
  quadratic_trace,
};

struct ModulusSpec {
  ModulusKind kind = ModulusKind::constacyclic;
  int n = 1;          // constacyclic only
  RtElem constant;    // delta, resp. dt
};

class RingContext;
using RingCtxPtr = std::shared_ptr<const RingContext>;

/// Element of R^t[x]/<f(x)> in canonical coordinates: coords[(k*p^s + j)*d + i]
/// is the F_{p^m} coefficient of u^k phi^j x^i, where phi is the degree-d base
/// polynomial with phi^{p^s} = f mod u. Those monomials are a basis, so the
/// coordinate vector is unique.
struct QuotElement {
  RingCtxPtr ring;
  std::vector<Fq> coords;

  bool operator==(const QuotElement& o) const {
    return ring.get() == o.ring.get() && coords == o.coords;
  }
};

/// Quotient ring R^t[x]/<f(x)>. Immutable: derived data (base polynomial phi,
/// its powers, the u-level k of f - phi^{p^s}, the multiplication tables for
/// x) is computed and verified once at construction.
class RingContext : public std::enable_shared_from_this<RingContext> {
 public:
  static RingCtxPtr make(FieldCtxPtr field, int s, int t, ModulusSpec spec);
  static RingCtxPtr constacyclic(FieldCtxPtr field, int s, int t, int n, RtElem delta);
  static RingCtxPtr quadratic_trace(FieldCtxPtr field, int s, int t, RtElem dt);

  const FieldContext& field() const { return *field_; }
  const FieldCtxPtr& field_ptr() const { return field_; }
  ChainRing coeff_ring() const { return ChainRing(field_, t_); }
  const ModulusSpec& spec() const { return spec_; }

  std::int64_t p() const { return field_->p(); }
  int m() const { return field_->m(); }
  std::int64_t q() const { return field_->q(); }
  int s() const { return s_; }
  int t() const { return t_; }
  int pss() const { return pss_; }          // p^s
  int deg_phi() const { return deg_phi_; }
  int block() const { return block_; }      // p^s * deg_phi, coords per u-level
  int dim() const { return dim_; }          // t * block, F_{p^m} dimension

  const FieldPoly& phi() const { return phi_; }
  const FieldPoly& phi_power(int j) const { return phi_pow_[j]; }  // 0 <= j <= p^s
  bool phi_irreducible() const { return phi_irreducible_; }

  /// u-adic valuation of f - phi^{p^s}; absent when f = phi^{p^s} exactly.
  std::optional<int> k() const { return k_; }
  /// Smallest e with phi^e = 0; equals ceil(t/k)*p^s, or p^s when k is absent.
  int nilp_index() const { return nilp_index_; }
  /// Quadratic-trace rings only: the p^s-th root of the constant's residue,
  /// i.e. the field scalar r with phi = x^2 + r x + r^2.
  std::optional<Fq> alpha0() const { return alpha0_; }

  /// Number of elements q^dim if it fits in 64 bits, otherwise nullopt.
  std::optional<std::uint64_t> element_count() const;
  bool count_at_most(std::uint64_t cap) const;

  // --- elements --------------------------------------------------------------

  using Vec = std::vector<Fq>;  // canonical coordinates, length dim()

  QuotElement wrap(Vec v) const;
  QuotElement zero() const;
  QuotElement one() const;
  QuotElement x_elem() const;
  QuotElement u_elem() const;
  QuotElement phi_elem() const;
  QuotElement monomial(int k, int j, int i, Fq a = 1) const;
  /// Field polynomial (any degree) injected at a u-level, reduced mod f.
  QuotElement from_field_poly(const FieldPoly& g, int level = 0) const;
  QuotElement from_chain_const(const RtElem& c) const;

  /// Element with the given base-q index; coordinate 0 is least significant.
  Vec vec_from_index(std::uint64_t idx) const;

  // --- arithmetic (vector level; QuotElement wrappers below) -----------------

  bool vis_zero(const Vec& a) const;
  Vec vadd(const Vec& a, const Vec& b) const;
  Vec vsub(const Vec& a, const Vec& b) const;
  Vec vneg(const Vec& a) const;
  Vec vscale(Fq s, const Vec& a) const;
  Vec vmul(const Vec& a, const Vec& b) const;
  Vec vpow(const Vec& a, long long e) const;
  /// x * a via the precomputed sparse column table (hot path).
  void vmul_x_into(const Vec& a, Vec& out) const;
  /// u * a: a coordinate block shift (hot path).
  void vmul_u_into(const Vec& a, Vec& out) const;

  QuotElement add(const QuotElement& a, const QuotElement& b) const;
  QuotElement sub(const QuotElement& a, const QuotElement& b) const;
  QuotElement neg(const QuotElement& a) const;
  QuotElement mul(const QuotElement& a, const QuotElement& b) const;
  QuotElement pow(const QuotElement& a, long long e) const;

  /// Unit test. With phi irreducible this is the coordinate criterion: some
  /// u^0 phi^0 x^i coefficient is nonzero. Otherwise falls back to solving
  /// a*b = 1 exactly (UnsupportedParameter past the fallback cap).
  bool is_unit(const Vec& a) const;
  bool is_unit(const QuotElement& a) const { return is_unit(a.coords); }

  /// Exact inverse found by linear algebra, independent of the coordinate
  /// criterion; nullopt when a is not a unit.
  std::optional<Vec> solve_inverse(const Vec& a) const;

  /// Inverse of a nonzero field polynomial g (deg g < deg phi, phi
  /// irreducible) as a ring element: Bezout identity against phi^{p^s}, then
  /// a geometric series kills the nilpotent correction. DivisionByZero on 0.
  QuotElement poly_unit_inverse(const FieldPoly& g) const;

  // --- representations --------------------------------------------------------

  /// Standard form: out[k*block + e] is the coefficient of u^k x^e, e < block.
  Vec to_std(const Vec& canon) const;
  Vec from_std(const Vec& std_form) const;

  /// F-polynomial at u-level kk (base-phi digits recomposed; deg < block).
  FieldPoly level_poly(const Vec& a, int kk) const;
  /// Smallest j with a nonzero phi^j coefficient at u-level kk; p^s if none.
  int level_phi_valuation(const Vec& a, int kk) const;

  /// One u-level of the phi-adic normal form u^level phi^exponent cofactor,
  /// with phi not dividing the cofactor.
  struct LevelTerm {
    int level;
    int exponent;
    FieldPoly cofactor;
  };
  /// Normal form across all nonzero u-levels, lowest level first.
  /// InvalidInput on zero.
  std::vector<LevelTerm> levelwise_normal_form(const Vec& a) const;
  Vec recompose(const std::vector<LevelTerm>& terms) const;

  std::string to_string(const Vec& a) const;
  std::string to_string(const QuotElement& a) const { return to_string(a.coords); }

  int coord_index(int k, int j, int i) const { return (k * pss_ + j) * deg_phi_ + i; }

 private:
  RingContext() = default;
  void build();
  void reduce_work(std::vector<Fq>& work, int nterms) const;
  Vec reduce_poly_level(const FieldPoly& g, int level) const;
  void check_same_ring(const QuotElement& a, const QuotElement& b) const;
  Vec one_vec() const;

  FieldCtxPtr field_;
  int s_ = 0, t_ = 1;
  ModulusSpec spec_;
  int pss_ = 1, deg_phi_ = 1, block_ = 1, dim_ = 1;
  FieldPoly phi_;
  std::vector<FieldPoly> phi_pow_;
  bool phi_irreducible_ = false;
  std::optional<int> k_;
  int nilp_index_ = 1;
  std::optional<Fq> alpha0_;
  std::vector<std::pair<int, RtElem>> f_terms_;  // (x-power, coefficient)
  // Sparse columns of multiplication by x in canonical coordinates.
  std::vector<std::vector<std::pair<int, Fq>>> x_cols_;
};

}  // namespace chainring
