#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainring/errors.hpp"

namespace chainring {

/// Element of F_{p^m}, encoded as sum_i digit_i * p^i with digits in [0, p).
/// Values are meaningful only relative to the FieldContext that made them.
using Fq = std::uint16_t;

/// Dense univariate polynomial over F_{p^m}; c[i] multiplies x^i.
/// Trailing zeros are trimmed, so the zero polynomial has empty c.
struct FieldPoly {
  std::vector<Fq> c;

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // deg(0) == -1
  Fq lead() const { return c.back(); }
  Fq coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Fq{0};
  }
  bool operator==(const FieldPoly&) const = default;
};

class FieldContext;
using FieldCtxPtr = std::shared_ptr<const FieldContext>;

/// Arithmetic context for F_{p^m} = F_p[y]/<modulus(y)>.
///
/// Immutable after construction. All scalar operations are table lookups,
/// so p^m is capped (the whole library targets exhaustively checkable
/// sizes). Polynomial operations are exact and allocation-light.
class FieldContext {
 public:
  /// Field with the canonical modulus: the first monic irreducible of
  /// degree m over F_p in base-p value order of the coefficient vector.
  static FieldCtxPtr make(std::int64_t p, int m);

  /// Field with an explicit monic irreducible modulus (m+1 digits, constant
  /// term first). Throws InvalidInput if the modulus is unusable.
  static FieldCtxPtr make(std::int64_t p, int m, std::vector<int> modulus);

  std::int64_t p() const { return p_; }
  int m() const { return m_; }
  std::int64_t q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  // --- scalar arithmetic ---------------------------------------------------

  Fq add(Fq a, Fq b) const { return add_[static_cast<std::size_t>(a) * q_ + b]; }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq neg(Fq a) const { return neg_[a]; }
  Fq mul(Fq a, Fq b) const { return mul_[static_cast<std::size_t>(a) * q_ + b]; }
  Fq inv(Fq a) const;                      // throws DivisionByZero on 0
  Fq pow(Fq a, long long e) const;         // e >= 0
  Fq frobenius(Fq a) const { return pow(a, p_); }

  Fq from_int(long long v) const;          // image of an integer (prime subfield)
  Fq from_digits(const std::vector<int>& d) const;
  std::vector<int> digits(Fq a) const;

  /// Unique b with b^{p^s} = a (the p^s-power map is a field automorphism).
  Fq ps_root(Fq a, int s) const;

  /// Smallest witness b with b^n = a, or nullopt when a is not an n-th
  /// power. Requires gcd(n, p) = 1; a may be zero (witness 0).
  std::optional<Fq> nth_power_witness(Fq a, long long n) const;
  bool is_nth_power(Fq a, long long n) const { return nth_power_witness(a, n).has_value(); }

  // --- polynomials over this field ------------------------------------------

  FieldPoly pzero() const { return {}; }
  FieldPoly pconst(Fq a) const;
  FieldPoly pmonomial(int e, Fq a) const;
  FieldPoly pfrom(const std::vector<long long>& ints) const;

  FieldPoly padd(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly psub(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly pneg(const FieldPoly& a) const;
  FieldPoly pscale(Fq s, const FieldPoly& a) const;
  FieldPoly pmul(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly ppow(const FieldPoly& a, long long e) const;

  /// Quotient and remainder; b must be nonzero (DivisionByZero otherwise).
  std::pair<FieldPoly, FieldPoly> pdivmod(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly pmod(const FieldPoly& a, const FieldPoly& b) const { return pdivmod(a, b).second; }
  FieldPoly pmonic(const FieldPoly& a) const;  // DivisionByZero on 0

  /// Monic gcd.
  FieldPoly pgcd(FieldPoly a, FieldPoly b) const;
  /// Monic gcd g with sa*a + sb*b = g.
  struct XGcd {
    FieldPoly g, sa, sb;
  };
  XGcd pxgcd(const FieldPoly& a, const FieldPoly& b) const;

  /// Degree-then-digits comparison; total order used wherever polynomial
  /// output must be deterministic.
  bool pless(const FieldPoly& a, const FieldPoly& b) const;

  /// k-th monic polynomial of degree d: coefficients below the leading 1 are
  /// the base-q digits of value. Enumerating value = 0 .. q^d - 1 visits all
  /// monic polynomials of degree d exactly once, in pless order.
  FieldPoly monic_by_value(int d, std::uint64_t value) const;

  bool pis_irreducible(const FieldPoly& f) const;

  /// Monic irreducible factors with multiplicities, sorted by pless.
  /// Input must be monic of degree >= 1 (InvalidInput otherwise).
  std::vector<std::pair<FieldPoly, int>> factorize(const FieldPoly& f) const;

  std::string to_string(Fq a) const;               // digit vector "[d0,d1]"
  std::string to_string(const FieldPoly& f) const;  // "[[..],[..]]", low first

 private:
  FieldContext() = default;
  void build_tables();

  std::int64_t p_ = 0;
  int m_ = 0;
  std::int64_t q_ = 0;
  std::vector<int> modulus_;  // m+1 digits, monic
  std::vector<Fq> add_, mul_;  // q*q tables
  std::vector<Fq> neg_, inv_;  // inv_[0] = 0 (unused)
};

}  // namespace chainring
