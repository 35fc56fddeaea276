#pragma once

#include <string>
#include <vector>

#include "chainring/field.hpp"

namespace chainring {

/// Element of R^t = F_{p^m}[u]/<u^t>; parts[i] multiplies u^i and the
/// vector always has exactly t entries.
struct RtElem {
  std::vector<Fq> parts;

  bool operator==(const RtElem&) const = default;
};

/// Arithmetic for R^t = F_{p^m}[u]/<u^t>, a chain ring with maximal ideal
/// <u>. Lightweight value type: copy freely.
class ChainRing {
 public:
  ChainRing(FieldCtxPtr field, int t);

  const FieldContext& field() const { return *field_; }
  const FieldCtxPtr& field_ptr() const { return field_; }
  int t() const { return t_; }

  /// Same field, truncated nilpotency depth (for reduce_mod_u results).
  ChainRing truncated(int j) const { return ChainRing(field_, j); }

  RtElem zero() const;
  RtElem one() const;
  RtElem from_scalar(Fq a) const;
  RtElem make(std::vector<Fq> parts) const;  // InvalidInput unless t entries
  RtElem from_digit_rows(const std::vector<std::vector<int>>& rows) const;

  bool is_zero(const RtElem& a) const;
  bool is_unit(const RtElem& a) const { return a.parts[0] != 0; }
  /// Smallest i with parts[i] != 0; t for the zero element.
  int u_valuation(const RtElem& a) const;

  RtElem add(const RtElem& a, const RtElem& b) const;
  RtElem sub(const RtElem& a, const RtElem& b) const;
  RtElem neg(const RtElem& a) const;
  RtElem mul(const RtElem& a, const RtElem& b) const;
  RtElem mul_scalar(Fq s, const RtElem& a) const;
  RtElem pow(const RtElem& a, long long e) const;
  RtElem inv(const RtElem& a) const;  // NotAUnit on non-units

  /// A unit is an n-th power here iff its residue is one in the field
  /// (gcd(n, p) = 1). Non-units are rejected: NotAUnit.
  bool is_nth_power(const RtElem& a, long long n) const;

  /// Some b with b^n = a, found by lifting a field witness one u-digit at a
  /// time. NotAnNthPower when there is none; the result is post-verified and
  /// a lift failure after a positive power test raises ParadoxError.
  RtElem nth_root(const RtElem& a, long long n) const;

  /// Image in R^j under u^j |-> 0; requires 1 <= j <= t.
  RtElem reduce_mod_u(const RtElem& a, int j) const;

  std::string to_string(const RtElem& a) const;

 private:
  FieldCtxPtr field_;
  int t_;
};

}  // namespace chainring
