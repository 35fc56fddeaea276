#include "chainring/chain_ring.hpp"

#include <numeric>
#include <sstream>

namespace chainring {

ChainRing::ChainRing(FieldCtxPtr field, int t) : field_(std::move(field)), t_(t) {
  if (!field_) throw InvalidInput("null field context");
  if (t_ < 1) throw InvalidInput("t must be >= 1");
}

RtElem ChainRing::zero() const { return {std::vector<Fq>(t_, 0)}; }

RtElem ChainRing::one() const { return from_scalar(1); }

RtElem ChainRing::from_scalar(Fq a) const {
  RtElem r = zero();
  r.parts[0] = a;
  return r;
}

RtElem ChainRing::make(std::vector<Fq> parts) const {
  if (static_cast<int>(parts.size()) != t_)
    throw InvalidInput("chain ring element needs exactly t parts");
  for (Fq x : parts)
    if (x >= field_->q()) throw InvalidInput("part outside the field");
  return {std::move(parts)};
}

RtElem ChainRing::from_digit_rows(const std::vector<std::vector<int>>& rows) const {
  if (static_cast<int>(rows.size()) > t_)
    throw InvalidInput("more digit groups than u-powers");
  RtElem r = zero();
  for (std::size_t i = 0; i < rows.size(); ++i) r.parts[i] = field_->from_digits(rows[i]);
  return r;
}

bool ChainRing::is_zero(const RtElem& a) const { return u_valuation(a) == t_; }

int ChainRing::u_valuation(const RtElem& a) const {
  for (int i = 0; i < t_; ++i)
    if (a.parts[i] != 0) return i;
  return t_;
}

RtElem ChainRing::add(const RtElem& a, const RtElem& b) const {
  RtElem r = zero();
  for (int i = 0; i < t_; ++i) r.parts[i] = field_->add(a.parts[i], b.parts[i]);
  return r;
}

RtElem ChainRing::sub(const RtElem& a, const RtElem& b) const {
  RtElem r = zero();
  for (int i = 0; i < t_; ++i) r.parts[i] = field_->sub(a.parts[i], b.parts[i]);
  return r;
}

RtElem ChainRing::neg(const RtElem& a) const {
  RtElem r = zero();
  for (int i = 0; i < t_; ++i) r.parts[i] = field_->neg(a.parts[i]);
  return r;
}

RtElem ChainRing::mul(const RtElem& a, const RtElem& b) const {
  RtElem r = zero();
  for (int i = 0; i < t_; ++i) {
    if (a.parts[i] == 0) continue;
    for (int j = 0; i + j < t_; ++j)
      r.parts[i + j] = field_->add(r.parts[i + j], field_->mul(a.parts[i], b.parts[j]));
  }
  return r;
}

RtElem ChainRing::mul_scalar(Fq s, const RtElem& a) const {
  RtElem r = zero();
  for (int i = 0; i < t_; ++i) r.parts[i] = field_->mul(s, a.parts[i]);
  return r;
}

RtElem ChainRing::pow(const RtElem& a, long long e) const {
  if (e < 0) throw InvalidInput("negative exponent");
  RtElem r = one();
  RtElem base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

RtElem ChainRing::inv(const RtElem& a) const {
  if (!is_unit(a)) throw NotAUnit("chain ring inverse of a non-unit");
  // Solve (sum a_i u^i)(sum b_j u^j) = 1 one u-digit at a time; each step is
  // determined because a_0 is invertible.
  RtElem b = zero();
  const Fq a0inv = field_->inv(a.parts[0]);
  b.parts[0] = a0inv;
  for (int j = 1; j < t_; ++j) {
    Fq acc = 0;
    for (int i = 1; i <= j; ++i) acc = field_->add(acc, field_->mul(a.parts[i], b.parts[j - i]));
    b.parts[j] = field_->neg(field_->mul(a0inv, acc));
  }
  return b;
}

bool ChainRing::is_nth_power(const RtElem& a, long long n) const {
  if (n < 1) throw InvalidInput("n must be >= 1");
  if (std::gcd(n, field_->p()) != 1)
    throw UnsupportedParameter("n divisible by p is unsupported");
  if (!is_unit(a)) throw NotAUnit("n-th power test is for units");
  return field_->is_nth_power(a.parts[0], n);
}

RtElem ChainRing::nth_root(const RtElem& a, long long n) const {
  if (!is_nth_power(a, n)) throw NotAnNthPower("element is not an n-th power");
  RtElem b = from_scalar(*field_->nth_power_witness(a.parts[0], n));
  // With b correct through u^{j-1}, adding u^j c changes the u^j digit of b^n
  // by n*b0^{n-1}*c, so one digit is forced per level.
  const Fq step_inv =
      field_->inv(field_->mul(field_->from_int(n % field_->p()), field_->pow(b.parts[0], n - 1)));
  for (int j = 1; j < t_; ++j) {
    const RtElem bn = pow(b, n);
    const Fq miss = field_->sub(a.parts[j], bn.parts[j]);
    b.parts[j] = field_->mul(step_inv, miss);
  }
  if (!(pow(b, n) == a)) throw ParadoxError("n-th root lift failed post-check");
  return b;
}

RtElem ChainRing::reduce_mod_u(const RtElem& a, int j) const {
  if (j < 1 || j > t_) throw InvalidInput("reduction target must satisfy 1 <= j <= t");
  RtElem r;
  r.parts.assign(a.parts.begin(), a.parts.begin() + j);
  return r;
}

std::string ChainRing::to_string(const RtElem& a) const {
  if (is_zero(a)) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < t_; ++i) {
    if (a.parts[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 1) os << "u*";
    if (i > 1) os << "u^" << i << "*";
    os << field_->to_string(a.parts[i]);
  }
  return os.str();
}

}  // namespace chainring
