#include "chainring/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace chainring {

namespace {

// Everything here operates on polynomials over Z_p as little-endian digit
// vectors; it is only used to bootstrap the lookup tables.

constexpr std::int64_t kMaxQ = 1024;

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using ZPoly = std::vector<int>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b, coefficients mod p.
ZPoly zmod(ZPoly a, const ZPoly& b, std::int64_t p) {
  ztrim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const long long c = a.back();
    for (int i = 0; i <= db; ++i) {
      long long v = a[shift + i] - c * b[i];
      a[shift + i] = static_cast<int>(((v % p) + p) % p);
    }
    ztrim(a);
  }
  return a;
}

ZPoly zmulmod(const ZPoly& a, const ZPoly& b, const ZPoly& mod, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<int>((out[i + j] + static_cast<long long>(a[i]) * b[j]) % p);
  return zmod(std::move(out), mod, p);
}

// Monic degree-d polynomial over Z_p from its base-p value.
ZPoly zmonic_by_value(int d, std::uint64_t value, std::int64_t p) {
  ZPoly g(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    g[i] = static_cast<int>(value % p);
    value /= static_cast<std::uint64_t>(p);
  }
  g[d] = 1;
  return g;
}

bool zis_irreducible(const ZPoly& f, std::int64_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    std::uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t v = 0; v < count; ++v) {
      ZPoly g = zmonic_by_value(dd, v, p);
      if (zmod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> zdefault_modulus(std::int64_t p, int m) {
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t v = 0; v < count; ++v) {
    ZPoly g = zmonic_by_value(m, v, p);
    if (zis_irreducible(g, p)) return g;
  }
  throw Error("no irreducible modulus found");  // unreachable: they exist
}

}  // namespace

FieldCtxPtr FieldContext::make(std::int64_t p, int m) {
  if (!is_prime(p)) throw InvalidInput("p must be prime, got " + std::to_string(p));
  if (m < 1) throw InvalidInput("m must be >= 1, got " + std::to_string(m));
  return make(p, m, zdefault_modulus(p, m));
}

FieldCtxPtr FieldContext::make(std::int64_t p, int m, std::vector<int> modulus) {
  if (!is_prime(p)) throw InvalidInput("p must be prime, got " + std::to_string(p));
  if (m < 1) throw InvalidInput("m must be >= 1, got " + std::to_string(m));
  std::int64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxQ)
      throw TooLarge("p^m exceeds the table cap " + std::to_string(kMaxQ));
  }
  if (static_cast<int>(modulus.size()) != m + 1)
    throw InvalidInput("modulus must have m+1 digits");
  for (int d : modulus)
    if (d < 0 || d >= p) throw InvalidInput("modulus digit out of range");
  if (modulus.back() != 1) throw InvalidInput("modulus must be monic");
  if (!zis_irreducible(modulus, p)) throw InvalidInput("modulus is reducible");

  auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
  ctx->p_ = p;
  ctx->m_ = m;
  ctx->q_ = q;
  ctx->modulus_ = std::move(modulus);
  ctx->build_tables();
  return ctx;
}

void FieldContext::build_tables() {
  const std::size_t q = static_cast<std::size_t>(q_);
  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);

  auto decode = [&](Fq a) {
    ZPoly d(m_);
    std::int64_t v = a;
    for (int i = 0; i < m_; ++i) {
      d[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    return d;
  };
  auto encode = [&](const ZPoly& d) {
    std::int64_t v = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p_ + d[i];
    return static_cast<Fq>(v);
  };

  std::vector<ZPoly> dig(q);
  for (std::size_t a = 0; a < q; ++a) dig[a] = decode(static_cast<Fq>(a));

  for (std::size_t a = 0; a < q; ++a) {
    ZPoly nd(m_);
    for (int i = 0; i < m_; ++i) nd[i] = static_cast<int>((p_ - dig[a][i]) % p_);
    neg_[a] = encode(nd);
    for (std::size_t b = a; b < q; ++b) {
      ZPoly sd(m_);
      for (int i = 0; i < m_; ++i) sd[i] = static_cast<int>((dig[a][i] + dig[b][i]) % p_);
      const Fq s = encode(sd);
      add_[a * q + b] = s;
      add_[b * q + a] = s;
    }
  }
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a; b < q; ++b) {
      ZPoly pd = zmulmod(dig[a], dig[b], modulus_, p_);
      pd.resize(m_, 0);
      const Fq prod = encode(pd);
      mul_[a * q + b] = prod;
      mul_[b * q + a] = prod;
      if (prod == 1) {
        inv_[a] = static_cast<Fq>(b);
        inv_[b] = static_cast<Fq>(a);
      }
    }
  }
}

Fq FieldContext::inv(Fq a) const {
  if (a == 0) throw DivisionByZero("field inverse of zero");
  return inv_[a];
}

Fq FieldContext::pow(Fq a, long long e) const {
  if (e < 0) throw InvalidInput("negative exponent");
  Fq r = 1;
  Fq base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Fq FieldContext::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Fq>(r);
}

Fq FieldContext::from_digits(const std::vector<int>& d) const {
  if (static_cast<int>(d.size()) > m_) throw InvalidInput("too many digits for field element");
  std::int64_t v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
    if (d[i] < 0 || d[i] >= p_) throw InvalidInput("digit out of range [0, p)");
    v = v * p_ + d[i];
  }
  return static_cast<Fq>(v);
}

std::vector<int> FieldContext::digits(Fq a) const {
  std::vector<int> d(m_);
  std::int64_t v = a;
  for (int i = 0; i < m_; ++i) {
    d[i] = static_cast<int>(v % p_);
    v /= p_;
  }
  return d;
}

Fq FieldContext::ps_root(Fq a, int s) const {
  if (s < 0) throw InvalidInput("s must be >= 0");
  const int r = s % m_;
  if (r == 0) return a;
  long long e = 1;
  for (int i = 0; i < m_ - r; ++i) e *= p_;
  return pow(a, e);  // (a^{p^{m-r}})^{p^s} = a^{p^{m(1+s/m ...)}} = a
}

std::optional<Fq> FieldContext::nth_power_witness(Fq a, long long n) const {
  if (n < 1) throw InvalidInput("n must be >= 1");
  if (std::gcd(n, p_) != 1)
    throw UnsupportedParameter("n divisible by p is unsupported");
  if (a == 0) return Fq{0};
  const long long g = std::gcd(n, q_ - 1);
  if (pow(a, (q_ - 1) / g) != 1) return std::nullopt;
  for (std::int64_t b = 1; b < q_; ++b)
    if (pow(static_cast<Fq>(b), n) == a) return static_cast<Fq>(b);
  throw ParadoxError("n-th power criterion held but no witness exists");
}

// --- polynomials -------------------------------------------------------------

namespace {
void ftrim(FieldPoly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}
}  // namespace

FieldPoly FieldContext::pconst(Fq a) const {
  FieldPoly f;
  if (a != 0) f.c = {a};
  return f;
}

FieldPoly FieldContext::pmonomial(int e, Fq a) const {
  FieldPoly f;
  if (a != 0) {
    f.c.assign(e + 1, 0);
    f.c[e] = a;
  }
  return f;
}

FieldPoly FieldContext::pfrom(const std::vector<long long>& ints) const {
  FieldPoly f;
  f.c.reserve(ints.size());
  for (long long v : ints) f.c.push_back(from_int(v));
  ftrim(f);
  return f;
}

FieldPoly FieldContext::padd(const FieldPoly& a, const FieldPoly& b) const {
  FieldPoly out;
  out.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < out.c.size(); ++i)
    out.c[i] = add(i < a.c.size() ? a.c[i] : Fq{0}, i < b.c.size() ? b.c[i] : Fq{0});
  ftrim(out);
  return out;
}

FieldPoly FieldContext::psub(const FieldPoly& a, const FieldPoly& b) const {
  return padd(a, pneg(b));
}

FieldPoly FieldContext::pneg(const FieldPoly& a) const {
  FieldPoly out = a;
  for (Fq& x : out.c) x = neg(x);
  return out;
}

FieldPoly FieldContext::pscale(Fq s, const FieldPoly& a) const {
  if (s == 0) return {};
  FieldPoly out = a;
  for (Fq& x : out.c) x = mul(s, x);
  ftrim(out);
  return out;
}

FieldPoly FieldContext::pmul(const FieldPoly& a, const FieldPoly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  FieldPoly out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = add(out.c[i + j], mul(a.c[i], b.c[j]));
  }
  ftrim(out);
  return out;
}

FieldPoly FieldContext::ppow(const FieldPoly& a, long long e) const {
  if (e < 0) throw InvalidInput("negative exponent");
  FieldPoly r = pconst(1);
  FieldPoly base = a;
  while (e > 0) {
    if (e & 1) r = pmul(r, base);
    base = pmul(base, base);
    e >>= 1;
  }
  return r;
}

std::pair<FieldPoly, FieldPoly> FieldContext::pdivmod(const FieldPoly& a,
                                                      const FieldPoly& b) const {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  FieldPoly rem = a;
  FieldPoly quot;
  const int db = b.deg();
  const Fq lead_inv = inv(b.lead());
  if (rem.deg() >= db) quot.c.assign(rem.deg() - db + 1, 0);
  while (rem.deg() >= db) {
    const int shift = rem.deg() - db;
    const Fq f = mul(rem.lead(), lead_inv);
    quot.c[shift] = f;
    for (int i = 0; i <= db; ++i)
      rem.c[shift + i] = sub(rem.c[shift + i], mul(f, b.c[i]));
    ftrim(rem);
  }
  ftrim(quot);
  return {quot, rem};
}

FieldPoly FieldContext::pmonic(const FieldPoly& a) const {
  if (a.is_zero()) throw DivisionByZero("cannot normalize the zero polynomial");
  return pscale(inv(a.lead()), a);
}

FieldPoly FieldContext::pgcd(FieldPoly a, FieldPoly b) const {
  while (!b.is_zero()) {
    FieldPoly r = pmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return pmonic(a);
}

FieldContext::XGcd FieldContext::pxgcd(const FieldPoly& a, const FieldPoly& b) const {
  FieldPoly r0 = a, r1 = b;
  FieldPoly s0 = pconst(1), s1 = pzero();
  FieldPoly t0 = pzero(), t1 = pconst(1);
  while (!r1.is_zero()) {
    auto [qt, rm] = pdivmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rm);
    FieldPoly s2 = psub(s0, pmul(qt, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    FieldPoly t2 = psub(t0, pmul(qt, t1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Fq f = inv(r0.lead());
  return {pscale(f, r0), pscale(f, s0), pscale(f, t0)};
}

bool FieldContext::pless(const FieldPoly& a, const FieldPoly& b) const {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

FieldPoly FieldContext::monic_by_value(int d, std::uint64_t value) const {
  FieldPoly g;
  g.c.assign(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    g.c[i] = static_cast<Fq>(value % static_cast<std::uint64_t>(q_));
    value /= static_cast<std::uint64_t>(q_);
  }
  g.c[d] = 1;
  return g;
}

bool FieldContext::pis_irreducible(const FieldPoly& f) const {
  const int d = f.deg();
  if (d < 1) return false;
  if (d == 1) return true;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    std::uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= static_cast<std::uint64_t>(q_);
    for (std::uint64_t v = 0; v < count; ++v) {
      if (pmod(f, monic_by_value(dd, v)).is_zero()) return false;
    }
  }
  return true;
}

std::vector<std::pair<FieldPoly, int>> FieldContext::factorize(const FieldPoly& f) const {
  if (f.deg() < 1) throw InvalidInput("factorize needs degree >= 1");
  if (f.lead() != 1) throw InvalidInput("factorize needs a monic polynomial");
  std::vector<std::pair<FieldPoly, int>> out;
  FieldPoly cur = f;
  for (int d = 1; 2 * d <= cur.deg(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(q_);
    for (std::uint64_t v = 0; v < count && 2 * d <= cur.deg(); ++v) {
      FieldPoly g = monic_by_value(d, v);
      int mult = 0;
      for (;;) {
        auto [qt, rm] = pdivmod(cur, g);
        if (!rm.is_zero()) break;
        cur = std::move(qt);
        ++mult;
      }
      if (mult > 0) out.emplace_back(std::move(g), mult);
    }
  }
  if (cur.deg() >= 1) out.emplace_back(cur, 1);

  // Candidates are visited in pless order and divided out completely, so the
  // list is already sorted; re-multiplying is a cheap self-check.
  FieldPoly check = pconst(1);
  for (const auto& [g, mult] : out)
    for (int i = 0; i < mult; ++i) check = pmul(check, g);
  if (!(check == f)) throw Error("factorization self-check failed");
  return out;
}

std::string FieldContext::to_string(Fq a) const {
  std::ostringstream os;
  os << '[';
  const auto d = digits(a);
  for (int i = 0; i < m_; ++i) {
    if (i) os << ',';
    os << d[i];
  }
  os << ']';
  return os.str();
}

std::string FieldContext::to_string(const FieldPoly& f) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (i) os << ',';
    os << to_string(f.c[i]);
  }
  os << ']';
  return os.str();
}

}  // namespace chainring
