#include "chainring/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "chainring/decompose.hpp"
#include "chainring/errors.hpp"

namespace chainring {

namespace {

struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  RingContext::Vec vec(const RingContext& R) {
    RingContext::Vec v(R.dim());
    for (int i = 0; i < R.dim(); ++i) v[i] = static_cast<Fq>(next() % R.q());
    return v;
  }
};

std::vector<Ideal> enumerate_core(const RingCtxPtr& ring, std::uint64_t cap,
                                  std::set<std::string>* principal_keys) {
  const RingContext& R = *ring;
  if (!R.count_at_most(cap)) throw TooLarge("ring larger than the enumeration cap");
  const std::uint64_t count = *R.element_count();

  std::map<std::string, Ideal> found;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Ideal I = Ideal::span(ring, {R.vec_from_index(idx)});
    std::string key = I.key();
    if (principal_keys) principal_keys->insert(key);
    found.emplace(std::move(key), std::move(I));
  }

  // Pairwise-sum closure. Fresh ideals join the pool, and the loop pairs
  // every pool member with all earlier ones, so ending the loop is reaching
  // the fixpoint.
  std::vector<Ideal> pool;
  pool.reserve(found.size());
  for (const auto& kv : found) pool.push_back(kv.second);
  constexpr std::size_t kLatticeBound = std::size_t{1} << 20;
  for (std::size_t i = 1; i < pool.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Ideal sum = ideal_sum(pool[i], pool[j]);
      std::string key = sum.key();
      if (found.find(key) != found.end()) continue;
      found.emplace(std::move(key), sum);
      pool.push_back(std::move(sum));
      if (pool.size() > kLatticeBound)
        throw ParadoxError("ideal closure exceeded the lattice bound");
    }

  std::vector<Ideal> out;
  out.reserve(found.size());
  for (auto& kv : found) out.push_back(std::move(kv.second));
  return out;
}

std::string poly_text(const FieldContext& F, const FieldPoly& g) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < g.c.size(); ++i) os << (i ? "," : "") << g.c[i];
  os << "]";
  (void)F;
  return os.str();
}

class Verifier {
 public:
  Verifier(RingCtxPtr ring, const VerifyOptions& opt)
      : ring_(std::move(ring)), R_(*ring_), opt_(opt) {
    report_.ring = ring_;
    for (const auto& name : oracle_coverage_ops()) cover_[name] = 0;
  }

  CensusReport run() {
    representations();
    unit_criterion();
    power_detection();
    wrap_valuation();
    nilpotency();
    trace_relation();
    census();
    torsion_monotone();
    torsion_product();
    torsion_membership();
    eight_types();
    parameter_sweep();
    chain_certificate();
    crt_transport();
    build_entries();
    for (const auto& name : oracle_coverage_ops())
      report_.coverage.emplace_back(name, cover_[name]);
    return std::move(report_);
  }

 private:
  AssertionResult& begin(const std::string& name) {
    report_.assertions.push_back({name, true, true, 0, ""});
    return report_.assertions.back();
  }

  static void skip(AssertionResult& a, const std::string& why) {
    a.applicable = false;
    a.detail = why;
  }

  template <typename F>
  static void check(AssertionResult& a, bool ok, F&& detail_fn) {
    ++a.checks;
    if (!ok && a.passed) {
      a.passed = false;
      a.detail = detail_fn();
    }
  }

  void hit(const std::string& op, std::uint64_t n = 1) { cover_[op] += n; }

  /// Visits every element when the ring is small, a seeded sample otherwise.
  template <typename F>
  void for_elements(F&& fn) {
    if (R_.count_at_most(opt_.exhaustive_cap)) {
      const std::uint64_t n = *R_.element_count();
      for (std::uint64_t i = 0; i < n; ++i) fn(R_.vec_from_index(i));
      return;
    }
    Lcg rng(opt_.seed);
    for (int i = 0; i < opt_.samples; ++i) fn(rng.vec(R_));
  }

  bool family_ring() const {
    return R_.t() == 3 && R_.k() == 2 && R_.phi_irreducible();
  }

  // --- assertions ------------------------------------------------------------

  void representations() {
    auto& a = begin("representation_roundtrip");
    for_elements([&](const RingContext::Vec& v) {
      check(a, R_.from_std(R_.to_std(v)) == v,
            [&] { return "std-form roundtrip broke at " + R_.to_string(v); });
      if (!R_.vis_zero(v))
        check(a, R_.recompose(R_.levelwise_normal_form(v)) == v,
              [&] { return "normal-form roundtrip broke at " + R_.to_string(v); });
    });
  }

  void unit_criterion() {
    auto& a = begin("unit_criterion");
    RingContext::Vec one = R_.one().coords;
    for_elements([&](const RingContext::Vec& v) {
      bool fast = R_.is_unit(v);
      auto inv = R_.solve_inverse(v);
      hit("is_unit");
      check(a, fast == inv.has_value(),
            [&] { return "unit criterion disagrees with solvability at " + R_.to_string(v); });
      if (inv)
        check(a, R_.vmul(v, *inv) == one,
              [&] { return "solved inverse fails at " + R_.to_string(v); });
    });
    // All-pairs route: a unit is an element with a multiplicative partner.
    if (R_.count_at_most(opt_.literal_pair_cap)) {
      const std::uint64_t n = *R_.element_count();
      for (std::uint64_t i = 0; i < n; ++i) {
        RingContext::Vec v = R_.vec_from_index(i);
        bool literal = false;
        for (std::uint64_t j = 0; j < n && !literal; ++j)
          literal = R_.vmul(v, R_.vec_from_index(j)) == one;
        hit("is_unit");
        check(a, literal == R_.is_unit(v),
              [&] { return "pairwise scan disagrees at " + R_.to_string(v); });
      }
    }
  }

  void power_detection() {
    auto& a = begin("power_detection");
    const FieldContext& F = R_.field();
    for (long long n : {2LL, 3LL}) {
      if (std::gcd(n, static_cast<long long>(F.p())) != 1) continue;
      std::vector<char> literal(static_cast<std::size_t>(F.q()), 0);
      for (Fq b = 0; b < F.q(); ++b) literal[F.pow(b, n)] = 1;
      for (Fq x = 0; x < F.q(); ++x) {
        auto w = F.nth_power_witness(x, n);
        hit("nth_power");
        check(a, w.has_value() == (literal[x] != 0),
              [&] { return "field power test disagrees at scalar " + std::to_string(x); });
        if (w)
          check(a, F.pow(*w, n) == x,
                [&] { return "field witness is not a root at scalar " + std::to_string(x); });
      }
    }
    for (Fq x = 0; x < F.q(); ++x) {
      hit("ps_root");
      check(a, F.pow(F.ps_root(x, R_.s()), R_.pss()) == x,
            [&] { return "p^s-th root fails at scalar " + std::to_string(x); });
    }

    // Coefficient-ring route, against a literal power table.
    ChainRing Rt = R_.coeff_ring();
    std::uint64_t rt_count = 1;
    for (int i = 0; i < R_.t() && rt_count <= opt_.exhaustive_cap; ++i)
      rt_count *= static_cast<std::uint64_t>(F.q());
    if (rt_count > opt_.exhaustive_cap) return;
    std::vector<RtElem> elems;
    elems.reserve(rt_count);
    for (std::uint64_t idx = 0; idx < rt_count; ++idx) {
      std::vector<Fq> parts(R_.t());
      std::uint64_t rest = idx;
      for (int i = 0; i < R_.t(); ++i) {
        parts[i] = static_cast<Fq>(rest % F.q());
        rest /= static_cast<std::uint64_t>(F.q());
      }
      elems.push_back(Rt.make(std::move(parts)));
    }
    for (long long n : {2LL, 3LL}) {
      if (std::gcd(n, static_cast<long long>(F.p())) != 1) continue;
      std::set<std::vector<Fq>> powers;
      for (const RtElem& b : elems) powers.insert(Rt.pow(b, n).parts);
      for (const RtElem& e : elems) {
        if (!Rt.is_unit(e)) continue;
        bool literal = powers.count(e.parts) != 0;
        hit("nth_power");
        check(a, Rt.is_nth_power(e, n) == literal,
              [&] { return "coefficient-ring power test disagrees at " + Rt.to_string(e); });
        if (literal) {
          RtElem root = Rt.nth_root(e, n);
          hit("nth_root");
          check(a, Rt.pow(root, n) == e,
                [&] { return "lifted root is not a root at " + Rt.to_string(e); });
        }
      }
    }
  }

  void wrap_valuation() {
    auto& a = begin("wrap_valuation");
    RingContext::Vec pe = R_.vpow(R_.phi_elem().coords, R_.pss());
    std::optional<int> honest;
    for (int l = 0; l < R_.t() && !honest; ++l)
      if (!R_.level_poly(pe, l).is_zero()) honest = l;
    hit("k_valuation");
    check(a, honest == R_.k(), [&] {
      return "u-valuation of phi^{p^s} is " + (honest ? std::to_string(*honest) : "absent") +
             " but the ring says " + (R_.k() ? std::to_string(*R_.k()) : "absent");
    });
  }

  void nilpotency() {
    auto& a = begin("nilpotency_index");
    RingContext::Vec p = R_.phi_elem().coords;
    RingContext::Vec acc = R_.one().coords;
    for (int e = 1; e <= R_.nilp_index(); ++e) {
      acc = R_.vmul(acc, p);
      if (e < R_.nilp_index())
        check(a, !R_.vis_zero(acc),
              [&] { return "phi vanished early, at exponent " + std::to_string(e); });
      else
        check(a, R_.vis_zero(acc),
              [&] { return "phi^{nilp_index} is nonzero"; });
    }
    hit("nilp_index", static_cast<std::uint64_t>(R_.nilp_index()));
  }

  void trace_relation() {
    auto& a = begin("trace_relation");
    if (R_.spec().kind != ModulusKind::quadratic_trace) {
      skip(a, "constacyclic modulus");
      return;
    }
    ChainRing Rt = R_.coeff_ring();
    const RtElem& dt = R_.spec().constant;
    RingContext::Vec lhs = R_.vpow(R_.x_elem().coords, 2 * R_.pss());
    lhs = R_.vadd(lhs, R_.vmul(R_.from_chain_const(dt).coords,
                               R_.vpow(R_.x_elem().coords, R_.pss())));
    lhs = R_.vadd(lhs, R_.from_chain_const(Rt.mul(dt, dt)).coords);
    check(a, R_.vis_zero(lhs), [&] { return "modulus relation fails in the quotient"; });

    const FieldContext& F = R_.field();
    Fq r = *R_.alpha0();
    check(a, F.pow(r, R_.pss()) == dt.parts[0],
          [&] { return "alpha0 is not a p^s-th root of the constant's residue"; });
    FieldPoly want;
    want.c = {F.mul(r, r), r, 1};
    check(a, R_.phi() == want, [&] { return "base polynomial is not x^2 + r x + r^2"; });
  }

  void census() {
    auto& a = begin("ideal_census");
    try {
      lattice_ = enumerate_core(ring_, opt_.enum_cap, &principal_keys_);
    } catch (const TooLarge&) {
      skip(a, "ring larger than the enumeration cap");
      return;
    }
    report_.enumerated = true;
    report_.ideal_count = lattice_->size();
    a.checks = lattice_->size();
    bool has_zero = false, has_unit = false;
    for (const Ideal& I : *lattice_) {
      if (I.dim() == 0) has_zero = true;
      if (I.dim() == R_.dim()) has_unit = true;
    }
    check(a, has_zero && has_unit,
          [&] { return "census is missing the zero or the unit ideal"; });
  }

  void torsion_monotone() {
    auto& a = begin("torsion_monotone");
    if (!lattice_ || !R_.phi_irreducible()) {
      skip(a, lattice_ ? "reducible base polynomial" : "census unavailable");
      return;
    }
    for (const Ideal& I : *lattice_) {
      std::vector<int> prof = I.torsion_profile();
      hit("torsion_degree", prof.size());
      for (std::size_t l = 0; l < prof.size(); ++l) {
        check(a, prof[l] >= 0 && prof[l] <= R_.pss(),
              [&] { return "torsion degree out of range"; });
        if (l > 0)
          check(a, prof[l - 1] >= prof[l],
                [&] { return "torsion profile increases at level " + std::to_string(l); });
      }
    }
  }

  void torsion_product() {
    auto& a = begin("torsion_product");
    if (!lattice_ || !R_.phi_irreducible()) {
      skip(a, lattice_ ? "reducible base polynomial" : "census unavailable");
      return;
    }
    for (const Ideal& I : *lattice_) {
      int expo = I.cardinality_exponent();
      hit("cardinality_exponent");
      std::vector<int> prof = I.torsion_profile();
      int sum = 0;
      for (int tl : prof) sum += tl;
      int want = R_.m() * R_.deg_phi() * (R_.t() * R_.pss() - sum);
      check(a, expo == want, [&] {
        return "cardinality exponent " + std::to_string(expo) + " but torsion law gives " +
               std::to_string(want);
      });
    }
  }

  void torsion_membership() {
    auto& a = begin("torsion_membership");
    if (!lattice_ || !R_.phi_irreducible()) {
      skip(a, lattice_ ? "reducible base polynomial" : "census unavailable");
      return;
    }
    for (const Ideal& I : *lattice_)
      for (int l = 0; l < R_.t(); ++l) {
        hit("smallest_u_level_exponent");
        check(a, I.smallest_u_level_exponent(l) == I.torsion_degree(l), [&] {
          return "pivot torsion and membership torsion disagree at level " + std::to_string(l);
        });
      }
  }

  void eight_types() {
    auto& a = begin("eight_types");
    if (!lattice_) {
      skip(a, "census unavailable");
      return;
    }
    if (!family_ring()) {
      skip(a, "not a t = 3, <phi^{p^s}> = <u^2> ring with irreducible base");
      return;
    }
    std::map<std::string, std::string> tuple_to_key;
    int trivial_seen = 0;
    for (const Ideal& I : *lattice_) {
      IdealTypeInfo info;
      try {
        info = classify_t3(I);
      } catch (const ClassificationFailure& e) {
        check(a, false, [&] { return std::string("unclassified ideal: ") + e.what(); });
        continue;
      }
      hit("classify_t3");
      check(a, info.tag >= 1 && info.tag <= 8,
            [&] { return "tag out of range: " + std::to_string(info.tag); });
      check(a, Ideal::span(ring_, info.generators) == I,
            [&] { return "template generators do not re-span the ideal"; });

      std::vector<int> prof = I.torsion_profile();
      auto eq = [&](const std::optional<int>& got, int want) {
        return got.has_value() && *got == want;
      };
      switch (info.tag) {
        case 1:
          ++trivial_seen;
          check(a, I.dim() == 0 || I.dim() == R_.dim(),
                [&] { return "tag 1 on a proper nonzero ideal"; });
          break;
        case 2:
          check(a, eq(info.a, prof[2]) && prof[0] == R_.pss() && prof[1] == R_.pss(),
                [&] { return "tag 2 parameters disagree with the torsion profile"; });
          break;
        case 3:
          check(a, eq(info.a, prof[1]) && eq(info.L, prof[2]) && prof[0] == R_.pss(),
                [&] { return "tag 3 parameters disagree with the torsion profile"; });
          break;
        case 4:
          check(a, eq(info.a, prof[1]) && eq(info.b, prof[2]) && prof[0] == R_.pss(),
                [&] { return "tag 4 parameters disagree with the torsion profile"; });
          break;
        case 5:
          check(a, eq(info.a, prof[0]) && eq(info.L, prof[1]) && eq(info.M, prof[2]),
                [&] { return "tag 5 parameters disagree with the torsion profile"; });
          break;
        case 6:
          check(a, eq(info.a, prof[0]) && eq(info.M, prof[1]) && eq(info.b, prof[2]),
                [&] { return "tag 6 parameters disagree with the torsion profile"; });
          break;
        case 7:
          check(a, eq(info.a, prof[0]) && eq(info.b, prof[1]) && eq(info.M, prof[2]),
                [&] { return "tag 7 parameters disagree with the torsion profile"; });
          break;
        case 8:
          check(a, eq(info.a, prof[0]) && eq(info.b, prof[1]) && eq(info.c, prof[2]),
                [&] { return "tag 8 parameters disagree with the torsion profile"; });
          break;
        default:
          break;
      }

      // Tag 1 is exactly the two trivial ideals; every other tag's parameter
      // tuple pins the ideal uniquely.
      if (info.tag != 1) {
        const FieldContext& F = R_.field();
        std::ostringstream tuple;
        auto opt_text = [](const std::optional<int>& v) {
          return v ? std::to_string(*v) : std::string("-");
        };
        tuple << info.tag << '|' << opt_text(info.a) << '|' << opt_text(info.b) << '|'
              << opt_text(info.c) << '|' << opt_text(info.t0) << '|' << opt_text(info.t1) << '|'
              << opt_text(info.t2) << '|' << poly_text(F, info.h0) << '|'
              << poly_text(F, info.h1) << '|' << poly_text(F, info.h2);
        auto [it, fresh] = tuple_to_key.emplace(tuple.str(), I.key());
        check(a, fresh || it->second == I.key(),
              [&] { return "two distinct ideals share the parameter tuple " + tuple.str(); });
      }

      types_by_key_.emplace(I.key(), std::move(info));
    }
    check(a, trivial_seen == 2,
          [&] { return "expected exactly the two trivial ideals under tag 1"; });
  }

  void parameter_sweep() {
    auto& a = begin("parameter_sweep");
    if (!family_ring()) {
      skip(a, "not a t = 3, <phi^{p^s}> = <u^2> ring with irreducible base");
      return;
    }
    if (R_.q() > 9) {
      skip(a, "cofactor sweep too wide for this field");
      return;
    }
    const FieldContext& F = R_.field();
    std::vector<FieldPoly> hs{F.pzero()};
    for (Fq c = 1; c < R_.q(); ++c) hs.push_back(F.pconst(c));
    hs.push_back(F.padd(F.pconst(1), R_.phi()));

    auto term = [&](int level, int e, const FieldPoly& h) {
      return R_.vmul(R_.monomial(level, e, 0).coords, R_.from_field_poly(h).coords);
    };

    const int pss = R_.pss();
    for (int av = 1; av <= pss - 1; ++av)
      for (int tv = 0; tv < av; ++tv)
        for (const FieldPoly& h : hs) {
          RingContext::Vec gen = R_.monomial(1, av, 0).coords;
          if (!h.is_zero()) gen = R_.vadd(gen, term(2, tv, h));
          Ideal I = Ideal::span(ring_, {gen});
          hit("closed_form_L_type3");
          check(a, closed_form_L_type3(R_, av, tv, h) == I.smallest_u_level_exponent(2),
                [&] {
                  return "level-1 closed form disagrees at a=" + std::to_string(av) +
                         " t=" + std::to_string(tv) + " h=" + poly_text(F, h);
                });
        }

    for (int av = 1; av <= pss - 1; ++av)
      for (int t0 = 0; t0 <= pss - 1; ++t0)
        for (int t1 = 0; t1 <= t0; ++t1)
          for (const FieldPoly& h0 : hs)
            for (const FieldPoly& h1 : hs) {
              RingContext::Vec gen = R_.monomial(0, av, 0).coords;
              if (!h0.is_zero()) gen = R_.vadd(gen, term(1, t0, h0));
              if (!h1.is_zero()) gen = R_.vadd(gen, term(2, t1, h1));
              Ideal I = Ideal::span(ring_, {gen});
              hit("closed_form_L_type5");
              check(a,
                    closed_form_L_type5(R_, av, t0, t1, h0, h1) ==
                        I.smallest_u_level_exponent(2),
                    [&] {
                      return "level-0 closed form disagrees at a=" + std::to_string(av) +
                             " t0=" + std::to_string(t0) + " t1=" + std::to_string(t1) +
                             " h0=" + poly_text(F, h0) + " h1=" + poly_text(F, h1);
                    });
            }

    for (int av = 2; av <= pss - 1; ++av)
      for (int bv = 1; bv < av; ++bv)
        for (int t0 = 0; t0 <= pss - 1; ++t0)
          for (int t1 = 0; t1 <= t0; ++t1)
            for (int t2 = 0; t2 < bv; ++t2)
              for (const FieldPoly& h0 : hs)
                for (const FieldPoly& h1 : hs)
                  for (const FieldPoly& h2 : hs) {
                    RingContext::Vec g0 = R_.monomial(0, av, 0).coords;
                    if (!h0.is_zero()) g0 = R_.vadd(g0, term(1, t0, h0));
                    if (!h1.is_zero()) g0 = R_.vadd(g0, term(2, t1, h1));
                    RingContext::Vec g1 = R_.monomial(1, bv, 0).coords;
                    if (!h2.is_zero()) g1 = R_.vadd(g1, term(2, t2, h2));
                    Ideal I = Ideal::span(ring_, {g0, g1});
                    auto got = closed_form_L_type7(R_, av, bv, t0, t1, t2, h0, h1, h2);
                    hit("closed_form_L_type7");
                    check(a, got.L == I.smallest_u_level_exponent(2), [&] {
                      return "two-generator closed form disagrees at a=" + std::to_string(av) +
                             " b=" + std::to_string(bv) + " t0=" + std::to_string(t0) +
                             " t1=" + std::to_string(t1) + " t2=" + std::to_string(t2);
                    });
                    if (got.outside_stated_cases)
                      check(a, got.L == 0,
                            [&] { return "flagged region returned a nonzero exponent"; });
                  }
  }

  void chain_certificate() {
    auto& a = begin("chain_certificate");
    std::optional<ChainCertificate> cert;
    try {
      cert = chain_check(ring_);
    } catch (const UnsupportedParameter& e) {
      skip(a, e.what());
      return;
    }
    hit("chain_check");
    ++a.checks;
    if (lattice_) {
      bool ordered = true;
      for (std::size_t i = 0; i < lattice_->size() && ordered; ++i)
        for (std::size_t j = i + 1; j < lattice_->size() && ordered; ++j)
          ordered = (*lattice_)[i].contains_ideal((*lattice_)[j]) ||
                    (*lattice_)[j].contains_ideal((*lattice_)[i]);
      check(a, cert->is_chain == ordered, [&] {
        return std::string("chain verdict disagrees with the lattice shape (census says ") +
               (ordered ? "ordered" : "unordered") + ")";
      });
      if (cert->is_chain) {
        check(a, lattice_->size() == cert->chain.size(),
              [&] { return "census size differs from the certified chain"; });
        std::set<std::string> keys;
        for (const Ideal& I : *lattice_) keys.insert(I.key());
        for (const Ideal& I : cert->chain)
          check(a, keys.count(I.key()) == 1,
                [&] { return "certified chain member missing from the census"; });
      }
    }
    if (!cert->is_chain && cert->witness_verified_nonprincipal)
      check(a, true, [] { return std::string(); });
  }

  void crt_transport() {
    auto& a = begin("crt_transport");
    if (R_.spec().kind != ModulusKind::constacyclic || (R_.spec().n != 2 && R_.spec().n != 3)) {
      skip(a, "no two- or three-way split applies");
      return;
    }
    SplitPlan plan;
    try {
      plan = plan_split(ring_);
    } catch (const UnsupportedParameter& e) {
      skip(a, e.what());
      return;
    }
    hit("plan_split");
    ++a.checks;
    if (!plan.splits()) {
      check(a, R_.phi_irreducible(),
            [&] { return "whole modulus with a reducible base polynomial"; });
      return;
    }

    Lcg rng(opt_.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int round = 0; round < opt_.samples; ++round) {
      QuotElement x = R_.wrap(rng.vec(R_));
      QuotElement y = R_.wrap(rng.vec(R_));
      auto fx = crt_forward(plan, x);
      auto fy = crt_forward(plan, y);
      hit("crt_roundtrip");
      check(a, crt_backward(plan, fx) == x,
            [&] { return "transport roundtrip broke at " + R_.to_string(x.coords); });
      auto fprod = crt_forward(plan, R_.mul(x, y));
      for (std::size_t i = 0; i < fx.size(); ++i)
        check(a,
              fprod[i].coords == plan.components[i]->vmul(fx[i].coords, fy[i].coords),
              [&] { return "transport is not multiplicative on component " + std::to_string(i); });
    }

    if (!lattice_) return;
    std::uint64_t product = 1;
    std::vector<std::vector<Ideal>> comp_lattices;
    for (const auto& C : plan.components) {
      comp_lattices.push_back(enumerate_ideals(C, opt_.enum_cap));
      product *= comp_lattices.back().size();
    }
    check(a, product == lattice_->size(), [&] {
      return "component ideal counts multiply to " + std::to_string(product) + " but the ring has " +
             std::to_string(lattice_->size()) + " ideals";
    });
    for (const Ideal& I : *lattice_) {
      std::vector<Ideal> parts = component_ideals(plan, I);
      Ideal back = ideal_product(plan, parts);
      hit("ideal_product");
      check(a, back == I,
            [&] { return "ideal does not factor through its component images"; });
    }
  }

  void build_entries() {
    if (!lattice_) return;
    for (const Ideal& I : *lattice_) {
      CensusEntry e{I, principal_keys_.count(I.key()) != 0,
                    static_cast<int>(I.cardinality_exponent()), {}, {}};
      if (R_.phi_irreducible()) e.torsion = I.torsion_profile();
      auto it = types_by_key_.find(I.key());
      if (it != types_by_key_.end()) e.type = it->second;
      report_.entries.push_back(std::move(e));
    }
  }

  RingCtxPtr ring_;
  const RingContext& R_;
  VerifyOptions opt_;
  CensusReport report_;
  std::optional<std::vector<Ideal>> lattice_;
  std::set<std::string> principal_keys_;
  std::map<std::string, IdealTypeInfo> types_by_key_;
  std::map<std::string, std::uint64_t> cover_;
};

}  // namespace

std::vector<Ideal> enumerate_ideals(const RingCtxPtr& ring, std::uint64_t cap) {
  return enumerate_core(ring, cap, nullptr);
}

bool CensusReport::all_passed() const {
  for (const AssertionResult& a : assertions)
    if (a.applicable && !a.passed) return false;
  return true;
}

const AssertionResult* CensusReport::find(const std::string& name) const {
  for (const AssertionResult& a : assertions)
    if (a.name == name) return &a;
  return nullptr;
}

const std::vector<std::string>& oracle_coverage_ops() {
  static const std::vector<std::string> ops = {
      "is_unit",
      "nth_power",
      "nth_root",
      "ps_root",
      "k_valuation",
      "nilp_index",
      "torsion_degree",
      "smallest_u_level_exponent",
      "cardinality_exponent",
      "closed_form_L_type3",
      "closed_form_L_type5",
      "closed_form_L_type7",
      "classify_t3",
      "chain_check",
      "plan_split",
      "crt_roundtrip",
      "ideal_product",
  };
  return ops;
}

CensusReport verify_theorems(const RingCtxPtr& ring, const VerifyOptions& opt) {
  return Verifier(ring, opt).run();
}

}  // namespace chainring
