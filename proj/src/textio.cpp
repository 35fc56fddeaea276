#include "chainring/textio.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

#include "chainring/errors.hpp"

namespace chainring {

namespace {

struct Token {
  enum Kind { ident, number, caret, star, plus, lbracket, rbracket, comma, end };
  Kind kind = end;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_.kind = Token::end;
      tok_.text.clear();
      return;
    }
    const char c = s_[i_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Token::ident, s_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Token::number, s_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    Token::Kind kind;
    switch (c) {
      case '^': kind = Token::caret; break;
      case '*': kind = Token::star; break;
      case '+': kind = Token::plus; break;
      case '[': kind = Token::lbracket; break;
      case ']': kind = Token::rbracket; break;
      case ',': kind = Token::comma; break;
      default:
        throw InvalidInput("unexpected character '" + std::string(1, c) + "' at position " +
                           std::to_string(i_));
    }
    tok_ = {kind, std::string(1, c), i_};
    ++i_;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token tok_;
};

[[noreturn]] void reject(const Token& t, const std::string& expected) {
  if (t.kind == Token::end)
    throw InvalidInput("unexpected end of input; expected " + expected);
  throw InvalidInput("unexpected token '" + t.text + "' at position " + std::to_string(t.pos) +
                     "; expected " + expected);
}

class GenParser {
 public:
  GenParser(const RingContext& ring, const std::string& text) : R_(ring), lex_(text) {}

  RingContext::Vec parse() {
    RingContext::Vec acc = term();
    while (lex_.peek().kind == Token::plus) {
      lex_.take();
      acc = R_.vadd(acc, term());
    }
    if (lex_.peek().kind != Token::end) reject(lex_.peek(), "'+', '*', or end of input");
    return acc;
  }

 private:
  RingContext::Vec term() {
    RingContext::Vec acc = factor();
    while (lex_.peek().kind == Token::star) {
      lex_.take();
      acc = R_.vmul(acc, factor());
    }
    return acc;
  }

  RingContext::Vec factor() {
    const Token t = lex_.take();
    if (t.kind == Token::ident) {
      RingContext::Vec base;
      if (t.text == "u")
        base = R_.u_elem().coords;
      else if (t.text == "phi")
        base = R_.phi_elem().coords;
      else if (t.text == "x")
        base = R_.x_elem().coords;
      else
        throw InvalidInput("unknown symbol '" + t.text + "' at position " +
                           std::to_string(t.pos) + "; expected u, phi, or x");
      long long e = 1;
      if (lex_.peek().kind == Token::caret) {
        lex_.take();
        e = integer("an exponent");
      }
      return R_.vpow(base, e);
    }
    if (t.kind == Token::number) return scalar(parse_number(t));
    if (t.kind == Token::lbracket) {
      std::vector<int> digits;
      digits.push_back(static_cast<int>(integer("a digit")));
      while (lex_.peek().kind == Token::comma) {
        lex_.take();
        digits.push_back(static_cast<int>(integer("a digit")));
      }
      const Token close = lex_.take();
      if (close.kind != Token::rbracket) reject(close, "']' or ','");
      return R_.from_field_poly(R_.field().pconst(R_.field().from_digits(digits))).coords;
    }
    reject(t, "u, phi, x, a scalar, or '['");
  }

  RingContext::Vec scalar(long long v) const {
    return R_.from_field_poly(R_.field().pconst(R_.field().from_int(v))).coords;
  }

  long long integer(const std::string& expected) {
    const Token t = lex_.take();
    if (t.kind != Token::number) reject(t, expected);
    return parse_number(t);
  }

  static long long parse_number(const Token& t) {
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      throw InvalidInput("number '" + t.text + "' at position " + std::to_string(t.pos) +
                         " is out of range");
    }
  }

  const RingContext& R_;
  Lexer lex_;
};

std::string digit_group(const FieldContext& F, Fq a) {
  std::vector<int> d = F.digits(a);
  std::ostringstream os;
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? ":" : "") << d[i];
  return os.str();
}

ojson scalar_digits(const FieldContext& F, Fq a) { return ojson(F.digits(a)); }

ojson poly_digits(const FieldContext& F, const FieldPoly& g) {
  ojson arr = ojson::array();
  for (Fq c : g.c) arr.push_back(scalar_digits(F, c));
  return arr;
}

ojson opt_json(const std::optional<int>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson type_json(const FieldContext& F, const IdealTypeInfo& info) {
  ojson j;
  j["tag"] = info.tag;
  j["a"] = opt_json(info.a);
  j["b"] = opt_json(info.b);
  j["c"] = opt_json(info.c);
  j["t0"] = opt_json(info.t0);
  j["t1"] = opt_json(info.t1);
  j["t2"] = opt_json(info.t2);
  j["L"] = opt_json(info.L);
  j["M"] = opt_json(info.M);
  j["h0"] = poly_digits(F, info.h0);
  j["h1"] = poly_digits(F, info.h1);
  j["h2"] = poly_digits(F, info.h2);
  if (!info.constraint_notes.empty()) j["notes"] = info.constraint_notes;
  return j;
}

}  // namespace

RingContext::Vec parse_generator(const RingContext& ring, const std::string& text) {
  return GenParser(ring, text).parse();
}

std::string generator_expression(const RingContext& ring, const RingContext::Vec& v) {
  const FieldContext& F = ring.field();
  if (ring.vis_zero(v)) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < ring.t(); ++k)
    for (int j = 0; j < ring.pss(); ++j)
      for (int i = 0; i < ring.deg_phi(); ++i) {
        const Fq c = v[ring.coord_index(k, j, i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        std::vector<int> d = F.digits(c);
        os << '[';
        for (std::size_t l = 0; l < d.size(); ++l) os << (l ? "," : "") << d[l];
        os << ']';
        if (k == 1) os << "*u";
        if (k > 1) os << "*u^" << k;
        if (j == 1) os << "*phi";
        if (j > 1) os << "*phi^" << j;
        if (i == 1) os << "*x";
        if (i > 1) os << "*x^" << i;
      }
  return os.str();
}

std::string chain_const_text(const FieldContext& field, const RtElem& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    os << (i ? "," : "") << digit_group(field, c.parts[i]);
  return os.str();
}

RtElem parse_chain_const(const FieldContext& field, int t, const std::string& text) {
  if (t < 1) throw InvalidInput("nilpotency degree must be at least 1");
  std::vector<Fq> parts;
  std::string group;
  std::istringstream stream(text);
  while (std::getline(stream, group, ',')) {
    std::vector<int> digits;
    std::string digit;
    std::istringstream gs(group);
    while (std::getline(gs, digit, ':')) {
      try {
        std::size_t used = 0;
        int v = std::stoi(digit, &used);
        if (used != digit.size()) throw InvalidInput("");
        digits.push_back(v);
      } catch (const std::exception&) {
        throw InvalidInput("bad digit '" + digit + "' in constant '" + text + "'");
      }
    }
    if (digits.empty()) throw InvalidInput("empty digit group in constant '" + text + "'");
    parts.push_back(field.from_digits(digits));
  }
  if (parts.empty()) throw InvalidInput("empty constant");
  if (static_cast<int>(parts.size()) > t)
    throw InvalidInput("constant has more digit groups than u-levels");
  parts.resize(static_cast<std::size_t>(t), 0);
  return RtElem{std::move(parts)};
}

ojson ring_json(const RingCtxPtr& ring) {
  const RingContext& R = *ring;
  const FieldContext& F = R.field();
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = R.spec().kind == ModulusKind::constacyclic ? "constacyclic" : "quadratic_trace";
  j["p"] = F.p();
  j["m"] = F.m();
  if (F.m() > 1) j["field_modulus"] = F.modulus();
  j["s"] = R.s();
  j["t"] = R.t();
  j["n"] = R.spec().n;
  j["delta"] = chain_const_text(F, R.spec().constant);
  j["delta00"] = F.digits(R.spec().constant.parts[0])[0];
  j["phi"] = poly_digits(F, R.phi());
  j["phi_irreducible"] = R.phi_irreducible();
  j["deg_phi"] = R.deg_phi();
  j["k"] = R.k() ? ojson(*R.k()) : ojson(nullptr);
  j["nilp_index"] = R.nilp_index();
  j["dim"] = R.dim();
  auto count = R.element_count();
  j["element_count"] = count ? ojson(*count) : ojson(nullptr);
  try {
    j["chain"] = chain_check(ring).is_chain;
  } catch (const UnsupportedParameter&) {
    j["chain"] = nullptr;
  }
  return j;
}

ojson ideal_json(const Ideal& ideal) {
  const RingContext& R = *ideal.ring();
  ojson j;
  j["schema_version"] = kSchemaVersion;
  ojson gens = ojson::array();
  for (const auto& row : ideal.basis().rows()) gens.push_back(generator_expression(R, row));
  j["generators"] = std::move(gens);
  j["dim"] = ideal.dim();
  j["card_exponent"] = ideal.cardinality_exponent();
  if (R.phi_irreducible())
    j["torsion"] = ideal.torsion_profile();
  else
    j["torsion"] = nullptr;
  try {
    j["type"] = type_json(R.field(), classify_t3(ideal));
  } catch (const UnsupportedParameter&) {
    j["type"] = nullptr;
  }
  return j;
}

ojson census_json(const CensusReport& report) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["ring"] = ring_json(report.ring);
  j["enumerated"] = report.enumerated;
  j["ideal_count"] = report.ideal_count;
  j["all_passed"] = report.all_passed();
  ojson asserts = ojson::array();
  for (const AssertionResult& a : report.assertions) {
    ojson aj;
    aj["name"] = a.name;
    aj["applicable"] = a.applicable;
    aj["passed"] = a.passed;
    aj["checks"] = a.checks;
    aj["detail"] = a.detail;
    asserts.push_back(std::move(aj));
  }
  j["assertions"] = std::move(asserts);
  ojson cover = ojson::array();
  for (const auto& [op, count] : report.coverage) {
    ojson cj;
    cj["op"] = op;
    cj["count"] = count;
    cover.push_back(std::move(cj));
  }
  j["coverage"] = std::move(cover);
  if (report.enumerated) {
    ojson entries = ojson::array();
    for (const CensusEntry& e : report.entries) {
      ojson ej;
      ej["dim"] = e.ideal.dim();
      ej["card_exponent"] = e.card_exponent;
      ej["principal"] = e.principal;
      ej["torsion"] = e.torsion.empty() ? ojson(nullptr) : ojson(e.torsion);
      ej["tag"] = e.type ? ojson(e.type->tag) : ojson(nullptr);
      entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
  }
  return j;
}

ojson split_json(const SplitPlan& plan) {
  const FieldContext& F = plan.parent->field();
  ojson j;
  j["schema_version"] = kSchemaVersion;
  switch (plan.kind) {
    case SplitCase::square: j["case"] = "square"; break;
    case SplitCase::non_square: j["case"] = "non_square"; break;
    case SplitCase::cube_all_linear: j["case"] = "cube_all_linear"; break;
    case SplitCase::cube_linear_quadratic: j["case"] = "cube_linear_quadratic"; break;
    case SplitCase::non_cube: j["case"] = "non_cube"; break;
  }
  j["splits"] = plan.splits();
  j["root"] = plan.root ? ojson(chain_const_text(F, *plan.root)) : ojson(nullptr);
  j["b"] = plan.b ? scalar_digits(F, *plan.b) : ojson(nullptr);
  j["c"] = plan.c ? scalar_digits(F, *plan.c) : ojson(nullptr);
  ojson factors = ojson::array();
  for (const RtPoly& f : plan.factors) {
    ojson coeffs = ojson::array();
    for (const RtElem& coeff : f) coeffs.push_back(chain_const_text(F, coeff));
    factors.push_back(std::move(coeffs));
  }
  j["factors"] = std::move(factors);
  ojson comps = ojson::array();
  for (const RingCtxPtr& C : plan.components) comps.push_back(ring_json(C));
  j["components"] = std::move(comps);
  ojson bezout = ojson::array();
  for (const QuotElement& e : plan.idempotents)
    bezout.push_back(generator_expression(*plan.parent, e.coords));
  j["bezout"] = std::move(bezout);
  return j;
}

std::vector<TableRow> classification_table(const CensusReport& report) {
  if (!report.enumerated)
    throw UnsupportedParameter("classification table requires an enumerable ring");
  const RingContext& R = *report.ring;
  if (!R.phi_irreducible())
    throw UnsupportedParameter("classification table requires an irreducible base polynomial");
  if (R.t() > 3)
    throw UnsupportedParameter("classification table covers at most three u-levels");

  std::vector<TableRow> rows;
  rows.reserve(report.entries.size());
  for (const CensusEntry& e : report.entries) {
    TableRow row;
    if (e.type) {
      row.tag = e.type->tag;
      row.a = e.type->a;
      row.b = e.type->b;
      row.c = e.type->c;
      row.t0 = e.type->t0;
      row.t1 = e.type->t1;
      row.t2 = e.type->t2;
      row.L = e.type->L;
      row.M = e.type->M;
    }
    row.torsion = e.torsion;
    row.card_exponent = e.card_exponent;
    rows.push_back(std::move(row));
  }
  auto sort_key = [](const TableRow& r) {
    return std::make_tuple(r.tag.value_or(0), r.a.value_or(-1), r.b.value_or(-1),
                           r.c.value_or(-1), r.t0.value_or(-1), r.t1.value_or(-1),
                           r.t2.value_or(-1), r.L.value_or(-1), r.M.value_or(-1), r.torsion,
                           r.card_exponent);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const TableRow& x, const TableRow& y) { return sort_key(x) < sort_key(y); });
  return rows;
}

namespace {

std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

std::string torsion_cell(const TableRow& r, int level) {
  return level < static_cast<int>(r.torsion.size()) ? std::to_string(r.torsion[level])
                                                    : std::string();
}

}  // namespace

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "tag,a,b,c,t0,t1,t2,L,M,T0,T1,T2,card_exponent\n";
  for (const TableRow& r : rows) {
    os << cell(r.tag) << ',' << cell(r.a) << ',' << cell(r.b) << ',' << cell(r.c) << ','
       << cell(r.t0) << ',' << cell(r.t1) << ',' << cell(r.t2) << ',' << cell(r.L) << ','
       << cell(r.M) << ',' << torsion_cell(r, 0) << ',' << torsion_cell(r, 1) << ','
       << torsion_cell(r, 2) << ',' << r.card_exponent << '\n';
  }
  return os.str();
}

ojson table_json(const std::vector<TableRow>& rows) {
  ojson arr = ojson::array();
  for (const TableRow& r : rows) {
    ojson j;
    j["tag"] = opt_json(r.tag);
    j["a"] = opt_json(r.a);
    j["b"] = opt_json(r.b);
    j["c"] = opt_json(r.c);
    j["t0"] = opt_json(r.t0);
    j["t1"] = opt_json(r.t1);
    j["t2"] = opt_json(r.t2);
    j["L"] = opt_json(r.L);
    j["M"] = opt_json(r.M);
    for (int l = 0; l < 3; ++l) {
      std::string name = "T" + std::to_string(l);
      j[name] = l < static_cast<int>(r.torsion.size()) ? ojson(r.torsion[l]) : ojson(nullptr);
    }
    j["card_exponent"] = r.card_exponent;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace chainring
