#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainring/decompose.hpp"
#include "chainring/ideal.hpp"
#include "chainring/oracle.hpp"
#include "chainring/quotient.hpp"
#include "json.hpp"

namespace chainring {

/// Insertion-ordered JSON: emitted documents keep field order stable, which
/// makes repeated runs byte-identical.
using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Generator-expression parser. Grammar, whitespace-insensitive:
///   expr   := term ('+' term)*
///   term   := factor ('*' factor)*
///   factor := 'u' ['^' INT] | 'phi' ['^' INT] | 'x' ['^' INT]
///           | '[' INT (',' INT)* ']'   (field scalar by base-p digits)
///           | INT                      (prime-subfield scalar)
/// Errors name the offending token and its byte position.
RingContext::Vec parse_generator(const RingContext& ring, const std::string& text);

/// Writes canonical coordinates back into the grammar above, one bracketed
/// scalar term per nonzero coordinate; parse_generator returns v exactly.
std::string generator_expression(const RingContext& ring, const RingContext::Vec& v);

/// Chain-ring constant as digit groups: one group per u-power, groups
/// comma-separated, base-p digits within a group ':'-separated ("1,0,2" over
/// a prime field, "1:1,0:2" over a degree-two field).
std::string chain_const_text(const FieldContext& field, const RtElem& c);
RtElem parse_chain_const(const FieldContext& field, int t, const std::string& text);

ojson ring_json(const RingCtxPtr& ring);
ojson ideal_json(const Ideal& ideal);
ojson census_json(const CensusReport& report);
ojson split_json(const SplitPlan& plan);

/// One classification-table row per census entry. Parameter fields are
/// absent where the type template has no such parameter (and all of them
/// are absent for rings outside the eight-type family, e.g. chain rings).
struct TableRow {
  std::optional<int> tag, a, b, c, t0, t1, t2, L, M;
  std::vector<int> torsion;
  int card_exponent = 0;
};

/// Rows sorted by (tag, parameters lexicographic, torsion, exponent); the
/// order is total and deterministic. Requires an enumerated census over an
/// irreducible base polynomial with at most three u-levels.
std::vector<TableRow> classification_table(const CensusReport& report);

std::string table_csv(const std::vector<TableRow>& rows);
ojson table_json(const std::vector<TableRow>& rows);

}  // namespace chainring
