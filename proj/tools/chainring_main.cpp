#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chainring/textio.hpp"

namespace {

using namespace chainring;

struct RingFlags {
  std::int64_t p = 0;
  int m = 1;
  int s = 1;
  int t = 1;
  int n = 1;
  std::string delta;
  std::vector<int> modulus;
  bool trace = false;
};

void add_ring_flags(CLI::App* cmd, RingFlags& f) {
  cmd->add_option("--p", f.p, "field characteristic")->required();
  cmd->add_option("--m", f.m, "field extension degree");
  cmd->add_option("--s", f.s, "p-power exponent of the code length");
  cmd->add_option("--t", f.t, "nilpotency degree of u")->required();
  cmd->add_option("--n", f.n, "prime-to-p part of the code length");
  cmd->add_option("--delta", f.delta,
                  "unit constant: digit groups per u-power, ':' between digits, ',' "
                  "between groups")
      ->required();
  cmd->add_option("--modulus", f.modulus, "field modulus digits, constant first (m+1 values)")
      ->delimiter(',');
  cmd->add_flag("--trace", f.trace,
                "build the trace-quadratic quotient x^{2p^s} + d x^{p^s} + d^2 instead");
}

RingCtxPtr build_ring(const RingFlags& f) {
  FieldCtxPtr F =
      f.modulus.empty() ? FieldContext::make(f.p, f.m) : FieldContext::make(f.p, f.m, f.modulus);
  RtElem delta = parse_chain_const(*F, f.t, f.delta);
  if (f.trace) return RingContext::quadratic_trace(F, f.s, f.t, delta);
  return RingContext::constacyclic(F, f.s, f.t, f.n, delta);
}

std::uint64_t env_enum_cap(std::uint64_t fallback) {
  const char* v = std::getenv("CHAINRING_CAP");
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    unsigned long long cap = std::stoull(v, &used);
    if (used != std::string(v).size() || cap == 0) throw InvalidInput("");
    return cap;
  } catch (const std::exception&) {
    throw InvalidInput("CHAINRING_CAP must be a positive integer");
  }
}

void emit(const ojson& j, const std::string& format) {
  if (format == "text") {
    for (const auto& [key, value] : j.items()) std::cout << key << ": " << value.dump() << "\n";
    return;
  }
  std::cout << j.dump(2) << "\n";
}

int cmd_ring(const RingFlags& f, const std::string& format) {
  emit(ring_json(build_ring(f)), format);
  return 0;
}

int cmd_ideal(const RingFlags& f, const std::vector<std::string>& gen_texts,
              const std::string& format) {
  RingCtxPtr R = build_ring(f);
  std::vector<RingContext::Vec> gens;
  gens.reserve(gen_texts.size());
  for (const std::string& text : gen_texts) gens.push_back(parse_generator(*R, text));
  emit(ideal_json(Ideal::span(R, std::move(gens))), format);
  return 0;
}

/// Unit constants of the coefficient ring in index order: every digit vector
/// whose residue digit group is nonzero.
std::vector<RtElem> all_unit_deltas(const FieldContext& F, int t) {
  const auto q = static_cast<std::uint64_t>(F.q());
  std::uint64_t total = 1;
  for (int i = 0; i < t; ++i) total *= q;
  std::vector<RtElem> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Fq> parts(t);
    std::uint64_t rest = idx;
    for (int i = 0; i < t; ++i) {
      parts[i] = static_cast<Fq>(rest % q);
      rest /= q;
    }
    if (parts[0] == 0) continue;
    out.push_back(RtElem{std::move(parts)});
  }
  return out;
}

int cmd_verify(const std::vector<std::int64_t>& ps, const std::vector<int>& ms,
               const std::vector<int>& ss, const std::vector<int>& ts,
               const std::vector<int>& ns, const std::vector<std::string>& delta_texts) {
  VerifyOptions opt;
  opt.enum_cap = env_enum_cap(opt.enum_cap);

  ojson grid = ojson::array();
  bool all_passed = true;
  std::map<std::string, std::uint64_t> coverage;
  for (const std::string& op : oracle_coverage_ops()) coverage[op] = 0;

  for (std::int64_t p : ps)
    for (int m : ms)
      for (int s : ss)
        for (int t : ts)
          for (int n : ns) {
            FieldCtxPtr F = FieldContext::make(p, m);
            std::vector<RtElem> deltas;
            if (delta_texts.empty()) {
              deltas = all_unit_deltas(*F, t);
            } else {
              for (const std::string& text : delta_texts)
                deltas.push_back(parse_chain_const(*F, t, text));
            }
            for (const RtElem& delta : deltas) {
              ojson record;
              record["p"] = p;
              record["m"] = m;
              record["s"] = s;
              record["t"] = t;
              record["n"] = n;
              record["delta"] = chain_const_text(*F, delta);
              RingCtxPtr R;
              try {
                R = RingContext::constacyclic(F, s, t, n, delta);
              } catch (const Error& e) {
                record["skipped"] = true;
                record["notice"] = e.what();
                grid.push_back(std::move(record));
                continue;
              }
              CensusReport rep = verify_theorems(R, opt);
              all_passed = all_passed && rep.all_passed();
              for (const auto& [op, count] : rep.coverage) coverage[op] += count;
              record["report"] = census_json(rep);
              grid.push_back(std::move(record));
            }
          }

  ojson out;
  out["schema_version"] = kSchemaVersion;
  out["grid"] = std::move(grid);
  out["all_passed"] = all_passed;
  ojson cover = ojson::array();
  for (const std::string& op : oracle_coverage_ops()) {
    ojson cj;
    cj["op"] = op;
    cj["count"] = coverage[op];
    cover.push_back(std::move(cj));
  }
  out["coverage"] = std::move(cover);
  std::cout << out.dump(2) << "\n";
  return all_passed ? 0 : 1;
}

int cmd_table(const RingFlags& f, const std::string& format) {
  VerifyOptions opt;
  opt.enum_cap = env_enum_cap(opt.enum_cap);
  CensusReport rep = verify_theorems(build_ring(f), opt);
  std::vector<TableRow> rows = classification_table(rep);
  if (format == "json")
    std::cout << table_json(rows).dump(2) << "\n";
  else
    std::cout << table_csv(rows);
  if (!rep.all_passed()) {
    std::cerr << "warning: verification assertions failed for this ring\n";
    return 1;
  }
  return 0;
}

int cmd_split(const RingFlags& f, const std::string& format) {
  emit(split_json(plan_split(build_ring(f))), format);
  return 0;
}

const char* error_kind(const Error& e) {
  if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
  if (dynamic_cast<const NotAUnit*>(&e)) return "NotAUnit";
  if (dynamic_cast<const UnsupportedParameter*>(&e)) return "UnsupportedParameter";
  if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
  if (dynamic_cast<const NotAnNthPower*>(&e)) return "NotAnNthPower";
  if (dynamic_cast<const TooLarge*>(&e)) return "TooLarge";
  if (dynamic_cast<const ClassificationFailure*>(&e)) return "ClassificationFailure";
  if (dynamic_cast<const ParadoxError*>(&e)) return "ParadoxError";
  return "Error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constacyclic code algebra over finite chain rings"};
  app.require_subcommand(1);

  RingFlags ring_flags;
  std::string ring_format = "json";
  CLI::App* ring = app.add_subcommand("ring", "describe a quotient ring");
  add_ring_flags(ring, ring_flags);
  ring->add_option("--format", ring_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  RingFlags ideal_flags;
  std::string ideal_format = "json";
  std::vector<std::string> gens;
  CLI::App* ideal = app.add_subcommand("ideal", "span and classify an ideal");
  add_ring_flags(ideal, ideal_flags);
  ideal->add_option("--gen", gens, "generator expression (repeatable)")->required();
  ideal->add_option("--format", ideal_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::vector<std::int64_t> ps{2, 3};
  std::vector<int> ms{1}, ss{1}, ts{2, 3}, ns{1, 2};
  std::vector<std::string> delta_texts;
  CLI::App* verify = app.add_subcommand("verify", "run the theorem checks over a parameter grid");
  verify->add_option("--p", ps, "characteristics")->delimiter(',');
  verify->add_option("--m", ms, "extension degrees")->delimiter(',');
  verify->add_option("--s", ss, "p-power exponents")->delimiter(',');
  verify->add_option("--t", ts, "nilpotency degrees")->delimiter(',');
  verify->add_option("--n", ns, "prime-to-p lengths")->delimiter(',');
  verify->add_option("--delta", delta_texts, "constants to use (default: every unit)")
      ->delimiter(';');

  RingFlags table_flags;
  std::string table_format = "csv";
  CLI::App* table = app.add_subcommand("table", "emit the per-ideal classification table");
  add_ring_flags(table, table_flags);
  table->add_option("--format", table_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  RingFlags split_flags;
  std::string split_format = "json";
  CLI::App* split = app.add_subcommand("split", "factor the modulus and report the transport");
  add_ring_flags(split, split_flags);
  split->add_option("--format", split_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (ring->parsed()) return cmd_ring(ring_flags, ring_format);
    if (ideal->parsed()) return cmd_ideal(ideal_flags, gens, ideal_format);
    if (verify->parsed()) return cmd_verify(ps, ms, ss, ts, ns, delta_texts);
    if (table->parsed()) return cmd_table(table_flags, table_format);
    if (split->parsed()) return cmd_split(split_flags, split_format);
  } catch (const Error& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
