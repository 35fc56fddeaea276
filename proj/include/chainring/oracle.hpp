#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainring/ideal.hpp"
#include "chainring/quotient.hpp"

namespace chainring {

/// Every ideal of the ring, as canonical reduced bases, sorted by basis key.
/// Builds the span of each ring element, then closes the set under pairwise
/// sums; in a finite commutative ring that fixpoint is the whole lattice.
/// TooLarge when the ring has more than `cap` elements.
std::vector<Ideal> enumerate_ideals(const RingCtxPtr& ring, std::uint64_t cap = 1594323);

struct VerifyOptions {
  std::uint64_t enum_cap = 1594323;       // 3^13, census bound
  std::uint64_t exhaustive_cap = 19683;   // 3^9, per-element sweep bound
  std::uint64_t literal_pair_cap = 2187;  // 3^7, all-pairs product scan bound
  int samples = 48;                       // sampled rounds past the bounds
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
};

struct AssertionResult {
  std::string name;
  /// False when the ring does not meet the assertion's preconditions
  /// (wrong family, too large, ...); such entries never count as failures.
  bool applicable = true;
  bool passed = true;
  std::uint64_t checks = 0;  // individual comparisons made
  std::string detail;        // first counterexample, or why inapplicable
};

struct CensusEntry {
  Ideal ideal;
  bool principal = false;
  int card_exponent = 0;
  std::vector<int> torsion;              // empty when the base is reducible
  std::optional<IdealTypeInfo> type;     // present in the eight-type family
};

struct CensusReport {
  RingCtxPtr ring;
  bool enumerated = false;               // census ran (ring within cap)
  std::uint64_t ideal_count = 0;
  std::vector<CensusEntry> entries;      // basis-key order
  std::vector<AssertionResult> assertions;
  /// checks per closed-form operation, in oracle_coverage_ops() order.
  std::vector<std::pair<std::string, std::uint64_t>> coverage;

  bool all_passed() const;
  const AssertionResult* find(const std::string& name) const;
};

/// The pinned list of closed-form operations the verifier is expected to
/// exercise. Reports carry one coverage row per name; a sweep over a ring
/// family should leave no row at zero.
const std::vector<std::string>& oracle_coverage_ops();

/// Runs every registered assertion against the ring: representation
/// round-trips, unit and power criteria against literal scans, the wrap
/// valuation and nilpotency index, the ideal census with torsion laws and
/// dual-route torsion reads, the eight-type classification, the closed-form
/// parameter sweeps, the chain certificate, and the CRT transport laws.
/// Failures are recorded in the report, never thrown.
CensusReport verify_theorems(const RingCtxPtr& ring, const VerifyOptions& opt = {});

}  // namespace chainring
