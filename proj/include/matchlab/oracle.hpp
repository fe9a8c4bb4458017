#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matchlab/model.hpp"

namespace matchlab {

inline constexpr long kDefaultEnumerationBudget = 10'000'000;

/// Every feasible non-wasteful matching that assigns students only to
/// schools on their lists (or leaves them unassigned), each exactly once,
/// in lexicographic order. Refuses when the product over students of
/// (list length + 1) exceeds `budget`.
std::vector<Matching> enumerate_matchings(const Problem& problem, long budget = kDefaultEnumerationBudget);

struct ClaimCheck {
  std::string name;
  bool passed = true;
  /// Informational claims are reported but never count as failures.
  bool informational = false;
  std::string detail;
};

/// Ground truth computed from the definitions alone. All families are
/// sorted. Claim checks compare the fast paths against it.
struct OracleReport {
  long enumerated = 0;
  Matching da;
  std::vector<Matching> dominating;  // M(P)
  StudentSet unimprovable;           // U(P)
  std::vector<Matching> justifiable;
  std::vector<Matching> strongly_justifiable;  // includes DA
  std::vector<Matching> pareto_efficient;      // within M(P) and DA
  std::vector<ClaimCheck> claims;

  bool all_claims_pass() const;
};

/// Definition-level ground truth only (no claim checks).
OracleReport oracle_ground_truth(const Problem& problem, long budget = kDefaultEnumerationBudget);

/// Ground truth plus the claim checks against the fast paths: improvable
/// set by SCCs, label containment, the JBC family with its subset order,
/// the SJBC+ guarantees, and the no-justifiable-PE witness.
OracleReport oracle_report(const Problem& problem, long budget = kDefaultEnumerationBudget);

/// Consent checks for one W against ground truth: the EADA outcome weakly
/// dominates DA, respects I minus W, and no matching respecting I minus W
/// Pareto-dominates it.
std::vector<ClaimCheck> check_eada(const Problem& problem, const OracleReport& truth, const StudentSet& consent);

/// The three nested consent sets of the EX1 impossibility argument.
std::vector<ClaimCheck> verify_theorem5_steps(const Problem& problem);

/// Definition-level predicates shared by the oracle's own checks.
namespace oracle_detail {
bool violates(const Problem& problem, const Matching& matching, Student victim);
bool strictly_dominates(const Problem& problem, const Matching& a, const Matching& b);
bool weakly_better(const Problem& problem, const Matching& a, const Matching& b);
StudentSet gainers(const Problem& problem, const Matching& base, const Matching& matching);
}  // namespace oracle_detail

struct BatteryConfig {
  int n = 5;
  int instances = 500;
  std::uint64_t seed = 2024;
};

struct BatteryResult {
  int instances = 0;
  /// Failure count per claim name, in first-seen order.
  std::vector<std::pair<std::string, int>> failures;
  std::vector<std::string> examples;  // first few failure descriptions

  int total_failures() const;
};

/// Random unit-quota instances with complete lists; every instance gets
/// the full oracle report plus EADA checks for a random W, a random
/// consent-monotonicity probe, and full consent. Parallel over instances.
BatteryResult run_battery(const BatteryConfig& config);
BatteryResult run_battery_serial(const BatteryConfig& config);

}  // namespace matchlab
