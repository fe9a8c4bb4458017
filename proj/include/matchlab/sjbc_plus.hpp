#pragma once

#include <string>
#include <vector>

#include "matchlab/baseline.hpp"

namespace matchlab {

/// One expansion iterate. `successor[i] = j` means i takes DA_j; students
/// off every cycle (all unimprovable ones included) map to themselves.
struct ExpansionState {
  int t = 0;
  StudentSet beneficiaries;
  std::vector<Student> successor;

  CyclePacking packing() const;
};

/// Admissibility threshold at school s for beneficiary set B: the best
/// priority rank at s among improvable students outside B who prefer s to
/// their DA school (INT_MAX if none). Edge i -> j with DA_j = s is
/// admissible iff rk_s(i) <= guard(s), i.e. label(i -> j) is inside B.
std::vector<int> admissibility_guards(const LabelledEnvyDigraph& envy, const StudentSet& beneficiaries);

/// Initial state: the JBC packing with B = B(JBC).
ExpansionState initial_expansion_state(const Baseline& base);

/// Minimum-self-loop perfect matching on the improvable students using
/// admissible edges, with current beneficiaries forbidden from self-loops.
/// Ties go to the lexicographically smallest successor vector.
ExpansionState expansion_step(const Baseline& base, const ExpansionState& state);

struct PhaseEntry {
  std::string phase;  // "jbc", "expansion" or "refinement"
  int iteration;
  StudentSet beneficiaries;
  std::vector<std::vector<Student>> cycles;
};

struct ExpansionResult {
  Matching matching;
  StudentSet beneficiaries;
  ExpansionState state;
};

ExpansionResult run_expansion(const Baseline& base, std::vector<PhaseEntry>* log = nullptr);
ExpansionResult run_expansion(const Problem& problem);

/// Executes admissible cycles among B* until none remain, always the cycle
/// whose smallest member is smallest (DFS in ascending id order).
Matching run_refinement(const Baseline& base, const Matching& mu_star, const StudentSet& b_star,
                        std::vector<PhaseEntry>* log = nullptr);
Matching run_refinement(const Problem& problem, const Matching& mu_star, const StudentSet& b_star);

Matching run_sjbc_plus(const Baseline& base, std::vector<PhaseEntry>* log = nullptr);
Matching run_sjbc_plus(const Problem& problem);

std::string format_phase_log(const Problem& problem, const std::vector<PhaseEntry>& log);

}  // namespace matchlab
