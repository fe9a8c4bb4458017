#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matchlab/baseline.hpp"

namespace matchlab {

enum class VictimKind { kBeneficiary, kUnimprovable, kImprovableNonBeneficiary };

const char* to_string(VictimKind kind);

struct TaggedViolation {
  Violation violation;
  VictimKind kind;
};

struct Verdict {
  StudentSet beneficiaries;
  std::vector<TaggedViolation> violations;
  bool justifiable = false;
  bool strongly_justifiable = false;
  bool pareto_efficient = false;
  /// Packing decomposition of the matching over DA, when one exists.
  std::optional<CyclePacking> packing;
  /// l(Π) ⊆ B(μ) for that packing; must equal `justifiable` when present.
  std::optional<bool> label_test;
};

/// Students strictly better off than under DA. Throws InputError if anyone
/// is worse off (the matching is outside the DA-improvement domain).
StudentSet beneficiaries(const Problem& problem, const Matching& da_matching, const Matching& matching);

/// Full verdict for a matching that weakly Pareto-dominates DA.
Verdict is_justifiable(const Baseline& base, const Matching& matching);
Verdict is_justifiable(const Problem& problem, const Matching& matching);

/// True iff the matching is DA with a set of cycles executed whose traded
/// edges all carry empty labels.
bool is_strongly_justifiable(const Baseline& base, const Matching& matching);
bool is_strongly_justifiable(const Problem& problem, const Matching& matching);

/// Strict-envy acyclicity at the matching; valid for non-wasteful
/// matchings only, so a wasteful input throws InputError.
bool is_pareto_efficient(const Problem& problem, const Matching& matching);

struct ChainStep {
  Student student;
  School school;
  Student displaced;  // -1 when the claim took a free seat
};

struct ReassignmentChain {
  bool vacuous = false;
  std::vector<ChainStep> steps;
};

/// Simulates the reassignment chain started by `claimant` claiming `school`:
/// each claim displaces the lowest-priority occupant, and each displaced
/// student claims her most preferred school that has a free seat or whose
/// lowest-priority occupant she outranks. Vacuous iff the chain ends up
/// displacing the claimant from `school`. Throws InputError when the
/// claimant's priority is not violated at `school`.
ReassignmentChain reassignment_chain(const Problem& problem, const Matching& matching, Student claimant,
                                     School school);

std::string format_chain(const Problem& problem, const ReassignmentChain& chain);

}  // namespace matchlab
