#include "matchlab/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace matchlab {

Baseline make_baseline(const Problem& problem) {
  DaResult da = run_da(problem);
  LabelledEnvyDigraph envy(problem, da.matching);
  return Baseline{&problem, std::move(da), std::move(envy)};
}

const char* to_string(VictimKind kind) {
  switch (kind) {
    case VictimKind::kBeneficiary: return "beneficiary";
    case VictimKind::kUnimprovable: return "unimprovable";
    case VictimKind::kImprovableNonBeneficiary: return "improvable-non-beneficiary";
  }
  return "?";
}

StudentSet beneficiaries(const Problem& problem, const Matching& da_matching, const Matching& matching) {
  validate_matching(problem, matching);
  StudentSet out;
  for (Student i = 0; i < problem.num_students(); ++i) {
    const int now = problem.rank_of(i, matching[i]);
    const int before = problem.rank_of(i, da_matching[i]);
    if (now > before)
      throw InputError("matching is worse than DA for " + problem.student_name(i));
    if (now < before) out.push_back(i);
  }
  return out;
}

Verdict is_justifiable(const Baseline& base, const Matching& matching) {
  const Problem& problem = *base.problem;
  Verdict verdict;
  verdict.beneficiaries = beneficiaries(problem, base.matching(), matching);
  verdict.justifiable = true;
  for (const Violation& v : violations(problem, matching)) {
    VictimKind kind = VictimKind::kImprovableNonBeneficiary;
    if (contains(verdict.beneficiaries, v.victim))
      kind = VictimKind::kBeneficiary;
    else if (!base.envy.improvable(v.victim))
      kind = VictimKind::kUnimprovable;
    if (kind == VictimKind::kImprovableNonBeneficiary) verdict.justifiable = false;
    verdict.violations.push_back({v, kind});
  }
  verdict.packing = decompose_as_packing(problem, base.matching(), matching);
  if (verdict.packing) {
    const StudentSet label = packing_label(base.envy, *verdict.packing);
    verdict.label_test = is_subset(label, verdict.beneficiaries);
    verdict.strongly_justifiable = label.empty();
  }
  verdict.pareto_efficient = is_nonwasteful(problem, matching) && is_pareto_efficient(problem, matching);
  return verdict;
}

Verdict is_justifiable(const Problem& problem, const Matching& matching) {
  return is_justifiable(make_baseline(problem), matching);
}

bool is_strongly_justifiable(const Baseline& base, const Matching& matching) {
  const auto packing = decompose_as_packing(*base.problem, base.matching(), matching);
  return packing && packing_label(base.envy, *packing).empty();
}

bool is_strongly_justifiable(const Problem& problem, const Matching& matching) {
  return is_strongly_justifiable(make_baseline(problem), matching);
}

bool is_pareto_efficient(const Problem& problem, const Matching& matching) {
  if (!is_nonwasteful(problem, matching))
    throw InputError("Pareto test requires a non-wasteful matching");
  const int n = problem.num_students();
  const auto roster = rosters(problem, matching);
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (Student i = 0; i < n; ++i) {
    const int own = problem.rank_of(i, matching[i]);
    for (School s : problem.prefs(i)) {
      if (problem.rank_of(i, s) >= own) break;
      adjacency[i].insert(adjacency[i].end(), roster[s].begin(), roster[s].end());
    }
  }
  const auto comp = strongly_connected_components(adjacency);
  std::vector<int> size(static_cast<std::size_t>(n), 0);
  for (int c : comp) ++size[c];
  return std::all_of(size.begin(), size.end(), [](int s) { return s < 2; });
}

ReassignmentChain reassignment_chain(const Problem& problem, const Matching& matching, Student claimant,
                                     School school) {
  validate_matching(problem, matching);
  problem.check_student(claimant);
  problem.check_school(school);

  Matching current = matching;
  auto roster = rosters(problem, current);
  auto lowest_occupant = [&](School s) {
    return *std::max_element(roster[s].begin(), roster[s].end(), [&](Student a, Student b) {
      return problem.priority_rank(s, a) < problem.priority_rank(s, b);
    });
  };

  bool violated = false;
  if (problem.prefers(claimant, school, current[claimant]))
    for (Student occupant : roster[school])
      if (problem.outranks(school, claimant, occupant)) violated = true;
  if (!violated)
    throw InputError("no priority violation of " + problem.student_name(claimant) + " at " +
                     problem.school_name(school));

  auto move = [&](Student who, School to) -> Student {
    const School from = current[who];
    if (from != kNoSchool) std::erase(roster[from], who);
    Student displaced = -1;
    if (static_cast<int>(roster[to].size()) >= problem.quota(to)) {
      displaced = lowest_occupant(to);
      std::erase(roster[to], displaced);
      current[displaced] = kNoSchool;
    }
    roster[to].push_back(who);
    current[who] = to;
    return displaced;
  };

  ReassignmentChain chain;
  Student displaced = move(claimant, school);
  chain.steps.push_back({claimant, school, displaced});

  const long cap = static_cast<long>(problem.num_students()) * (problem.num_schools() + 1) + 1;
  while (displaced >= 0) {
    if (displaced == claimant) {
      chain.vacuous = true;
      return chain;
    }
    if (static_cast<long>(chain.steps.size()) > cap)
      throw std::runtime_error("reassignment chain did not terminate");
    const Student who = displaced;
    School claim = kNoSchool;
    for (School s : problem.prefs(who)) {
      if (static_cast<int>(roster[s].size()) < problem.quota(s) ||
          problem.outranks(s, who, lowest_occupant(s))) {
        claim = s;
        break;
      }
    }
    if (claim == kNoSchool) {
      chain.steps.push_back({who, kNoSchool, -1});
      break;
    }
    displaced = move(who, claim);
    chain.steps.push_back({who, claim, displaced});
  }
  return chain;
}

std::string format_chain(const Problem& problem, const ReassignmentChain& chain) {
  std::string out;
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    if (k > 0) out += ", ";
    out += problem.student_name(chain.steps[k].student) + "=>" + problem.school_name(chain.steps[k].school);
  }
  return out;
}

}  // namespace matchlab
