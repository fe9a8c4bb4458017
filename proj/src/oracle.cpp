#include "matchlab/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "matchlab/analysis.hpp"
#include "matchlab/eada.hpp"
#include "matchlab/io.hpp"
#include "matchlab/jbc.hpp"
#include "matchlab/rng.hpp"
#include "matchlab/simgen.hpp"
#include "matchlab/sjbc_plus.hpp"

namespace matchlab {

// The oracle deliberately avoids model.hpp's violation and dominance helpers
// and everything in envy/analysis: it is the reference those are tested
// against. Only Problem's rank lookups are shared.
namespace oracle_detail {

bool violates(const Problem& problem, const Matching& matching, Student victim) {
  const int own = problem.rank_of(victim, matching[victim]);
  for (Student j = 0; j < problem.num_students(); ++j) {
    const School s = matching[j];
    if (j == victim || s == kNoSchool) continue;
    if (problem.rank_of(victim, s) < own && problem.priority_rank(s, victim) < problem.priority_rank(s, j))
      return true;
  }
  return false;
}

bool weakly_better(const Problem& problem, const Matching& a, const Matching& b) {
  for (Student i = 0; i < problem.num_students(); ++i)
    if (problem.rank_of(i, a[i]) > problem.rank_of(i, b[i])) return false;
  return true;
}

bool strictly_dominates(const Problem& problem, const Matching& a, const Matching& b) {
  return weakly_better(problem, a, b) && a != b;
}

StudentSet gainers(const Problem& problem, const Matching& base, const Matching& matching) {
  StudentSet out;
  for (Student i = 0; i < problem.num_students(); ++i)
    if (problem.rank_of(i, matching[i]) < problem.rank_of(i, base[i])) out.push_back(i);
  return out;
}

}  // namespace oracle_detail

using namespace oracle_detail;

namespace {

bool victims_within(const Problem& problem, const Matching& matching, const std::vector<bool>& allowed) {
  for (Student i = 0; i < problem.num_students(); ++i)
    if (!allowed[i] && violates(problem, matching, i)) return false;
  return true;
}

bool member(const std::vector<Matching>& sorted, const Matching& m) {
  return std::binary_search(sorted.begin(), sorted.end(), m);
}

std::string describe(const Problem& problem, const Matching& m) { return format_matching(problem, m); }

}  // namespace

std::vector<Matching> enumerate_matchings(const Problem& problem, long budget) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  double space = 1.0;
  for (Student i = 0; i < n; ++i) space *= static_cast<double>(problem.prefs(i).size() + 1);
  if (space > static_cast<double>(budget))
    throw InputError("enumeration space exceeds budget of " + std::to_string(budget));

  std::vector<Matching> out;
  std::vector<School> current(static_cast<std::size_t>(n), kNoSchool);
  std::vector<int> load(static_cast<std::size_t>(m), 0);

  auto nonwasteful = [&] {
    for (Student i = 0; i < n; ++i) {
      const int own = problem.rank_of(i, current[i]);
      for (School s : problem.prefs(i)) {
        if (problem.rank_of(i, s) >= own) break;
        if (load[s] < problem.quota(s)) return false;
      }
    }
    return true;
  };
  auto recurse = [&](auto&& self, Student i) -> void {
    if (i == n) {
      if (nonwasteful()) out.emplace_back(current);
      return;
    }
    current[i] = kNoSchool;
    self(self, i + 1);
    for (School s : problem.prefs(i)) {
      if (load[s] >= problem.quota(s)) continue;
      ++load[s];
      current[i] = s;
      self(self, i + 1);
      --load[s];
    }
    current[i] = kNoSchool;
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool OracleReport::all_claims_pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.passed || c.informational; });
}

OracleReport oracle_ground_truth(const Problem& problem, long budget) {
  const int n = problem.num_students();
  OracleReport report;
  const std::vector<Matching> all = enumerate_matchings(problem, budget);
  report.enumerated = static_cast<long>(all.size());

  std::vector<const Matching*> stable;
  for (const Matching& m : all) {
    bool ok = true;
    for (Student i = 0; i < n && ok; ++i) ok = !violates(problem, m, i);
    if (ok) stable.push_back(&m);
  }
  const Matching* optimal = nullptr;
  for (const Matching* candidate : stable)
    if (std::all_of(stable.begin(), stable.end(),
                    [&](const Matching* other) { return weakly_better(problem, *candidate, *other); }))
      optimal = candidate;
  if (!optimal) throw std::logic_error("no student-optimal stable matching found");
  report.da = *optimal;

  for (const Matching& m : all)
    if (strictly_dominates(problem, m, report.da)) report.dominating.push_back(m);

  std::vector<bool> moves(static_cast<std::size_t>(n), false);
  for (const Matching& m : report.dominating)
    for (Student i = 0; i < n; ++i) moves[i] = moves[i] || m[i] != report.da[i];
  for (Student i = 0; i < n; ++i)
    if (!moves[i]) report.unimprovable.push_back(i);

  for (const Matching& m : report.dominating) {
    const StudentSet gain = gainers(problem, report.da, m);
    bool ok = true;
    for (Student i = 0; i < n && ok; ++i)
      if (violates(problem, m, i))
        ok = std::binary_search(report.unimprovable.begin(), report.unimprovable.end(), i) ||
             std::binary_search(gain.begin(), gain.end(), i);
    if (ok) report.justifiable.push_back(m);
  }

  // Strong justifiability: DA seats permuted among movers, each mover
  // strictly better, and no improvable student envies a mover's new school
  // at DA while outranking the mover there.
  const int m_schools = problem.num_schools();
  std::vector<Matching> strong{report.da};
  for (const Matching& m : report.dominating) {
    std::vector<int> balance(static_cast<std::size_t>(m_schools), 0);
    bool ok = true;
    for (Student i = 0; i < n && ok; ++i) {
      if (m[i] == report.da[i]) continue;
      if (m[i] == kNoSchool || report.da[i] == kNoSchool ||
          problem.rank_of(i, m[i]) >= problem.rank_of(i, report.da[i])) {
        ok = false;
        break;
      }
      ++balance[m[i]];
      --balance[report.da[i]];
      for (Student h = 0; h < n && ok; ++h) {
        if (!moves[h]) continue;
        if (problem.rank_of(h, m[i]) < problem.rank_of(h, report.da[h]) &&
            problem.priority_rank(m[i], h) < problem.priority_rank(m[i], i))
          ok = false;
      }
    }
    ok = ok && std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; });
    if (ok) strong.push_back(m);
  }
  std::sort(strong.begin(), strong.end());
  report.strongly_justifiable = std::move(strong);

  std::vector<Matching> candidates = report.dominating;
  candidates.push_back(report.da);
  for (const Matching& c : candidates) {
    const bool dominated = std::any_of(report.dominating.begin(), report.dominating.end(),
                                       [&](const Matching& d) { return strictly_dominates(problem, d, c); });
    if (!dominated) report.pareto_efficient.push_back(c);
  }
  std::sort(report.pareto_efficient.begin(), report.pareto_efficient.end());
  return report;
}

OracleReport oracle_report(const Problem& problem, long budget) {
  OracleReport report = oracle_ground_truth(problem, budget);
  const Baseline base = make_baseline(problem);

  {
    ClaimCheck c{"da-student-optimal", base.matching() == report.da, false, ""};
    if (!c.passed) c.detail = "run_da " + describe(problem, base.matching()) + " vs " + describe(problem, report.da);
    report.claims.push_back(c);
  }
  {
    const StudentSet improvable = set_difference(all_students(problem), report.unimprovable);
    ClaimCheck c{"improvable-set", base.envy.improvable_set() == improvable, false, ""};
    if (!c.passed)
      c.detail = "scc " + format_set(problem, base.envy.improvable_set()) + " vs oracle " + format_set(problem, improvable);
    report.claims.push_back(c);
  }
  {
    ClaimCheck c{"label-containment", true, false, ""};
    for (const Matching& m : report.dominating) {
      const bool truth = member(report.justifiable, m);
      const Verdict verdict = is_justifiable(base, m);
      const bool label_ok = !verdict.label_test || *verdict.label_test == truth;
      if (verdict.justifiable != truth || !label_ok) {
        c.passed = false;
        c.detail = "disagreement at " + describe(problem, m);
        break;
      }
    }
    report.claims.push_back(c);
  }
  {
    ClaimCheck c{"pareto-test", true, false, ""};
    std::vector<Matching> candidates = report.dominating;
    candidates.push_back(report.da);
    for (const Matching& m : candidates)
      if (is_pareto_efficient(problem, m) != member(report.pareto_efficient, m)) {
        c.passed = false;
        c.detail = "disagreement at " + describe(problem, m);
        break;
      }
    report.claims.push_back(c);
  }
  {
    ClaimCheck c{"jbc-subset-family", true, false, ""};
    const std::vector<Matching> family = strongly_justifiable_family(base);
    std::vector<Matching> sorted = family;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != report.strongly_justifiable) {
      c.passed = false;
      c.detail = std::to_string(family.size()) + " JBC subsets vs " +
                 std::to_string(report.strongly_justifiable.size()) + " strongly justifiable matchings";
    }
    for (std::size_t a = 0; a < family.size() && c.passed; ++a)
      for (std::size_t b = 0; b < family.size() && c.passed; ++b) {
        const bool subset = a != b && (a & b) == b;
        if (strictly_dominates(problem, family[a], family[b]) != subset) {
          c.passed = false;
          c.detail = "dominance order differs from cycle-subset order";
        }
      }
    report.claims.push_back(c);
  }
  {
    ClaimCheck c{"sjbc-plus-guarantees", true, false, ""};
    const Matching jbc = run_jbc(base).matching;
    const Matching plus = run_sjbc_plus(base);
    const StudentSet gain = gainers(problem, report.da, plus);
    std::ostringstream why;
    if (!weakly_better(problem, plus, report.da)) why << "does not dominate DA; ";
    if (!report.dominating.empty() && plus == report.da) why << "DA inefficient but unchanged; ";
    if (plus != report.da && !member(report.justifiable, plus)) why << "not justifiable; ";
    if (!is_subset(gainers(problem, report.da, jbc), gain)) why << "drops a JBC beneficiary; ";
    for (const Matching& other : report.justifiable)
      if (gainers(problem, report.da, other) == gain && strictly_dominates(problem, other, plus)) {
        why << "dominated by equal-beneficiary " << describe(problem, other) << "; ";
        break;
      }
    c.detail = why.str();
    c.passed = c.detail.empty();
    report.claims.push_back(c);
  }
  {
    bool both = false;
    for (const Matching& m : report.justifiable) both = both || member(report.pareto_efficient, m);
    ClaimCheck c{"justifiable-efficient-witness", both, true,
                 both ? "" : "no matching is both justifiable and Pareto-efficient"};
    if (report.dominating.empty()) {
      c.passed = true;
      c.detail = "DA is efficient";
    }
    report.claims.push_back(c);
  }
  return report;
}

std::vector<ClaimCheck> check_eada(const Problem& problem, const OracleReport& truth, const StudentSet& consent) {
  const int n = problem.num_students();
  std::vector<bool> consents(static_cast<std::size_t>(n), false);
  for (Student i : consent) consents[i] = true;
  const Matching out = run_eada(problem, consent).final;

  std::vector<ClaimCheck> checks;
  checks.push_back({"eada-dominates-da", weakly_better(problem, out, truth.da), false, ""});
  checks.push_back({"eada-respects-nonconsenting", victims_within(problem, out, consents), false, ""});
  ClaimCheck constrained{"eada-constrained-efficiency", true, false, ""};
  for (const Matching& m : truth.dominating)
    if (victims_within(problem, m, consents) && strictly_dominates(problem, m, out)) {
      constrained.passed = false;
      constrained.detail = "dominated by " + describe(problem, m);
      break;
    }
  checks.push_back(constrained);
  for (ClaimCheck& c : checks)
    if (!c.passed && c.detail.empty()) c.detail = "W=" + format_set(problem, consent) + " -> " + describe(problem, out);
  return checks;
}

namespace {

// Movers of a unit-quota improvement, as one cycle if they form exactly one.
bool single_cycle(const Problem& problem, const Matching& da, const Matching& m) {
  const int n = problem.num_students();
  std::vector<Student> owner(static_cast<std::size_t>(problem.num_schools()), -1);
  for (Student i = 0; i < n; ++i)
    if (da[i] != kNoSchool) owner[da[i]] = i;
  Student start = -1;
  int movers = 0;
  for (Student i = 0; i < n; ++i)
    if (m[i] != da[i]) {
      ++movers;
      if (start < 0) start = i;
    }
  if (start < 0) return false;
  int length = 0;
  Student v = start;
  do {
    if (m[v] == kNoSchool || owner[m[v]] < 0) return false;
    v = owner[m[v]];
    ++length;
  } while (v != start && length <= movers);
  return v == start && length == movers;
}

Matching from_names(const Problem& problem, const Matching& da,
                    std::initializer_list<std::pair<const char*, const char*>> moves) {
  Matching m = da;
  for (const auto& [student, school] : moves) m[problem.student_id(student)] = problem.school_id(school);
  return m;
}

}  // namespace

std::vector<ClaimCheck> verify_theorem5_steps(const Problem& problem) {
  const OracleReport truth = oracle_ground_truth(problem);
  const int n = problem.num_students();
  auto consent_mask = [&](std::initializer_list<const char*> names) {
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    for (const char* name : names) mask[problem.student_id(name)] = true;
    return mask;
  };
  const Matching three_cycle = from_names(problem, truth.da, {{"i1", "s4"}, {"i4", "s5"}, {"i5", "s1"}});
  const Matching two_cycles = from_names(
      problem, truth.da, {{"i1", "s2"}, {"i2", "s1"}, {"i3", "s6"}, {"i6", "s4"}, {"i4", "s5"}, {"i5", "s3"}});
  const Student i1 = problem.student_id("i1");
  const Student i3 = problem.student_id("i3");
  const Student i5 = problem.student_id("i5");
  const School s1 = problem.school_id("s1");
  const School s4 = problem.school_id("s4");

  std::vector<ClaimCheck> checks;
  {
    const auto w1 = consent_mask({"i7"});
    std::vector<Matching> hits;
    for (const Matching& m : truth.dominating)
      if (victims_within(problem, m, w1)) hits.push_back(m);
    ClaimCheck c{"W1={i7}: unique improvement is the three-cycle", hits.size() == 1 && hits[0] == three_cycle, false,
                 std::to_string(hits.size()) + " improvement(s) respect I\\W1"};
    checks.push_back(c);
  }
  {
    const auto w2 = consent_mask({"i5", "i7"});
    std::vector<Matching> hits;
    for (const Matching& m : truth.dominating)
      if (victims_within(problem, m, w2) && problem.rank_of(i5, m[i5]) <= problem.rank_of(i5, s1)) hits.push_back(m);
    ClaimCheck c{"W2={i5,i7}: unique improvement giving i5 s1 or better is the three-cycle",
                 hits.size() == 1 && hits[0] == three_cycle, false, std::to_string(hits.size()) + " candidate(s)"};
    checks.push_back(c);
  }
  const auto w3 = consent_mask({"i1", "i5", "i7"});
  {
    std::vector<Matching> hits;
    for (const Matching& m : truth.dominating)
      if (single_cycle(problem, truth.da, m) && problem.rank_of(i1, m[i1]) <= problem.rank_of(i1, s4))
        hits.push_back(m);
    bool ok = hits.size() == 2 && std::find(hits.begin(), hits.end(), three_cycle) != hits.end();
    if (ok) {
      const Matching& other = hits[0] == three_cycle ? hits[1] : hits[0];
      ok = violates(problem, other, i3) && !w3[i3] && victims_within(problem, three_cycle, w3);
    }
    checks.push_back({"W3={i1,i5,i7}: two single cycles give i1 s4 or better, the other violates i3", ok, false,
                      std::to_string(hits.size()) + " single-cycle candidate(s)"});
  }
  {
    const bool ok = member(truth.dominating, two_cycles) && member(truth.pareto_efficient, two_cycles) &&
                    victims_within(problem, two_cycles, w3);
    checks.push_back({"W3: two-cycle packing is efficient, dominates DA and respects I\\W3", ok, false, ""});
  }
  return checks;
}

int BatteryResult::total_failures() const {
  int total = 0;
  for (const auto& [name, count] : failures) total += count;
  return total;
}

namespace {

std::vector<ClaimCheck> battery_instance(const BatteryConfig& config, int index) {
  GenConfig gen;
  gen.n = config.n;
  gen.seed = config.seed;
  const Problem problem = gen_instance(gen, index);
  const OracleReport report = oracle_report(problem);
  std::vector<ClaimCheck> checks;
  for (const ClaimCheck& c : report.claims)
    if (!c.informational) checks.push_back(c);

  Rng rng(config.seed, static_cast<std::uint64_t>(index), 3);
  StudentSet consent;
  for (Student i = 0; i < problem.num_students(); ++i)
    if (rng.below(2)) consent.push_back(i);
  for (const ClaimCheck& c : check_eada(problem, report, consent)) checks.push_back(c);

  const StudentSet outside = set_difference(all_students(problem), consent);
  ClaimCheck monotone{"eada-consent-monotonicity", true, false, ""};
  if (!outside.empty()) {
    const Student i = outside[rng.below(outside.size())];
    const StudentSet bigger = make_set([&] {
      auto v = consent;
      v.push_back(i);
      return v;
    }());
    const Matching with = run_eada(problem, bigger).final;
    const Matching without = run_eada(problem, consent).final;
    if (problem.rank_of(i, with[i]) > problem.rank_of(i, without[i])) {
      monotone.passed = false;
      monotone.detail = problem.student_name(i) + " loses by consenting";
    }
  }
  checks.push_back(monotone);

  const Matching full = run_eada(problem, all_students(problem)).final;
  ClaimCheck pe{"eada-full-consent-efficient", member(report.pareto_efficient, full), false, ""};
  checks.push_back(pe);

  for (ClaimCheck& c : checks)
    if (!c.passed) c.detail = "n=" + std::to_string(config.n) + " instance " + std::to_string(index) + ": " + c.detail;
  return checks;
}

BatteryResult merge(const std::vector<std::vector<ClaimCheck>>& per_instance) {
  BatteryResult result;
  result.instances = static_cast<int>(per_instance.size());
  std::map<std::string, std::size_t> slot;
  for (const auto& checks : per_instance)
    for (const ClaimCheck& c : checks) {
      auto [it, inserted] = slot.emplace(c.name, result.failures.size());
      if (inserted) result.failures.push_back({c.name, 0});
      if (!c.passed) {
        ++result.failures[it->second].second;
        if (result.examples.size() < 5) result.examples.push_back(c.name + ": " + c.detail);
      }
    }
  return result;
}

}  // namespace

BatteryResult run_battery(const BatteryConfig& config) {
  std::vector<std::vector<ClaimCheck>> per_instance(static_cast<std::size_t>(config.instances));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < config.instances; ++k) per_instance[k] = battery_instance(config, k);
  return merge(per_instance);
}

BatteryResult run_battery_serial(const BatteryConfig& config) {
  std::vector<std::vector<ClaimCheck>> per_instance(static_cast<std::size_t>(config.instances));
  for (int k = 0; k < config.instances; ++k) per_instance[k] = battery_instance(config, k);
  return merge(per_instance);
}

}  // namespace matchlab
