#include "matchlab/jbc.hpp"

#include <algorithm>

#include "matchlab/analysis.hpp"

namespace matchlab {

Student cutoff_student(const Problem& problem, const Matching& da_matching, School school) {
  problem.check_school(school);
  Student cutoff = -1;
  for (Student i = 0; i < problem.num_students(); ++i)
    if (da_matching[i] == school && (cutoff < 0 || problem.outranks(school, cutoff, i))) cutoff = i;
  if (cutoff < 0) throw InputError("school " + problem.school_name(school) + " has no DA occupant");
  return cutoff;
}

std::vector<Student> below_cutoff_set(const Problem& problem, const Matching& da_matching,
                                      const StudentSet& improvable, School school) {
  problem.check_school(school);
  std::vector<Student> out;
  bool has_occupant = false;
  for (Student i = 0; i < problem.num_students(); ++i) has_occupant |= da_matching[i] == school;
  if (has_occupant) {
    const Student cutoff = cutoff_student(problem, da_matching, school);
    for (Student i : improvable)
      if (problem.prefers(i, school, da_matching[i]) && problem.outranks(school, cutoff, i)) out.push_back(i);
  }
  if (out.empty())
    throw InputError("school " + problem.school_name(school) + " rejected no improvable student");
  std::sort(out.begin(), out.end(), [&](Student a, Student b) { return problem.outranks(school, a, b); });
  return out;
}

SchoolGraph build_school_graph(const Baseline& base) {
  const Problem& problem = *base.problem;
  const int m = problem.num_schools();
  SchoolGraph graph;
  graph.succ.assign(static_cast<std::size_t>(m), kNoSchool);
  graph.jbc_student.assign(static_cast<std::size_t>(m), -1);
  graph.nodes = rejecting_schools(problem, base.da.trace, base.envy.improvable_set());
  for (School s : graph.nodes) {
    // Under a stable DA outcome every improvable student envying s sits
    // below its cutoff, so i*_s heads the envious list.
    const auto& envious = base.envy.envious_improvable(s);
    if (envious.empty()) throw std::logic_error("school graph node without envious improvable student");
    graph.jbc_student[s] = envious.front();
    graph.succ[s] = base.matching()[envious.front()];
  }

  // Out-degree one: walk from each unvisited node until the walk meets a
  // node stamped earlier; if the stamp is the current walk, a cycle closes.
  std::vector<int> stamp(static_cast<std::size_t>(m), -1);
  for (School start : graph.nodes) {
    if (stamp[start] >= 0) continue;
    School s = start;
    while (s != kNoSchool && stamp[s] < 0) {
      stamp[s] = start;
      s = graph.succ[s];
    }
    if (s == kNoSchool || stamp[s] != start) continue;
    std::vector<School> cycle;
    School t = s;
    do {
      cycle.push_back(t);
      t = graph.succ[t];
    } while (t != s);
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    graph.cycles.push_back(std::move(cycle));
  }
  std::sort(graph.cycles.begin(), graph.cycles.end());
  return graph;
}

CyclePacking school_cycles_to_packing(const SchoolGraph& graph,
                                      const std::vector<std::vector<School>>& cycles) {
  CyclePacking packing;
  for (const auto& cycle : cycles) {
    const std::size_t k = cycle.size();
    std::vector<Student> students;
    // x_l -> x_{l-1}: walk the school cycle backwards.
    for (std::size_t l = 0; l < k; ++l) students.push_back(graph.jbc_student[cycle[(k - l) % k]]);
    packing.cycles.push_back(std::move(students));
  }
  return packing.canonical();
}

JbcResult run_jbc(const Baseline& base) {
  JbcResult result;
  result.graph = build_school_graph(base);
  result.packing = school_cycles_to_packing(result.graph, result.graph.cycles);
  result.matching = apply_packing(*base.problem, base.matching(), result.packing);
  return result;
}

JbcResult run_jbc(const Problem& problem) { return run_jbc(make_baseline(problem)); }

std::vector<Matching> strongly_justifiable_family(const Baseline& base) {
  const SchoolGraph graph = build_school_graph(base);
  const std::size_t c = graph.cycles.size();
  if (c > 20) throw InputError("too many JBC cycles to enumerate subsets");
  std::vector<Matching> family;
  family.reserve(std::size_t{1} << c);
  for (std::size_t mask = 0; mask < (std::size_t{1} << c); ++mask) {
    std::vector<std::vector<School>> chosen;
    for (std::size_t k = 0; k < c; ++k)
      if (mask >> k & 1) chosen.push_back(graph.cycles[k]);
    family.push_back(apply_packing(*base.problem, base.matching(), school_cycles_to_packing(graph, chosen)));
  }
  return family;
}

std::vector<Matching> strongly_justifiable_family(const Problem& problem) {
  return strongly_justifiable_family(make_baseline(problem));
}

}  // namespace matchlab
