#pragma once

#include <vector>

#include "matchlab/baseline.hpp"

namespace matchlab {

/// Functional graph on the schools that rejected some improvable student
/// during DA. Each such school s points to the DA school of its
/// just-below-cutoff student i*_s.
struct SchoolGraph {
  std::vector<School> nodes;        // sorted ids
  std::vector<School> succ;         // per school id; kNoSchool off the graph
  std::vector<Student> jbc_student; // per school id; -1 off the graph
  /// Disjoint cycles, each listed from its smallest school id along succ.
  std::vector<std::vector<School>> cycles;

  bool empty() const { return nodes.empty(); }
};

struct JbcResult {
  Matching matching;
  SchoolGraph graph;
  /// Student cycles induced by the school cycles, in canonical form.
  CyclePacking packing;
};

/// Lowest-priority DA occupant of `school`. Throws InputError when empty.
Student cutoff_student(const Problem& problem, const Matching& da_matching, School school);

/// Improvable students who prefer `school` to their DA school and rank below
/// its cutoff, best priority first. Throws InputError if the set is empty,
/// i.e. the school is not on the school graph.
std::vector<Student> below_cutoff_set(const Problem& problem, const Matching& da_matching,
                                      const StudentSet& improvable, School school);

SchoolGraph build_school_graph(const Baseline& base);

/// Student packing executing every cycle of the graph at once: along a
/// school cycle s1 -> s2 -> ... each i*_{s_l} takes s_l, which is the DA
/// seat of i*_{s_{l-1}}.
CyclePacking school_cycles_to_packing(const SchoolGraph& graph,
                                      const std::vector<std::vector<School>>& cycles);

JbcResult run_jbc(const Baseline& base);
JbcResult run_jbc(const Problem& problem);

/// Entry `mask` executes the cycles whose bit is set (bit c is
/// graph.cycles[c]); entry 0 is DA. Refuses more than 20 cycles.
std::vector<Matching> strongly_justifiable_family(const Baseline& base);
std::vector<Matching> strongly_justifiable_family(const Problem& problem);

}  // namespace matchlab
