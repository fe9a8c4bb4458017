#pragma once

#include <vector>

#include "matchlab/da.hpp"

namespace matchlab {

/// Students who consent to having their priorities waived.
using ConsentSet = StudentSet;

struct EadaIteration {
  /// Pairs whose school was struck before this DA run (empty for the first).
  std::vector<InterruptPair> deleted;
  Matching matching;
};

struct EadaRun {
  std::vector<EadaIteration> iterations;
  Matching final;
};

/// Reruns DA, each time striking the school from the list of every
/// consenting interrupter rejected in the latest round that holds such a
/// rejection, until no consenting interrupter remains.
EadaRun run_eada(const Problem& problem, const ConsentSet& consent);

/// Entry `mask` is the outcome for W = {i : bit i of mask}. Refuses more
/// than 20 students. The parallel and serial versions agree exactly.
std::vector<Matching> eada_orbit(const Problem& problem);
std::vector<Matching> eada_orbit_serial(const Problem& problem);

ConsentSet consent_from_mask(unsigned long mask, int num_students);

}  // namespace matchlab
