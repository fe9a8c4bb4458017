#pragma once

#include "matchlab/da.hpp"
#include "matchlab/envy.hpp"

namespace matchlab {

/// DA outcome of a problem together with its trace and labelled envy
/// digraph. Every improvement mechanism starts from this; build it once and
/// pass it around. Holds a pointer to the problem, which must outlive it.
struct Baseline {
  const Problem* problem;
  DaResult da;
  LabelledEnvyDigraph envy;

  const Matching& matching() const { return da.matching; }
};

Baseline make_baseline(const Problem& problem);

}  // namespace matchlab
