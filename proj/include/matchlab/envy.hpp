#pragma once

#include <optional>
#include <vector>

#include "matchlab/model.hpp"

namespace matchlab {

/// Disjoint student cycles in the DA envy digraph. In a cycle (a, b, ..., z)
/// each student takes the DA seat of her successor and z takes a's.
struct CyclePacking {
  std::vector<std::vector<Student>> cycles;

  StudentSet covered() const;
  /// Each cycle rotated so its smallest id leads; cycles sorted by leader.
  CyclePacking canonical() const;
  bool empty() const { return cycles.empty(); }

  friend bool operator==(const CyclePacking&, const CyclePacking&) = default;
};

/// Envy digraph of a DA outcome: i -> j iff i prefers DA_j to DA_i. Labels
/// are not materialised per edge; they depend only on the target school, so
/// each school keeps its improvable envious students sorted by priority and
/// label(i -> j) is the prefix ranked above i at DA_j.
class LabelledEnvyDigraph {
 public:
  LabelledEnvyDigraph(const Problem& problem, Matching da);

  const Problem& problem() const { return *problem_; }
  const Matching& da() const { return da_; }
  int num_students() const { return static_cast<int>(out_.size()); }

  bool has_edge(Student i, Student j) const;
  const std::vector<Student>& successors(Student i) const { return out_[i]; }
  long num_edges() const;

  /// l(i -> j): improvable students h that envy j and rank above i at DA_j.
  StudentSet label(Student i, Student j) const;
  /// Improvable students preferring school s to their DA school, best
  /// priority at s first.
  const std::vector<Student>& envious_improvable(School s) const { return envious_[s]; }

  /// Component index per student (Tarjan order) and component sizes.
  const std::vector<int>& scc() const { return scc_; }
  int scc_size(Student i) const { return scc_sizes_[scc_[i]]; }

  bool improvable(Student i) const { return improvable_mask_[i]; }
  const StudentSet& improvable_set() const { return improvable_; }
  StudentSet unimprovable_set() const;

 private:
  const Problem* problem_;
  Matching da_;
  std::vector<std::vector<Student>> out_;
  std::vector<int> scc_;
  std::vector<int> scc_sizes_;
  std::vector<bool> improvable_mask_;
  StudentSet improvable_;
  std::vector<std::vector<Student>> envious_;
};

LabelledEnvyDigraph build_envy(const Problem& problem, const Matching& da_matching);

/// Each cycle member receives her successor's DA school; everyone else
/// keeps DA. Throws InputError on overlapping cycles or non-edges.
Matching apply_packing(const Problem& problem, const Matching& da_matching,
                       const CyclePacking& packing);

/// Union of the labels of all traded edges.
StudentSet packing_label(const LabelledEnvyDigraph& digraph, const CyclePacking& packing);

/// The cycle packing whose execution from DA yields `matching`, in canonical
/// form, or nullopt when the movers do not permute DA seats along envy
/// edges. With multi-seat schools the entrants and leavers of a school are
/// paired in id order.
std::optional<CyclePacking> decompose_as_packing(const Problem& problem, const Matching& da_matching,
                                                 const Matching& matching);

/// Strongly connected components of a digraph given as adjacency lists;
/// returns the component index of every vertex. Iterative Tarjan.
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adjacency);

}  // namespace matchlab
