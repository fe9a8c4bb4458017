#pragma once

#include <optional>
#include <vector>

namespace matchlab {

/// Square min-cost perfect matching. Entries >= `forbidden` mark missing
/// edges. Returns row -> column, or nullopt when no perfect matching avoids
/// forbidden entries. Among all optimal matchings the one with the
/// lexicographically smallest column vector is returned.
///
/// Hungarian method with potentials, O(k^3). The potentials certify the
/// set of optimal matchings as the perfect matchings of the tight-edge
/// subgraph, so the lexicographic choice is made there by fixing rows in
/// order and rotating alternating cycles, O(k * edges).
std::optional<std::vector<int>> min_cost_perfect_matching(const std::vector<std::vector<long>>& cost,
                                                          long forbidden);

}  // namespace matchlab
