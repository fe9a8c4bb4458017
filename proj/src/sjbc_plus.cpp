#include "matchlab/sjbc_plus.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "matchlab/assignment.hpp"
#include "matchlab/io.hpp"
#include "matchlab/jbc.hpp"

namespace matchlab {

CyclePacking ExpansionState::packing() const {
  CyclePacking out;
  std::vector<bool> seen(successor.size(), false);
  for (Student start = 0; start < static_cast<int>(successor.size()); ++start) {
    if (seen[start] || successor[start] == start) continue;
    std::vector<Student> cycle;
    for (Student v = start; !seen[v]; v = successor[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out.canonical();
}

std::vector<int> admissibility_guards(const LabelledEnvyDigraph& envy, const StudentSet& beneficiaries) {
  const Problem& problem = envy.problem();
  std::vector<int> guard(static_cast<std::size_t>(problem.num_schools()), INT_MAX);
  for (School s = 0; s < problem.num_schools(); ++s)
    for (Student h : envy.envious_improvable(s))
      if (!contains(beneficiaries, h)) {
        guard[s] = problem.priority_rank(s, h);
        break;  // list is in priority order
      }
  return guard;
}

namespace {

StudentSet moved_students(const std::vector<Student>& successor) {
  StudentSet out;
  for (Student i = 0; i < static_cast<int>(successor.size()); ++i)
    if (successor[i] != i) out.push_back(i);
  return out;
}

}  // namespace

ExpansionState initial_expansion_state(const Baseline& base) {
  const int n = base.problem->num_students();
  ExpansionState state;
  state.successor.resize(static_cast<std::size_t>(n));
  for (Student i = 0; i < n; ++i) state.successor[i] = i;
  for (const auto& cycle : run_jbc(base).packing.cycles)
    for (std::size_t k = 0; k < cycle.size(); ++k) state.successor[cycle[k]] = cycle[(k + 1) % cycle.size()];
  state.beneficiaries = moved_students(state.successor);
  return state;
}

ExpansionState expansion_step(const Baseline& base, const ExpansionState& state) {
  const Problem& problem = *base.problem;
  const Matching& da = base.matching();
  const StudentSet& improvable = base.envy.improvable_set();
  const int k = static_cast<int>(improvable.size());
  const auto guard = admissibility_guards(base.envy, state.beneficiaries);

  constexpr long kForbidden = 2;
  std::vector<std::vector<long>> cost(static_cast<std::size_t>(k), std::vector<long>(k, kForbidden));
  for (int a = 0; a < k; ++a) {
    const Student i = improvable[a];
    cost[a][a] = contains(state.beneficiaries, i) ? kForbidden : 1;
    for (int b = 0; b < k; ++b) {
      const Student j = improvable[b];
      if (a == b || !base.envy.has_edge(i, j)) continue;
      if (problem.priority_rank(da[j], i) <= guard[da[j]]) cost[a][b] = 0;
    }
  }
  const auto solution = min_cost_perfect_matching(cost, kForbidden);
  if (!solution) throw std::logic_error("expansion lost its feasible permutation");

  ExpansionState next;
  next.t = state.t + 1;
  next.successor = state.successor;
  for (int a = 0; a < k; ++a) next.successor[improvable[a]] = improvable[(*solution)[a]];
  next.beneficiaries = moved_students(next.successor);
  if (!is_subset(state.beneficiaries, next.beneficiaries))
    throw std::logic_error("expansion dropped a beneficiary");
  return next;
}

ExpansionResult run_expansion(const Baseline& base, std::vector<PhaseEntry>* log) {
  ExpansionState state = initial_expansion_state(base);
  if (log) log->push_back({"jbc", 0, state.beneficiaries, state.packing().cycles});
  const int limit = base.problem->num_students() + 1;
  for (;;) {
    ExpansionState next = expansion_step(base, state);
    if (log) log->push_back({"expansion", next.t, next.beneficiaries, next.packing().cycles});
    const bool fixed = next.beneficiaries == state.beneficiaries;
    state = std::move(next);
    if (fixed) break;
    if (state.t > limit) throw std::logic_error("expansion did not reach a fixed point");
  }
  ExpansionResult result;
  result.matching = apply_packing(*base.problem, base.matching(), state.packing());
  result.beneficiaries = state.beneficiaries;
  result.state = std::move(state);
  return result;
}

ExpansionResult run_expansion(const Problem& problem) { return run_expansion(make_baseline(problem)); }

namespace {

// Cycle through the smallest vertex lying on any cycle, found by DFS in
// ascending neighbour order. Empty when the digraph is acyclic.
std::vector<int> smallest_cycle(const std::vector<std::vector<int>>& adjacency) {
  const auto comp = strongly_connected_components(adjacency);
  std::vector<int> size(adjacency.size(), 0);
  for (int c : comp) ++size[c];
  int root = -1;
  for (int v = 0; v < static_cast<int>(adjacency.size()); ++v)
    if (size[comp[v]] >= 2) {
      root = v;
      break;
    }
  if (root < 0) return {};

  std::vector<bool> visited(adjacency.size(), false);
  std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
  visited[root] = true;
  while (!stack.empty()) {
    auto& [v, edge] = stack.back();
    if (edge == adjacency[v].size()) {
      stack.pop_back();
      continue;
    }
    const int w = adjacency[v][edge++];
    if (w == root) {
      std::vector<int> cycle;
      for (const auto& frame : stack) cycle.push_back(frame.first);
      return cycle;
    }
    if (!visited[w] && comp[w] == comp[root]) {
      visited[w] = true;
      stack.push_back({w, 0});
    }
  }
  throw std::logic_error("no cycle through a vertex of a nontrivial component");
}

}  // namespace

Matching run_refinement(const Baseline& base, const Matching& mu_star, const StudentSet& b_star,
                        std::vector<PhaseEntry>* log) {
  const Problem& problem = *base.problem;
  const auto guard = admissibility_guards(base.envy, b_star);
  const int k = static_cast<int>(b_star.size());
  const long limit = static_cast<long>(k) * std::max(problem.num_schools() - 1, 0) + 1;

  Matching current = mu_star;
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(k));
  for (long round = 1;; ++round) {
    for (int a = 0; a < k; ++a) {
      adjacency[a].clear();
      const Student i = b_star[a];
      for (int b = 0; b < k; ++b) {
        const School s = current[b_star[b]];
        if (a != b && s != kNoSchool && problem.prefers(i, s, current[i]) &&
            problem.priority_rank(s, i) <= guard[s])
          adjacency[a].push_back(b);
      }
    }
    const auto cycle = smallest_cycle(adjacency);
    if (cycle.empty()) break;
    if (round > limit) throw std::logic_error("refinement exceeded its iteration bound");
    Matching next = current;
    std::vector<Student> students;
    for (std::size_t p = 0; p < cycle.size(); ++p) {
      const Student i = b_star[cycle[p]];
      next[i] = current[b_star[cycle[(p + 1) % cycle.size()]]];
      students.push_back(i);
    }
    current = std::move(next);
    if (log) log->push_back({"refinement", static_cast<int>(round), b_star, {students}});
  }
  return current;
}

Matching run_refinement(const Problem& problem, const Matching& mu_star, const StudentSet& b_star) {
  return run_refinement(make_baseline(problem), mu_star, b_star);
}

Matching run_sjbc_plus(const Baseline& base, std::vector<PhaseEntry>* log) {
  const ExpansionResult expansion = run_expansion(base, log);
  return run_refinement(base, expansion.matching, expansion.beneficiaries, log);
}

Matching run_sjbc_plus(const Problem& problem) { return run_sjbc_plus(make_baseline(problem)); }

std::string format_phase_log(const Problem& problem, const std::vector<PhaseEntry>& log) {
  std::string out;
  for (const PhaseEntry& entry : log) {
    out += entry.phase + " " + std::to_string(entry.iteration) + " B=" + format_set(problem, entry.beneficiaries);
    out += " cycles=";
    if (entry.cycles.empty()) out += "none";
    for (const auto& cycle : entry.cycles) {
      out += "(";
      for (std::size_t p = 0; p < cycle.size(); ++p)
        out += (p ? " " : "") + problem.student_name(cycle[p]);
      out += ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace matchlab
