#include "matchlab/envy.hpp"

#include <algorithm>

namespace matchlab {

StudentSet CyclePacking::covered() const {
  std::vector<Student> all;
  for (const auto& c : cycles) all.insert(all.end(), c.begin(), c.end());
  return make_set(std::move(all));
}

CyclePacking CyclePacking::canonical() const {
  CyclePacking out;
  for (auto c : cycles) {
    if (c.empty()) continue;
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    out.cycles.push_back(std::move(c));
  }
  std::sort(out.cycles.begin(), out.cycles.end());
  return out;
}

std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next edge)
  int counter = 0;
  int components = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge < adjacency[v].size()) {
        const int w = adjacency[v][edge++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  return comp;
}

LabelledEnvyDigraph::LabelledEnvyDigraph(const Problem& problem, Matching da)
    : problem_(&problem), da_(std::move(da)) {
  validate_matching(problem, da_);
  const int n = problem.num_students();
  out_.resize(static_cast<std::size_t>(n));
  for (Student i = 0; i < n; ++i) {
    const int own = problem.rank_of(i, da_[i]);
    for (Student j = 0; j < n; ++j)
      if (j != i && da_[j] != kNoSchool && problem.rank_of(i, da_[j]) < own) out_[i].push_back(j);
  }

  scc_ = strongly_connected_components(out_);
  scc_sizes_.assign(static_cast<std::size_t>(n), 0);
  for (int c : scc_) ++scc_sizes_[c];
  improvable_mask_.assign(static_cast<std::size_t>(n), false);
  for (Student i = 0; i < n; ++i) {
    if (scc_sizes_[scc_[i]] >= 2) {
      improvable_mask_[i] = true;
      improvable_.push_back(i);
    }
  }

  envious_.resize(static_cast<std::size_t>(problem.num_schools()));
  for (Student h : improvable_) {
    const int own = problem.rank_of(h, da_[h]);
    for (School s : problem.prefs(h)) {
      if (problem.rank_of(h, s) >= own) break;
      envious_[s].push_back(h);
    }
  }
  for (School s = 0; s < problem.num_schools(); ++s)
    std::sort(envious_[s].begin(), envious_[s].end(),
              [&](Student a, Student b) { return problem.outranks(s, a, b); });
}

bool LabelledEnvyDigraph::has_edge(Student i, Student j) const {
  if (i == j || da_[j] == kNoSchool) return false;
  return problem_->prefers(i, da_[j], da_[i]);
}

long LabelledEnvyDigraph::num_edges() const {
  long total = 0;
  for (const auto& list : out_) total += static_cast<long>(list.size());
  return total;
}

StudentSet LabelledEnvyDigraph::label(Student i, Student j) const {
  const School s = da_[j];
  if (s == kNoSchool) return {};
  const int bar = problem_->priority_rank(s, i);
  std::vector<Student> out;
  for (Student h : envious_[s]) {
    if (problem_->priority_rank(s, h) >= bar) break;
    out.push_back(h);
  }
  return make_set(std::move(out));
}

StudentSet LabelledEnvyDigraph::unimprovable_set() const {
  return set_difference(all_students(*problem_), improvable_);
}

LabelledEnvyDigraph build_envy(const Problem& problem, const Matching& da_matching) {
  return LabelledEnvyDigraph(problem, da_matching);
}

Matching apply_packing(const Problem& problem, const Matching& da_matching,
                       const CyclePacking& packing) {
  validate_matching(problem, da_matching);
  Matching out = da_matching;
  std::vector<bool> used(static_cast<std::size_t>(problem.num_students()), false);
  for (const auto& cycle : packing.cycles) {
    if (cycle.size() < 2) throw InputError("cycle must contain at least two students");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Student i = problem.check_student(cycle[k]);
      const Student j = problem.check_student(cycle[(k + 1) % cycle.size()]);
      if (used[i]) throw InputError("cycles overlap at student " + problem.student_name(i));
      used[i] = true;
      if (da_matching[j] == kNoSchool || !problem.prefers(i, da_matching[j], da_matching[i]))
        throw InputError(problem.student_name(i) + " -> " + problem.student_name(j) +
                         " is not an envy edge");
      out[i] = da_matching[j];
    }
  }
  return out;
}

StudentSet packing_label(const LabelledEnvyDigraph& digraph, const CyclePacking& packing) {
  std::vector<Student> all;
  for (const auto& cycle : packing.cycles)
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const auto l = digraph.label(cycle[k], cycle[(k + 1) % cycle.size()]);
      all.insert(all.end(), l.begin(), l.end());
    }
  return make_set(std::move(all));
}

std::optional<CyclePacking> decompose_as_packing(const Problem& problem, const Matching& da_matching,
                                                 const Matching& matching) {
  validate_matching(problem, matching);
  const int n = problem.num_students();
  const int m = problem.num_schools();
  std::vector<std::vector<Student>> entering(static_cast<std::size_t>(m));
  std::vector<std::vector<Student>> leaving(static_cast<std::size_t>(m));
  for (Student i = 0; i < n; ++i) {
    if (matching[i] == da_matching[i]) continue;
    if (matching[i] == kNoSchool || da_matching[i] == kNoSchool) return std::nullopt;
    if (!problem.prefers(i, matching[i], da_matching[i])) return std::nullopt;
    entering[matching[i]].push_back(i);
    leaving[da_matching[i]].push_back(i);
  }
  std::vector<Student> successor(static_cast<std::size_t>(n), -1);
  for (School s = 0; s < m; ++s) {
    if (entering[s].size() != leaving[s].size()) return std::nullopt;
    for (std::size_t k = 0; k < entering[s].size(); ++k) successor[entering[s][k]] = leaving[s][k];
  }
  CyclePacking packing;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Student start = 0; start < n; ++start) {
    if (successor[start] < 0 || seen[start]) continue;
    std::vector<Student> cycle;
    for (Student v = start; !seen[v]; v = successor[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
    packing.cycles.push_back(std::move(cycle));
  }
  return packing.canonical();
}

}  // namespace matchlab
