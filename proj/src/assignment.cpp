#include "matchlab/assignment.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace matchlab {

namespace {

struct Solved {
  std::vector<int> row_to_col;
  std::vector<long> u, v;
};

// Kuhn augmenting search over the zero reduced-cost edges, used to seed
// the Hungarian phases. Row and column ids are 1-based like the caller's.
bool augment_tight(int row, const std::vector<std::vector<int>>& zero, std::vector<int>& p, std::vector<int>& seen,
                   int stamp) {
  for (int j : zero[row]) {
    if (seen[j] == stamp) continue;
    seen[j] = stamp;
    if (p[j] == 0 || augment_tight(p[j], zero, p, seen, stamp)) {
      p[j] = row;
      return true;
    }
  }
  return false;
}

// Shortest augmenting path Hungarian method (1-indexed internally). Rows
// start from their row minimum, and a maximum matching on the resulting
// zero reduced-cost edges is taken as the initial partial assignment; only
// rows left over run a full phase.
Solved hungarian(const std::vector<std::vector<long>>& a) {
  const int k = static_cast<int>(a.size());
  const long inf = std::numeric_limits<long>::max() / 4;
  std::vector<long> u(k + 1, 0), v(k + 1, 0), minv(k + 1);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  std::vector<char> used(k + 1);

  std::vector<std::vector<int>> zero(k + 1);
  for (int i = 1; i <= k; ++i) {
    u[i] = *std::min_element(a[i - 1].begin(), a[i - 1].end());
    for (int j = 1; j <= k; ++j)
      if (a[i - 1][j - 1] == u[i]) zero[i].push_back(j);
  }
  std::vector<char> matched(k + 1, 0);
  for (int i = 1; i <= k; ++i)
    for (int j : zero[i])
      if (p[j] == 0) {
        p[j] = i;
        matched[i] = 1;
        break;
      }
  std::vector<int> seen(k + 1, 0);
  for (int i = 1; i <= k; ++i)
    if (!matched[i] && augment_tight(i, zero, p, seen, i)) matched[i] = 1;
  std::fill(matched.begin(), matched.end(), 0);
  for (int j = 1; j <= k; ++j) matched[p[j]] = 1;

  for (int i = 1; i <= k; ++i) {
    if (matched[i]) continue;
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      long delta = inf;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const long cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Solved out;
  out.row_to_col.assign(k, -1);
  for (int j = 1; j <= k; ++j) out.row_to_col[p[j] - 1] = j - 1;
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  return out;
}

}  // namespace

std::optional<std::vector<int>> min_cost_perfect_matching(const std::vector<std::vector<long>>& cost,
                                                          long forbidden) {
  const int k = static_cast<int>(cost.size());
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != k) throw std::invalid_argument("cost matrix must be square");
  if (k == 0) return std::vector<int>{};

  // Forbidden entries get a cost larger than any allowed perfect matching.
  long span = 0;
  for (const auto& row : cost)
    for (long c : row)
      if (c < forbidden) span = std::max(span, std::abs(c));
  const long big = (span + 1) * (k + 1);
  std::vector<std::vector<long>> a(cost);
  for (auto& row : a)
    for (long& c : row)
      if (c >= forbidden) c = big;

  Solved solved = hungarian(a);
  std::vector<int>& match = solved.row_to_col;
  for (int i = 0; i < k; ++i)
    if (cost[i][match[i]] >= forbidden) return std::nullopt;

  std::vector<std::vector<int>> tight(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (cost[i][j] < forbidden && a[i][j] - solved.u[i] - solved.v[j] == 0) tight[i].push_back(j);

  std::vector<int> owner(k);
  for (int i = 0; i < k; ++i) owner[match[i]] = i;
  std::vector<char> locked(k, 0);
  std::vector<std::vector<int>> reverse(k);
  std::vector<int> next(k);
  std::vector<int> queue;
  for (int r = 0; r < k; ++r) {
    const int home = match[r];
    // Column c can route to `home` if its owner can shift to a column that
    // routes there; the owner of home is r itself, freed by the new choice.
    for (auto& list : reverse) list.clear();
    for (int w = 0; w < k; ++w) {
      if (w == r || locked[match[w]]) continue;
      for (int c : tight[w])
        if (!locked[c]) reverse[c].push_back(match[w]);
    }
    std::fill(next.begin(), next.end(), -2);
    next[home] = -1;
    queue.assign(1, home);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (int c : reverse[queue[q]])
        if (next[c] == -2) {
          next[c] = queue[q];
          queue.push_back(c);
        }
    int choice = -1;
    for (int c : tight[r])
      if (!locked[c] && next[c] != -2) {
        choice = c;
        break;
      }
    if (choice < 0) throw std::logic_error("tight subgraph lost its perfect matching");
    std::vector<int> path;
    for (int c = choice; c != home; c = next[c]) path.push_back(c);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const int w = owner[*it];
      match[w] = next[*it];
      owner[next[*it]] = w;
    }
    match[r] = choice;
    owner[choice] = r;
    locked[choice] = 1;
  }
  return match;
}

}  // namespace matchlab
