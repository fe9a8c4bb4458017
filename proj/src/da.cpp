#include "matchlab/da.hpp"

#include <algorithm>
#include <tuple>

namespace matchlab {

long DaTrace::proposals() const {
  long total = 0;
  for (const auto& round : rounds)
    for (const auto& event : round.schools) total += static_cast<long>(event.applicants.size());
  return total;
}

std::vector<std::vector<std::vector<Student>>> DaTrace::held_table(int num_schools) const {
  std::vector<std::vector<std::vector<Student>>> table;
  std::vector<std::vector<Student>> held(static_cast<std::size_t>(num_schools));
  for (const auto& round : rounds) {
    for (const auto& event : round.schools) held[event.school] = event.held;
    table.push_back(held);
  }
  return table;
}

DaResult run_da(const Problem& problem) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  std::vector<std::size_t> next(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Student>> held(static_cast<std::size_t>(m));
  std::vector<std::vector<Student>> applicants(static_cast<std::size_t>(m));
  std::vector<School> assignment(static_cast<std::size_t>(n), kNoSchool);

  DaResult result;
  std::vector<Student> proposers(static_cast<std::size_t>(n));
  for (Student i = 0; i < n; ++i) proposers[i] = i;

  while (!proposers.empty()) {
    std::vector<School> touched;
    for (Student i : proposers) {
      const auto& list = problem.prefs(i);
      if (next[i] >= list.size()) continue;  // list exhausted: stays at s∅
      const School s = list[next[i]++];
      if (applicants[s].empty()) touched.push_back(s);
      applicants[s].push_back(i);
    }
    if (touched.empty()) break;
    std::sort(touched.begin(), touched.end());

    DaRound round;
    std::vector<Student> rejected_all;
    for (School s : touched) {
      SchoolRound event;
      event.school = s;
      event.applicants = applicants[s];
      std::sort(event.applicants.begin(), event.applicants.end());

      std::vector<Student> pool = held[s];
      pool.insert(pool.end(), applicants[s].begin(), applicants[s].end());
      std::sort(pool.begin(), pool.end(),
                [&](Student a, Student b) { return problem.outranks(s, a, b); });
      const auto keep = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(problem.quota(s)));
      held[s].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep));
      std::vector<Student> rejected(pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end());

      for (Student i : held[s]) assignment[i] = s;
      for (Student i : rejected) {
        assignment[i] = kNoSchool;
        rejected_all.push_back(i);
      }
      event.held = held[s];
      std::sort(event.held.begin(), event.held.end());
      std::sort(rejected.begin(), rejected.end());
      event.rejected = std::move(rejected);
      round.schools.push_back(std::move(event));
      applicants[s].clear();
    }
    result.trace.rounds.push_back(std::move(round));
    std::sort(rejected_all.begin(), rejected_all.end());
    proposers = std::move(rejected_all);
  }

  result.matching = Matching(std::move(assignment));
  result.trace.final = result.matching;
  return result;
}

std::vector<School> rejecting_schools(const Problem& problem, const DaTrace& trace,
                                      const StudentSet& improvable) {
  for (Student i : improvable) problem.check_student(i);
  std::vector<bool> hit(static_cast<std::size_t>(problem.num_schools()), false);
  for (const auto& round : trace.rounds)
    for (const auto& event : round.schools)
      for (Student i : event.rejected)
        if (contains(improvable, i)) hit[event.school] = true;
  std::vector<School> out;
  for (School s = 0; s < problem.num_schools(); ++s)
    if (hit[s]) out.push_back(s);
  return out;
}

std::vector<InterruptPair> interrupters(const Problem& problem, const DaTrace& trace) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  // Round in which each student was accepted at her current tentative school.
  std::vector<int> accepted_round(static_cast<std::size_t>(n), 0);
  // Latest round (strictly before the current one) with a rejection at s.
  std::vector<int> last_rejection(static_cast<std::size_t>(m), 0);

  std::vector<InterruptPair> out;
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const int round_no = static_cast<int>(r) + 1;
    for (const auto& event : trace.rounds[r].schools) {
      const School s = event.school;
      for (Student i : event.rejected) {
        const bool was_held = !std::binary_search(event.applicants.begin(), event.applicants.end(), i);
        if (was_held && last_rejection[s] >= accepted_round[i])
          out.push_back({i, s, round_no});
      }
      for (Student i : event.held)
        if (std::binary_search(event.applicants.begin(), event.applicants.end(), i))
          accepted_round[i] = round_no;
      if (!event.rejected.empty()) last_rejection[s] = round_no;
    }
  }
  std::sort(out.begin(), out.end(), [](const InterruptPair& a, const InterruptPair& b) {
    return std::tie(a.rejection_round, a.student, a.school) <
           std::tie(b.rejection_round, b.student, b.school);
  });
  return out;
}

}  // namespace matchlab
