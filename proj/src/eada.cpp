#include "matchlab/eada.hpp"

#include <algorithm>

namespace matchlab {

EadaRun run_eada(const Problem& problem, const ConsentSet& consent) {
  for (Student i : consent) problem.check_student(i);
  std::vector<bool> consents(static_cast<std::size_t>(problem.num_students()), false);
  for (Student i : consent) consents[i] = true;

  EadaRun run;
  std::vector<std::vector<School>> prefs = problem.all_prefs();
  std::vector<InterruptPair> deleted;
  for (;;) {
    const Problem current = problem.with_prefs(prefs);
    const DaResult da = run_da(current);
    run.iterations.push_back({deleted, da.matching});

    std::vector<InterruptPair> pairs;
    for (const InterruptPair& p : interrupters(current, da.trace))
      if (consents[p.student]) pairs.push_back(p);
    if (pairs.empty()) {
      run.final = da.matching;
      return run;
    }
    const int last = std::max_element(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
                       return a.rejection_round < b.rejection_round;
                     })->rejection_round;
    deleted.clear();
    for (const InterruptPair& p : pairs) {
      if (p.rejection_round != last) continue;
      std::erase(prefs[p.student], p.school);
      deleted.push_back(p);
    }
  }
}

ConsentSet consent_from_mask(unsigned long mask, int num_students) {
  ConsentSet out;
  for (Student i = 0; i < num_students; ++i)
    if (mask >> i & 1UL) out.push_back(i);
  return out;
}

namespace {

std::size_t orbit_size(const Problem& problem) {
  if (problem.num_students() > 20) throw InputError("consent orbit limited to 20 students");
  return std::size_t{1} << problem.num_students();
}

}  // namespace

std::vector<Matching> eada_orbit(const Problem& problem) {
  const std::size_t total = orbit_size(problem);
  std::vector<Matching> out(total);
  const long count = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic, 16)
  for (long mask = 0; mask < count; ++mask)
    out[mask] = run_eada(problem, consent_from_mask(static_cast<unsigned long>(mask), problem.num_students())).final;
  return out;
}

std::vector<Matching> eada_orbit_serial(const Problem& problem) {
  const std::size_t total = orbit_size(problem);
  std::vector<Matching> out(total);
  for (std::size_t mask = 0; mask < total; ++mask)
    out[mask] = run_eada(problem, consent_from_mask(mask, problem.num_students())).final;
  return out;
}

}  // namespace matchlab
