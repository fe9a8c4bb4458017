#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "matchlab/io.hpp"
#include "matchlab/model.hpp"

namespace testing {

using matchlab::Matching;
using matchlab::Problem;
using matchlab::StudentSet;

/// Starts from `base` and reassigns the named students.
inline Matching moved(const Problem& p, const Matching& base,
                      std::initializer_list<std::pair<const char*, const char*>> moves) {
  Matching m = base;
  for (const auto& [student, school] : moves) m[p.student_id(student)] = p.school_id(school);
  return m;
}

inline StudentSet students(const Problem& p, std::initializer_list<const char*> names) {
  std::vector<int> out;
  for (const char* n : names) out.push_back(p.student_id(n));
  return matchlab::make_set(std::move(out));
}

/// Everyone at the school with her own index (i_k -> s_k).
inline Matching diagonal(const Problem& p) {
  Matching m(std::vector<int>(static_cast<std::size_t>(p.num_students())));
  for (int i = 0; i < p.num_students(); ++i) m[i] = i;
  return m;
}

/// Unit-quota instance from 0-based lists with default names.
inline Problem make_problem(std::vector<std::vector<int>> prefs, std::vector<std::vector<int>> priorities,
                            std::vector<int> quotas = {}) {
  std::vector<std::string> st, sc;
  for (std::size_t k = 0; k < prefs.size(); ++k) st.push_back("i" + std::to_string(k + 1));
  for (std::size_t k = 0; k < priorities.size(); ++k) sc.push_back("s" + std::to_string(k + 1));
  if (quotas.empty()) quotas.assign(priorities.size(), 1);
  return Problem(st, sc, quotas, std::move(prefs), std::move(priorities));
}

}  // namespace testing
