#include "matchlab/model.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace matchlab {

Problem::Problem(std::vector<std::string> student_names,
                 std::vector<std::string> school_names, std::vector<int> quotas,
                 std::vector<std::vector<School>> prefs,
                 std::vector<std::vector<Student>> priorities)
    : student_names_(std::move(student_names)),
      school_names_(std::move(school_names)),
      quotas_(std::move(quotas)),
      prefs_(std::move(prefs)),
      priorities_(std::move(priorities)) {
  const int n = num_students();
  const int m = num_schools();
  if (static_cast<int>(quotas_.size()) != m)
    throw InputError("quota count does not match school count");
  if (static_cast<int>(prefs_.size()) != n)
    throw InputError("preference list count does not match student count");
  if (static_cast<int>(priorities_.size()) != m)
    throw InputError("priority list count does not match school count");
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : student_names_)
      if (!seen.insert(name).second) throw InputError("duplicate student name: " + name);
    seen.clear();
    for (const auto& name : school_names_)
      if (!seen.insert(name).second) throw InputError("duplicate school name: " + name);
  }
  for (School s = 0; s < m; ++s)
    if (quotas_[s] < 1)
      throw InputError("quota of school " + school_names_[s] + " must be >= 1");

  pref_rank_.assign(static_cast<std::size_t>(n) * m, 0);
  for (Student i = 0; i < n; ++i) {
    const auto& list = prefs_[i];
    const int unlisted = static_cast<int>(list.size()) + 2;
    std::fill_n(pref_rank_.begin() + static_cast<std::ptrdiff_t>(i) * m, m, unlisted);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const School s = list[k];
      if (s < 0 || s >= m) throw InputError("invalid school id in preferences of " + student_names_[i]);
      int& slot = pref_rank_[static_cast<std::size_t>(i) * m + s];
      if (slot != unlisted)
        throw InputError("duplicate school in preferences of " + student_names_[i]);
      slot = static_cast<int>(k) + 1;
    }
  }

  priority_rank_.assign(static_cast<std::size_t>(m) * n, 0);
  for (School s = 0; s < m; ++s) {
    const auto& list = priorities_[s];
    if (static_cast<int>(list.size()) != n)
      throw InputError("priority list of " + school_names_[s] + " is not a permutation of all students");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const Student i = list[k];
      if (i < 0 || i >= n) throw InputError("invalid student id in priorities of " + school_names_[s]);
      int& slot = priority_rank_[static_cast<std::size_t>(s) * n + i];
      if (slot != 0) throw InputError("duplicate student in priorities of " + school_names_[s]);
      slot = static_cast<int>(k) + 1;
    }
  }
}

int Problem::check_student(Student i) const {
  if (i < 0 || i >= num_students()) throw InputError("invalid student id " + std::to_string(i));
  return i;
}

int Problem::check_school(School s) const {
  if (s < 0 || s >= num_schools()) throw InputError("invalid school id " + std::to_string(s));
  return s;
}

const std::string& Problem::student_name(Student i) const { return student_names_[check_student(i)]; }

const std::string& Problem::school_name(School s) const {
  static const std::string kNull = "-";
  if (s == kNoSchool) return kNull;
  return school_names_[check_school(s)];
}

int Problem::rank_of(Student i, School s) const {
  check_student(i);
  if (s == kNoSchool) return static_cast<int>(prefs_[i].size()) + 1;
  check_school(s);
  return pref_rank_[static_cast<std::size_t>(i) * num_schools() + s];
}

int Problem::priority_rank(School s, Student i) const {
  check_school(s);
  check_student(i);
  return priority_rank_[static_cast<std::size_t>(s) * num_students() + i];
}

Student Problem::student_id(const std::string& name) const {
  auto it = std::find(student_names_.begin(), student_names_.end(), name);
  if (it == student_names_.end()) throw InputError("unknown student: " + name);
  return static_cast<Student>(it - student_names_.begin());
}

School Problem::school_id(const std::string& name) const {
  auto it = std::find(school_names_.begin(), school_names_.end(), name);
  if (it == school_names_.end()) throw InputError("unknown school: " + name);
  return static_cast<School>(it - school_names_.begin());
}

Problem Problem::with_prefs(std::vector<std::vector<School>> prefs) const {
  Problem p(student_names_, school_names_, quotas_, std::move(prefs), priorities_);
  p.completed_schools_ = completed_schools_;
  return p;
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::kADominates: return "A-dominates";
    case Dominance::kBDominates: return "B-dominates";
    case Dominance::kEqual: return "equal";
    case Dominance::kIncomparable: return "incomparable";
  }
  return "?";
}

void validate_matching(const Problem& problem, const Matching& matching) {
  if (matching.size() != problem.num_students())
    throw InputError("matching size does not match student count");
  std::vector<int> load(static_cast<std::size_t>(problem.num_schools()), 0);
  for (Student i = 0; i < matching.size(); ++i) {
    const School s = matching[i];
    if (s == kNoSchool) continue;
    if (s < 0 || s >= problem.num_schools()) throw InputError("matching has invalid school id");
    if (++load[s] > problem.quota(s))
      throw InputError("school " + problem.school_name(s) + " is over quota");
  }
}

std::vector<std::vector<Student>> rosters(const Problem& problem, const Matching& matching) {
  std::vector<std::vector<Student>> out(static_cast<std::size_t>(problem.num_schools()));
  for (Student i = 0; i < matching.size(); ++i)
    if (matching[i] != kNoSchool) out[matching[i]].push_back(i);
  return out;
}

int rank_of(const Problem& problem, Student i, School s) { return problem.rank_of(i, s); }

std::vector<Violation> violations(const Problem& problem, const Matching& matching) {
  validate_matching(problem, matching);
  std::vector<Violation> out;
  const auto roster = rosters(problem, matching);
  for (Student victim = 0; victim < problem.num_students(); ++victim) {
    const int own = problem.rank_of(victim, matching[victim]);
    for (School s : problem.prefs(victim)) {
      if (problem.rank_of(victim, s) >= own) break;
      for (Student occupant : roster[s])
        if (problem.outranks(s, victim, occupant)) out.push_back({victim, occupant, s});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool respects_priorities_of(const Problem& problem, const Matching& matching,
                            const StudentSet& protected_students) {
  for (const Violation& v : violations(problem, matching))
    if (contains(protected_students, v.victim)) return false;
  return true;
}

bool is_nonwasteful(const Problem& problem, const Matching& matching) {
  validate_matching(problem, matching);
  std::vector<int> load(static_cast<std::size_t>(problem.num_schools()), 0);
  for (School s : matching.assignment)
    if (s != kNoSchool) ++load[s];
  for (Student i = 0; i < problem.num_students(); ++i) {
    const int own = problem.rank_of(i, matching[i]);
    for (School s : problem.prefs(i)) {
      if (problem.rank_of(i, s) >= own) break;
      if (load[s] < problem.quota(s)) return false;
    }
  }
  return true;
}

bool is_stable(const Problem& problem, const Matching& matching) {
  return violations(problem, matching).empty();
}

Dominance pareto_compare(const Problem& problem, const Matching& a, const Matching& b) {
  validate_matching(problem, a);
  validate_matching(problem, b);
  bool a_better = false;
  bool b_better = false;
  for (Student i = 0; i < problem.num_students(); ++i) {
    const int ra = problem.rank_of(i, a[i]);
    const int rb = problem.rank_of(i, b[i]);
    if (ra < rb) a_better = true;
    if (rb < ra) b_better = true;
  }
  if (a_better && b_better) return Dominance::kIncomparable;
  if (a_better) return Dominance::kADominates;
  if (b_better) return Dominance::kBDominates;
  return Dominance::kEqual;
}

bool weakly_dominates(const Problem& problem, const Matching& a, const Matching& b) {
  for (Student i = 0; i < problem.num_students(); ++i)
    if (problem.rank_of(i, a[i]) > problem.rank_of(i, b[i])) return false;
  return true;
}

double average_rank(const Problem& problem, const Matching& matching) {
  if (problem.num_students() == 0) return 0.0;
  long total = 0;
  for (Student i = 0; i < problem.num_students(); ++i) total += problem.rank_of(i, matching[i]);
  return static_cast<double>(total) / problem.num_students();
}

StudentSet make_set(std::vector<Student> students) {
  std::sort(students.begin(), students.end());
  students.erase(std::unique(students.begin(), students.end()), students.end());
  return students;
}

bool contains(const StudentSet& set, Student i) {
  return std::binary_search(set.begin(), set.end(), i);
}

bool is_subset(const StudentSet& sub, const StudentSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

StudentSet all_students(const Problem& problem) {
  StudentSet out(static_cast<std::size_t>(problem.num_students()));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

StudentSet set_difference(const StudentSet& a, const StudentSet& b) {
  StudentSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace matchlab
