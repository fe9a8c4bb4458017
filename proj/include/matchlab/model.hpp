#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace matchlab {

using Student = int;
using School = int;

/// The null school s∅: "unassigned", unbounded capacity.
inline constexpr School kNoSchool = -1;

/// Sorted, duplicate-free list of students.
using StudentSet = std::vector<Student>;

/// Raised on malformed instances, unknown ids, infeasible matchings and
/// violated operation preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A many-to-one school choice instance with strict preferences and strict
/// priorities. Immutable after construction; rank tables are precomputed so
/// every comparison is O(1).
class Problem {
 public:
  Problem() = default;

  /// Validates and builds the rank tables. Every priority list must already
  /// be a permutation of all students (see load_problem for completion of
  /// partial lists).
  Problem(std::vector<std::string> student_names,
          std::vector<std::string> school_names, std::vector<int> quotas,
          std::vector<std::vector<School>> prefs,
          std::vector<std::vector<Student>> priorities);

  int num_students() const { return static_cast<int>(student_names_.size()); }
  int num_schools() const { return static_cast<int>(school_names_.size()); }

  const std::string& student_name(Student i) const;
  const std::string& school_name(School s) const;  // "-" for kNoSchool
  const std::vector<std::string>& student_names() const { return student_names_; }
  const std::vector<std::string>& school_names() const { return school_names_; }

  int quota(School s) const { return quotas_[check_school(s)]; }
  const std::vector<int>& quotas() const { return quotas_; }
  const std::vector<School>& prefs(Student i) const { return prefs_[check_student(i)]; }
  const std::vector<std::vector<School>>& all_prefs() const { return prefs_; }
  const std::vector<Student>& priority(School s) const { return priorities_[check_school(s)]; }
  const std::vector<std::vector<Student>>& all_priorities() const { return priorities_; }

  /// 1-based position in i's list; list length + 1 for kNoSchool; list
  /// length + 2 for every unlisted school.
  int rank_of(Student i, School s) const;
  /// 1-based position of i in s's priority list.
  int priority_rank(School s, Student i) const;

  bool prefers(Student i, School a, School b) const { return rank_of(i, a) < rank_of(i, b); }
  bool outranks(School s, Student a, Student b) const {
    return priority_rank(s, a) < priority_rank(s, b);
  }
  bool acceptable(Student i, School s) const {
    return s != kNoSchool && rank_of(i, s) <= static_cast<int>(prefs(i).size());
  }

  /// Name lookups; throw InputError on unknown names.
  Student student_id(const std::string& name) const;
  School school_id(const std::string& name) const;

  /// Schools whose priority list was completed on load (file had a partial
  /// or missing list).
  const std::vector<School>& completed_schools() const { return completed_schools_; }
  bool completed_priorities() const { return !completed_schools_.empty(); }
  void set_completed_schools(std::vector<School> schools) { completed_schools_ = std::move(schools); }

  /// Same instance with the given preference lists (used by EADA's list
  /// truncation and by tests).
  Problem with_prefs(std::vector<std::vector<School>> prefs) const;

  int check_student(Student i) const;
  int check_school(School s) const;

 private:
  std::vector<std::string> student_names_;
  std::vector<std::string> school_names_;
  std::vector<int> quotas_;
  std::vector<std::vector<School>> prefs_;
  std::vector<std::vector<Student>> priorities_;
  std::vector<int> pref_rank_;      // [student * m + school]
  std::vector<int> priority_rank_;  // [school * n + student]
  std::vector<School> completed_schools_;
};

/// Assignment of every student to a school or kNoSchool.
struct Matching {
  std::vector<School> assignment;

  Matching() = default;
  explicit Matching(std::vector<School> a) : assignment(std::move(a)) {}

  School operator[](Student i) const { return assignment[static_cast<std::size_t>(i)]; }
  School& operator[](Student i) { return assignment[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(assignment.size()); }

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;
};

/// A blocking triple: victim prefers school to her assignment, occupant
/// holds a seat at school, and victim has higher priority there.
struct Violation {
  Student victim;
  Student occupant;
  School school;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

enum class Dominance { kADominates, kBDominates, kEqual, kIncomparable };

const char* to_string(Dominance d);

/// Throws InputError unless the matching has one entry per student, valid
/// school ids, and no school over quota.
void validate_matching(const Problem& problem, const Matching& matching);

/// Per-school rosters (students sorted by id).
std::vector<std::vector<Student>> rosters(const Problem& problem, const Matching& matching);

/// rank_of with kNoSchool allowed.
int rank_of(const Problem& problem, Student i, School s);

/// All blocking triples, sorted by (victim, occupant, school).
std::vector<Violation> violations(const Problem& problem, const Matching& matching);

bool respects_priorities_of(const Problem& problem, const Matching& matching,
                            const StudentSet& protected_students);

bool is_nonwasteful(const Problem& problem, const Matching& matching);

bool is_stable(const Problem& problem, const Matching& matching);

Dominance pareto_compare(const Problem& problem, const Matching& a, const Matching& b);

/// True iff a weakly Pareto-dominates b (every student weakly better).
bool weakly_dominates(const Problem& problem, const Matching& a, const Matching& b);

/// Mean of rk_i(μ_i) over students.
double average_rank(const Problem& problem, const Matching& matching);

/// Helpers for StudentSet.
StudentSet make_set(std::vector<Student> students);
bool contains(const StudentSet& set, Student i);
bool is_subset(const StudentSet& sub, const StudentSet& super);
StudentSet all_students(const Problem& problem);
StudentSet set_difference(const StudentSet& a, const StudentSet& b);

}  // namespace matchlab
