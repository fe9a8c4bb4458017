#pragma once

#include <vector>

#include "matchlab/model.hpp"

namespace matchlab {

/// Activity at one school in one round: who applied, who is held after the
/// school processed its applicants together with its previous holds, and
/// who was rejected (new applicants or previously held students).
struct SchoolRound {
  School school;
  std::vector<Student> applicants;
  std::vector<Student> held;
  std::vector<Student> rejected;
};

/// One simultaneous-proposal round. Only schools that received applicants
/// appear.
struct DaRound {
  std::vector<SchoolRound> schools;
};

struct DaTrace {
  std::vector<DaRound> rounds;
  Matching final;

  /// Total number of applications over all rounds.
  long proposals() const;
  /// Held sets of every school after each round (replayed from the events).
  std::vector<std::vector<std::vector<Student>>> held_table(int num_schools) const;
};

/// (student, school) pair where the student was held at school, another
/// student was rejected from school while she was held there (including the
/// round she was accepted), and she was later rejected at rejection_round
/// (1-based).
struct InterruptPair {
  Student student;
  School school;
  int rejection_round;

  friend bool operator==(const InterruptPair&, const InterruptPair&) = default;
};

struct DaResult {
  Matching matching;
  DaTrace trace;
};

/// Student-proposing deferred acceptance with simultaneous rounds: in round
/// 1 every student applies to her first choice; in every later round each
/// student rejected in the previous round applies to her next choice. A
/// student who exhausts her list stays unassigned.
DaResult run_da(const Problem& problem);

/// Schools that rejected at least one student of `improvable` in some round.
std::vector<School> rejecting_schools(const Problem& problem, const DaTrace& trace,
                                      const StudentSet& improvable);

/// All interrupting pairs, sorted by (rejection_round, student, school).
std::vector<InterruptPair> interrupters(const Problem& problem, const DaTrace& trace);

}  // namespace matchlab
