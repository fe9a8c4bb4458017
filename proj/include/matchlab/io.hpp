#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "matchlab/model.hpp"

namespace matchlab {

/// Parses the instance schema:
///   {"students":[...], "schools":[{"name":..,"quota":..}],
///    "prefs":{student:[school,...]}, "priorities":{school:[student,...]}}
/// Partial or missing priority lists are completed by appending the
/// unlisted students in declaration order; the affected schools are
/// recorded in Problem::completed_schools().
Problem parse_problem(const nlohmann::json& doc);
Problem load_problem(const std::filesystem::path& path);
nlohmann::ordered_json problem_to_json(const Problem& problem);

/// {"assignment":{student:school}}; students that are absent (or mapped to
/// null) are unassigned.
Matching parse_matching(const Problem& problem, const nlohmann::json& doc);
Matching load_matching(const Problem& problem, const std::filesystem::path& path);
/// Students in declaration order; unassigned students are omitted.
nlohmann::ordered_json matching_to_json(const Problem& problem, const Matching& matching);

/// Directory of the bundled fixtures; MATCHLAB_FIXTURES overrides it.
std::filesystem::path fixtures_dir();

/// Returns `arg` if it names an existing file, otherwise `<fixtures>/<arg>`
/// or `<fixtures>/<arg>.json` when one of those exists. Falls back to `arg`.
std::filesystem::path resolve_instance(const std::string& arg);

/// Loads one of the bundled fixtures by stem ("ex1", "exnoeff", ...).
Problem load_fixture(const std::string& stem);

/// "i1->s4 i2->s2 ..." (unassigned shown as "-").
std::string format_matching(const Problem& problem, const Matching& matching);
/// "{i1,i4,i5}".
std::string format_set(const Problem& problem, const StudentSet& set);

}  // namespace matchlab
