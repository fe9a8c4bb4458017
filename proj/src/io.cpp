#include "matchlab/io.hpp"

#include <cstdlib>
#include <fstream>

#ifndef MATCHLAB_FIXTURES_DIR
#define MATCHLAB_FIXTURES_DIR "fixtures"
#endif

namespace matchlab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

}  // namespace

Problem parse_problem(const json& doc) {
  try {
    std::vector<std::string> students;
    for (const auto& s : require(doc, "students")) students.push_back(s.get<std::string>());
    std::vector<std::string> schools;
    std::vector<int> quotas;
    for (const auto& s : require(doc, "schools")) {
      if (s.is_string()) {
        schools.push_back(s.get<std::string>());
        quotas.push_back(1);
      } else {
        schools.push_back(require(s, "name").get<std::string>());
        quotas.push_back(s.value("quota", 1));
      }
    }
    auto index_of = [](const std::vector<std::string>& names, const std::string& name,
                       const char* what) {
      for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return static_cast<int>(k);
      throw InputError(std::string("unknown ") + what + ": " + name);
    };

    std::vector<std::vector<School>> prefs(students.size());
    if (doc.contains("prefs")) {
      for (const auto& [name, list] : doc.at("prefs").items()) {
        const int i = index_of(students, name, "student");
        for (const auto& s : list) prefs[i].push_back(index_of(schools, s.get<std::string>(), "school"));
      }
    }

    const int n = static_cast<int>(students.size());
    std::vector<std::vector<Student>> priorities(schools.size());
    std::vector<School> completed;
    const json empty = json::object();
    const json& prio = doc.contains("priorities") ? doc.at("priorities") : empty;
    for (const auto& [name, list] : prio.items()) {
      const int s = index_of(schools, name, "school");
      for (const auto& i : list) priorities[s].push_back(index_of(students, i.get<std::string>(), "student"));
    }
    for (School s = 0; s < static_cast<School>(schools.size()); ++s) {
      auto& list = priorities[s];
      if (static_cast<int>(list.size()) == n) continue;
      std::vector<bool> listed(static_cast<std::size_t>(n), false);
      for (Student i : list) {
        if (listed[i]) throw InputError("duplicate student in priorities of " + schools[s]);
        listed[i] = true;
      }
      for (Student i = 0; i < n; ++i)
        if (!listed[i]) list.push_back(i);
      completed.push_back(s);
    }
    Problem problem(std::move(students), std::move(schools), std::move(quotas), std::move(prefs),
                    std::move(priorities));
    problem.set_completed_schools(std::move(completed));
    return problem;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

Problem load_problem(const std::filesystem::path& path) { return parse_problem(read_json(path)); }

ordered_json problem_to_json(const Problem& problem) {
  ordered_json doc;
  doc["students"] = problem.student_names();
  ordered_json schools = ordered_json::array();
  for (School s = 0; s < problem.num_schools(); ++s)
    schools.push_back({{"name", problem.school_name(s)}, {"quota", problem.quota(s)}});
  doc["schools"] = schools;
  ordered_json prefs = ordered_json::object();
  for (Student i = 0; i < problem.num_students(); ++i) {
    ordered_json list = ordered_json::array();
    for (School s : problem.prefs(i)) list.push_back(problem.school_name(s));
    prefs[problem.student_name(i)] = list;
  }
  doc["prefs"] = prefs;
  ordered_json prio = ordered_json::object();
  for (School s = 0; s < problem.num_schools(); ++s) {
    ordered_json list = ordered_json::array();
    for (Student i : problem.priority(s)) list.push_back(problem.student_name(i));
    prio[problem.school_name(s)] = list;
  }
  doc["priorities"] = prio;
  return doc;
}

Matching parse_matching(const Problem& problem, const json& doc) {
  Matching m(std::vector<School>(static_cast<std::size_t>(problem.num_students()), kNoSchool));
  try {
    for (const auto& [name, school] : require(doc, "assignment").items()) {
      const Student i = problem.student_id(name);
      if (school.is_null()) continue;
      const auto s = school.get<std::string>();
      if (s.empty() || s == "-") continue;
      m[i] = problem.school_id(s);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed matching: ") + e.what());
  }
  validate_matching(problem, m);
  return m;
}

Matching load_matching(const Problem& problem, const std::filesystem::path& path) {
  return parse_matching(problem, read_json(path));
}

ordered_json matching_to_json(const Problem& problem, const Matching& matching) {
  ordered_json assignment = ordered_json::object();
  for (Student i = 0; i < problem.num_students(); ++i)
    if (matching[i] != kNoSchool) assignment[problem.student_name(i)] = problem.school_name(matching[i]);
  ordered_json doc;
  doc["assignment"] = assignment;
  return doc;
}

std::filesystem::path fixtures_dir() {
  if (const char* env = std::getenv("MATCHLAB_FIXTURES"); env != nullptr && *env != '\0') return env;
  return MATCHLAB_FIXTURES_DIR;
}

std::filesystem::path resolve_instance(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(arg)) return arg;
  const fs::path dir = fixtures_dir();
  for (const fs::path& candidate : {dir / arg, dir / (arg + ".json")})
    if (fs::is_regular_file(candidate)) return candidate;
  return arg;
}

Problem load_fixture(const std::string& stem) { return load_problem(fixtures_dir() / (stem + ".json")); }

std::string format_matching(const Problem& problem, const Matching& matching) {
  std::string out;
  for (Student i = 0; i < matching.size(); ++i) {
    if (i > 0) out += ' ';
    out += problem.student_name(i) + "->" + problem.school_name(matching[i]);
  }
  return out;
}

std::string format_set(const Problem& problem, const StudentSet& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k > 0) out += ',';
    out += problem.student_name(set[k]);
  }
  return out + "}";
}

}  // namespace matchlab
