#include "matchlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "matchlab/analysis.hpp"
#include "matchlab/eada.hpp"
#include "matchlab/io.hpp"
#include "matchlab/jbc.hpp"
#include "matchlab/oracle.hpp"
#include "matchlab/simgen.hpp"
#include "matchlab/sjbc_plus.hpp"

namespace matchlab {

namespace {

struct Options {
  std::string instance;
  std::string matching;
  std::string mechanism = "da";
  std::string consent;
  std::string out;
  bool graph = false;
  bool log_phases = false;
  bool table = false;
  std::string claim;
  long budget = kDefaultEnumerationBudget;
  bool nested_consent = false;
  // simulate
  int n = 50;
  std::string model = "iid";
  std::optional<double> rho;
  int reps = 500;
  double consent_frac = 0.5;
  std::optional<std::uint64_t> seed;
  std::string per_instance;
  int jobs = 0;
  bool full = false;
};

// Writes to --out when given, else to stdout.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw InputError("cannot write " + opt.out);
  file << text;
}

std::string json_text(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string matching_table(const Problem& problem, const Matching& matching) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "student" << std::setw(10) << "school" << "rank\n";
  for (Student i = 0; i < problem.num_students(); ++i)
    os << std::setw(10) << problem.student_name(i) << std::setw(10) << problem.school_name(matching[i])
       << problem.rank_of(i, matching[i]) << "\n";
  return os.str();
}

ConsentSet parse_consent(const Problem& problem, const std::string& spec) {
  if (spec == "all") return all_students(problem);
  if (spec == "none" || spec.empty()) return {};
  std::vector<Student> out;
  std::stringstream ss(spec);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) out.push_back(problem.student_id(name));
  return make_set(std::move(out));
}

std::string format_cycle(const Problem& problem, const std::vector<int>& cycle, bool schools) {
  std::string s = "(";
  for (std::size_t k = 0; k < cycle.size(); ++k)
    s += (k ? " -> " : "") + (schools ? problem.school_name(cycle[k]) : problem.student_name(cycle[k]));
  return s + ")";
}

void print_school_graph(const Problem& problem, const SchoolGraph& graph, std::ostream& err) {
  err << "school graph:";
  if (graph.empty()) err << " empty";
  err << "\n";
  for (School s : graph.nodes)
    err << "  " << problem.school_name(s) << " -> " << problem.school_name(graph.succ[s]) << " via "
        << problem.student_name(graph.jbc_student[s]) << "\n";
  for (const auto& cycle : graph.cycles) err << "  cycle " << format_cycle(problem, cycle, true) << "\n";
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  const Problem problem = load_problem(resolve_instance(opt.instance));
  if (!opt.consent.empty() && opt.mechanism != "eada") throw InputError("--consent applies only to eada");
  if (opt.graph && opt.mechanism != "jbc" && opt.mechanism != "sjbc+")
    throw InputError("--graph applies only to jbc and sjbc+");
  if (opt.log_phases && opt.mechanism != "sjbc+") throw InputError("--log-phases applies only to sjbc+");

  const Baseline base = make_baseline(problem);
  Matching result;
  if (opt.mechanism == "da") {
    result = base.matching();
  } else if (opt.mechanism == "jbc" || opt.mechanism == "sjbc+") {
    if (opt.graph) print_school_graph(problem, build_school_graph(base), err);
    if (opt.mechanism == "jbc") {
      result = run_jbc(base).matching;
    } else {
      std::vector<PhaseEntry> log;
      result = run_sjbc_plus(base, opt.log_phases ? &log : nullptr);
      if (opt.log_phases) err << format_phase_log(problem, log);
    }
  } else if (opt.mechanism == "eada") {
    if (opt.consent.empty()) throw InputError("eada needs --consent (list, all or none)");
    result = run_eada(problem, parse_consent(problem, opt.consent)).final;
  } else {
    throw InputError("unknown mechanism " + opt.mechanism);
  }
  emit(opt, out, opt.table ? matching_table(problem, result) : json_text(matching_to_json(problem, result)));
  return 0;
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const Problem problem = load_problem(resolve_instance(opt.instance));
  const Matching matching = load_matching(problem, opt.matching);
  const Baseline base = make_baseline(problem);
  const Verdict verdict = is_justifiable(base, matching);

  std::ostringstream os;
  os << "beneficiaries: " << format_set(problem, verdict.beneficiaries) << "\n";
  os << "violations: " << verdict.violations.size() << "\n";
  for (const TaggedViolation& v : verdict.violations)
    os << "  " << problem.student_name(v.violation.victim) << " by " << problem.student_name(v.violation.occupant)
       << " at " << problem.school_name(v.violation.school) << " [" << to_string(v.kind) << "]\n";
  os << "packing: ";
  if (!verdict.packing) {
    os << "none\n";
  } else if (verdict.packing->empty()) {
    os << "empty\n";
  } else {
    for (const auto& cycle : verdict.packing->cycles) os << format_cycle(problem, cycle, false);
    os << " label " << format_set(problem, packing_label(base.envy, *verdict.packing)) << "\n";
  }
  os << "justifiable: " << (verdict.justifiable ? "true" : "false") << "\n";
  os << "strongly_justifiable: " << (verdict.strongly_justifiable ? "true" : "false") << "\n";
  os << "pareto_efficient: " << (verdict.pareto_efficient ? "true" : "false") << "\n";
  if (!opt.claim.empty()) {
    const auto colon = opt.claim.find(':');
    if (colon == std::string::npos) throw InputError("--claim expects STUDENT:SCHOOL");
    const ReassignmentChain chain = reassignment_chain(problem, matching, problem.student_id(opt.claim.substr(0, colon)),
                                                       problem.school_id(opt.claim.substr(colon + 1)));
    os << "chain: " << format_chain(problem, chain) << "\n";
    os << "chain_vacuous: " << (chain.vacuous ? "true" : "false") << "\n";
  }
  emit(opt, out, os.str());
  return verdict.justifiable ? 0 : 1;
}

std::string names(const Problem& problem, const std::vector<Student>& students) {
  std::string s;
  for (std::size_t k = 0; k < students.size(); ++k) s += (k ? "," : "") + problem.student_name(students[k]);
  return s;
}

int cmd_trace(const Options& opt, std::ostream& out) {
  const Problem problem = load_problem(resolve_instance(opt.instance));
  const DaResult da = run_da(problem);
  const auto pairs = interrupters(problem, da.trace);
  if (opt.table) {
    std::ostringstream os;
    for (std::size_t r = 0; r < da.trace.rounds.size(); ++r) {
      os << "round " << r + 1 << "\n";
      for (const SchoolRound& sr : da.trace.rounds[r].schools)
        os << "  " << std::left << std::setw(6) << problem.school_name(sr.school) << "applicants ["
           << names(problem, sr.applicants) << "] held [" << names(problem, sr.held) << "] rejected ["
           << names(problem, sr.rejected) << "]\n";
    }
    os << "final: " << format_matching(problem, da.matching) << "\n";
    os << "interrupters:";
    if (pairs.empty()) os << " none";
    for (const InterruptPair& p : pairs)
      os << " (" << problem.student_name(p.student) << "," << problem.school_name(p.school) << ")@"
         << p.rejection_round;
    os << "\n";
    emit(opt, out, os.str());
    return 0;
  }
  nlohmann::ordered_json doc;
  doc["rounds"] = nlohmann::ordered_json::array();
  auto name_list = [&](const std::vector<Student>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (Student i : v) arr.push_back(problem.student_name(i));
    return arr;
  };
  for (const DaRound& round : da.trace.rounds) {
    auto entries = nlohmann::ordered_json::array();
    for (const SchoolRound& sr : round.schools)
      entries.push_back({{"school", problem.school_name(sr.school)},
                         {"applicants", name_list(sr.applicants)},
                         {"held", name_list(sr.held)},
                         {"rejected", name_list(sr.rejected)}});
    doc["rounds"].push_back(entries);
  }
  doc["final"] = matching_to_json(problem, da.matching)["assignment"];
  doc["interrupters"] = nlohmann::ordered_json::array();
  for (const InterruptPair& p : pairs)
    doc["interrupters"].push_back({{"student", problem.student_name(p.student)},
                                   {"school", problem.school_name(p.school)},
                                   {"round", p.rejection_round}});
  emit(opt, out, json_text(doc));
  return 0;
}

int cmd_envy(const Options& opt, std::ostream& out) {
  const Problem problem = load_problem(resolve_instance(opt.instance));
  const Baseline base = make_baseline(problem);
  std::ostringstream os;
  for (Student i = 0; i < problem.num_students(); ++i)
    for (Student j : base.envy.successors(i))
      os << problem.student_name(i) << " -> " << problem.student_name(j) << " ["
         << names(problem, base.envy.label(i, j)) << "]\n";
  emit(opt, out, os.str());
  return 0;
}

int cmd_oracle(const Options& opt, std::ostream& out) {
  const Problem problem = load_problem(resolve_instance(opt.instance));
  const OracleReport report = oracle_report(problem, opt.budget);
  std::ostringstream os;
  auto family = [&](const char* label, const std::vector<Matching>& ms) {
    os << label << ": " << ms.size() << "\n";
    for (const Matching& m : ms) os << "  " << format_matching(problem, m) << "\n";
  };
  if (problem.completed_priorities()) {
    os << "note: priorities completed in declaration order at";
    for (School s : problem.completed_schools()) os << " " << problem.school_name(s);
    os << "; checks that use appended entries rest on this completion\n";
  }
  os << "enumerated: " << report.enumerated << "\n";
  os << "da: " << format_matching(problem, report.da) << "\n";
  os << "unimprovable: " << format_set(problem, report.unimprovable) << "\n";
  family("dominating", report.dominating);
  family("justifiable", report.justifiable);
  family("strongly_justifiable", report.strongly_justifiable);
  family("pareto_efficient", report.pareto_efficient);
  std::vector<ClaimCheck> claims = report.claims;
  if (opt.nested_consent)
    for (const ClaimCheck& c : verify_theorem5_steps(problem)) claims.push_back(c);
  bool ok = true;
  for (const ClaimCheck& c : claims) {
    const char* tag = c.passed ? "pass" : (c.informational ? "info" : "FAIL");
    os << "[" << tag << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
    ok = ok && (c.passed || c.informational);
  }
  emit(opt, out, os.str());
  return ok ? 0 : 1;
}

int cmd_orbit(const Options& opt, std::ostream& out) {
  const Problem problem = load_problem(resolve_instance(opt.instance));
  const std::vector<Matching> orbit = eada_orbit(problem);
  std::map<Matching, std::vector<std::size_t>> groups;
  for (std::size_t mask = 0; mask < orbit.size(); ++mask) groups[orbit[mask]].push_back(mask);
  std::ostringstream os;
  os << "consent sets: " << orbit.size() << ", distinct outcomes: " << groups.size() << "\n";
  for (const auto& [matching, masks] : groups) {
    os << format_matching(problem, matching) << "  (" << masks.size() << " sets)\n";
    for (std::size_t mask : masks)
      os << "  W=" << format_set(problem, consent_from_mask(mask, problem.num_students())) << "\n";
  }
  emit(opt, out, os.str());
  return 0;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  if (!opt.seed) throw InputError("simulate requires --seed");
  GenConfig config;
  config.n = opt.n;
  config.replications = opt.full ? 2000 : opt.reps;
  config.consent_fraction = opt.consent_frac;
  config.seed = *opt.seed;
  if (opt.model == "iid") {
    if (opt.rho) throw InputError("--rho applies only to the correlated model");
  } else if (opt.model == "correlated") {
    if (!opt.rho) throw InputError("the correlated model requires --rho");
    config.model = PrefModel::kCorrelated;
    config.rho = *opt.rho;
  } else {
    throw InputError("unknown model " + opt.model);
  }
  config.validate();
  std::vector<InstanceMetrics> rows;
  const AggregateStats stats = run_experiment(config, &rows, opt.jobs);
  std::ostringstream os;
  write_stats_csv(os, stats);
  emit(opt, out, os.str());
  if (!opt.per_instance.empty()) {
    std::ofstream file(opt.per_instance);
    if (!file) throw InputError("cannot write " + opt.per_instance);
    write_instances_csv(file, rows);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Improvement mechanisms over deferred acceptance", "matchlab"};
  app.require_subcommand(1);
  Options opt;

  auto* solve = app.add_subcommand("solve", "Run a mechanism and print the matching");
  solve->add_option("instance", opt.instance, "Instance file or fixture name")->required();
  solve->add_option("--mechanism", opt.mechanism, "da, jbc, sjbc+ or eada")
      ->check(CLI::IsMember({"da", "jbc", "sjbc+", "eada"}));
  solve->add_option("--consent", opt.consent, "eada consent set: i1,i5,... or all or none");
  solve->add_flag("--graph", opt.graph, "Print the JBC school graph to stderr");
  solve->add_flag("--log-phases", opt.log_phases, "Print SJBC+ phases to stderr");
  solve->add_option("--out", opt.out, "Write output to a file");
  solve->add_flag("--table", opt.table, "Human-readable table instead of JSON");

  auto* analyze = app.add_subcommand("analyze", "Justifiability verdict for a matching (exit 1 if unjustifiable)");
  analyze->add_option("instance", opt.instance, "Instance file or fixture name")->required();
  analyze->add_option("matching", opt.matching, "Matching file")->required();
  analyze->add_option("--claim", opt.claim, "Simulate the reassignment chain of STUDENT:SCHOOL");
  analyze->add_option("--out", opt.out, "Write output to a file");

  auto* trace = app.add_subcommand("trace", "DA rounds and interrupting pairs");
  trace->add_option("instance", opt.instance, "Instance file or fixture name")->required();
  trace->add_flag("--table", opt.table, "Human-readable rounds instead of JSON");
  trace->add_option("--out", opt.out, "Write output to a file");

  auto* envy = app.add_subcommand("envy", "Labelled envy digraph of DA");
  envy->add_option("instance", opt.instance, "Instance file or fixture name")->required();
  envy->add_option("--out", opt.out, "Write output to a file");

  auto* oracle = app.add_subcommand("oracle", "Brute-force report with claim checks (exit 1 on failure)");
  oracle->add_option("instance", opt.instance, "Instance file or fixture name")->required();
  oracle->add_option("--budget", opt.budget, "Enumeration budget");
  oracle->add_flag("--nested-consent", opt.nested_consent, "Also run the nested consent-set checks (needs i1..i7, s1..s7)");
  oracle->add_option("--out", opt.out, "Write output to a file");

  auto* orbit = app.add_subcommand("eada-orbit", "EADA outcome for every consent set");
  orbit->add_option("instance", opt.instance, "Instance file or fixture name")->required();
  orbit->add_option("--out", opt.out, "Write output to a file");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo comparison of the mechanisms");
  simulate->add_option("--n", opt.n, "Market size");
  simulate->add_option("--model", opt.model, "iid or correlated")->check(CLI::IsMember({"iid", "correlated"}));
  simulate->add_option("--rho", opt.rho, "Correlation (correlated model only)");
  simulate->add_option("--reps", opt.reps, "Replications");
  simulate->add_option("--consent-frac", opt.consent_frac, "Consent fraction for partial EADA");
  simulate->add_option("--seed", opt.seed, "Random seed (required)");
  simulate->add_option("--out", opt.out, "Write the stats CSV to a file");
  simulate->add_option("--per-instance", opt.per_instance, "Write per-replication metrics CSV");
  simulate->add_option("--jobs", opt.jobs, "Worker threads (0 = OpenMP default)");
  simulate->add_flag("--full", opt.full, "Large run: forces 2000 replications");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(opt, out, err);
    if (*analyze) return cmd_analyze(opt, out);
    if (*trace) return cmd_trace(opt, out);
    if (*envy) return cmd_envy(opt, out);
    if (*oracle) return cmd_oracle(opt, out);
    if (*orbit) return cmd_orbit(opt, out);
    if (*simulate) return cmd_simulate(opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace matchlab
