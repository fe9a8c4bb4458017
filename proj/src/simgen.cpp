#include "matchlab/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <omp.h>

#include "matchlab/analysis.hpp"
#include "matchlab/eada.hpp"
#include "matchlab/jbc.hpp"
#include "matchlab/rng.hpp"
#include "matchlab/sjbc_plus.hpp"

namespace matchlab {

void GenConfig::validate() const {
  if (n < 1) throw InputError("n must be positive");
  if (replications < 1) throw InputError("replications must be positive");
  if (!(consent_fraction >= 0.0 && consent_fraction <= 1.0)) throw InputError("consent fraction must lie in [0,1]");
  if (model == PrefModel::kCorrelated && !(rho >= 0.0 && rho <= 1.0)) throw InputError("rho must lie in [0,1]");
}

int GenConfig::consent_size() const { return static_cast<int>(std::floor(n * consent_fraction)); }

Problem gen_instance(const GenConfig& config, long replication) {
  config.validate();
  const int n = config.n;
  const auto rep = static_cast<std::uint64_t>(replication);
  Rng pref_rng(config.seed, rep, 0);
  Rng prio_rng(config.seed, rep, 1);

  std::vector<std::vector<School>> prefs(static_cast<std::size_t>(n));
  if (config.model == PrefModel::kIid) {
    for (auto& list : prefs) list = random_permutation(n, pref_rng);
  } else {
    const double w = std::sqrt(std::max(0.0, 1.0 - config.rho * config.rho));
    std::vector<double> q(static_cast<std::size_t>(n));
    for (double& value : q) value = pref_rng.normal();
    std::vector<double> u(static_cast<std::size_t>(n));
    for (auto& list : prefs) {
      for (School s = 0; s < n; ++s) u[s] = config.rho * q[s] + w * pref_rng.normal();
      list.resize(static_cast<std::size_t>(n));
      std::iota(list.begin(), list.end(), 0);
      std::stable_sort(list.begin(), list.end(), [&](School a, School b) { return u[a] > u[b]; });
    }
  }
  std::vector<std::vector<Student>> priorities(static_cast<std::size_t>(n));
  for (auto& list : priorities) list = random_permutation(n, prio_rng);

  std::vector<std::string> students, schools;
  for (int k = 1; k <= n; ++k) {
    students.push_back("i" + std::to_string(k));
    schools.push_back("s" + std::to_string(k));
  }
  return Problem(std::move(students), std::move(schools), std::vector<int>(static_cast<std::size_t>(n), 1),
                 std::move(prefs), std::move(priorities));
}

StudentSet sample_consent(const GenConfig& config, long replication) {
  Rng rng(config.seed, static_cast<std::uint64_t>(replication), 2);
  return random_subset(config.n, config.consent_size(), rng);
}

const char* to_string(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kDa: return "DA";
    case Mechanism::kJbc: return "JBC";
    case Mechanism::kSjbcPlus: return "SJBC+";
    case Mechanism::kEadaPartial: return "EADA-partial";
    case Mechanism::kEadaFull: return "EADA-full";
  }
  return "?";
}

InstanceMetrics compute_metrics(const Problem& problem, const StudentSet& consent, long replication) {
  const Baseline base = make_baseline(problem);
  std::array<Matching, kMechanisms.size()> outcome;
  outcome[static_cast<int>(Mechanism::kDa)] = base.matching();
  outcome[static_cast<int>(Mechanism::kJbc)] = run_jbc(base).matching;
  outcome[static_cast<int>(Mechanism::kSjbcPlus)] = run_sjbc_plus(base);
  outcome[static_cast<int>(Mechanism::kEadaPartial)] = run_eada(problem, consent).final;
  outcome[static_cast<int>(Mechanism::kEadaFull)] = run_eada(problem, all_students(problem)).final;

  InstanceMetrics row;
  row.replication = replication;
  for (std::size_t k = 0; k < kMechanisms.size(); ++k) {
    const Verdict verdict = is_justifiable(base, outcome[k]);
    row.by_mechanism[k] = {average_rank(problem, outcome[k]), static_cast<int>(verdict.beneficiaries.size()),
                           verdict.pareto_efficient, verdict.justifiable};
  }
  return row;
}

namespace {

MeanSe mean_se(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  MeanSe out;
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

}  // namespace

AggregateStats aggregate(const std::vector<InstanceMetrics>& rows) {
  std::vector<const InstanceMetrics*> ordered;
  for (const auto& row : rows) ordered.push_back(&row);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->replication < b->replication; });

  AggregateStats stats;
  stats.replications = static_cast<int>(rows.size());
  if (rows.empty()) return stats;
  for (std::size_t k = 0; k < kMechanisms.size(); ++k) {
    std::vector<double> rank, ben, pe, just;
    for (const auto* row : ordered) {
      const MechanismMetrics& m = row->by_mechanism[k];
      rank.push_back(m.avg_rank);
      ben.push_back(m.beneficiaries);
      pe.push_back(m.pareto_efficient ? 100.0 : 0.0);
      just.push_back(m.justifiable ? 100.0 : 0.0);
    }
    stats.by_mechanism[k] = {mean_se(rank), mean_se(ben), mean_se(pe), mean_se(just)};
  }
  return stats;
}

AggregateStats run_experiment(const GenConfig& config, std::vector<InstanceMetrics>* rows, int jobs) {
  config.validate();
  std::vector<InstanceMetrics> out(static_cast<std::size_t>(config.replications));
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int r = 0; r < config.replications; ++r)
    out[r] = compute_metrics(gen_instance(config, r), sample_consent(config, r), r);
  AggregateStats stats = aggregate(out);
  if (rows) *rows = std::move(out);
  return stats;
}

AggregateStats run_experiment_serial(const GenConfig& config, std::vector<InstanceMetrics>* rows) {
  config.validate();
  std::vector<InstanceMetrics> out(static_cast<std::size_t>(config.replications));
  for (int r = 0; r < config.replications; ++r)
    out[r] = compute_metrics(gen_instance(config, r), sample_consent(config, r), r);
  AggregateStats stats = aggregate(out);
  if (rows) *rows = std::move(out);
  return stats;
}

void write_stats_csv(std::ostream& out, const AggregateStats& stats) {
  out << "mechanism,metric,mean,stderr\n";
  out.precision(6);
  out << std::fixed;
  for (Mechanism m : kMechanisms) {
    const MechanismStats& s = stats[m];
    const std::pair<const char*, const MeanSe*> metrics[] = {{"avg_rank", &s.avg_rank},
                                                             {"beneficiaries", &s.beneficiaries},
                                                             {"pe_rate", &s.pe_rate},
                                                             {"justifiable_rate", &s.justifiable_rate}};
    for (const auto& [name, value] : metrics)
      out << to_string(m) << ',' << name << ',' << value->mean << ',' << value->se << '\n';
  }
}

void write_instances_csv(std::ostream& out, const std::vector<InstanceMetrics>& rows) {
  out << "replication,mechanism,avg_rank,beneficiaries,pe,justifiable\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& row : rows)
    for (Mechanism m : kMechanisms) {
      const MechanismMetrics& x = row.by_mechanism[static_cast<int>(m)];
      out << row.replication << ',' << to_string(m) << ',' << x.avg_rank << ',' << x.beneficiaries << ','
          << (x.pareto_efficient ? 1 : 0) << ',' << (x.justifiable ? 1 : 0) << '\n';
    }
}

double mean_preference_correlation(const Problem& problem) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  if (n < 2 || m < 2) return 0.0;
  double total = 0.0;
  long pairs = 0;
  const double denom = static_cast<double>(m) * (static_cast<double>(m) * m - 1.0);
  for (Student a = 0; a < n; ++a)
    for (Student b = a + 1; b < n; ++b) {
      double d2 = 0.0;
      for (School s = 0; s < m; ++s) {
        const double d = problem.rank_of(a, s) - problem.rank_of(b, s);
        d2 += d * d;
      }
      total += 1.0 - 6.0 * d2 / denom;
      ++pairs;
    }
  return total / static_cast<double>(pairs);
}

}  // namespace matchlab
