#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "matchlab/model.hpp"

namespace matchlab {

enum class PrefModel { kIid, kCorrelated };

struct GenConfig {
  int n = 50;
  PrefModel model = PrefModel::kIid;
  double rho = 0.0;
  double consent_fraction = 0.5;
  int replications = 500;
  std::uint64_t seed = 1;

  /// Throws InputError on out-of-range fields.
  void validate() const;
  int consent_size() const;
};

/// n students, n unit-quota schools, complete lists. iid: every preference
/// and priority list is an independent uniform permutation. correlated:
/// school values q_s ~ N(0,1) are shared, student i ranks schools by
/// rho*q_s + sqrt(1-rho^2)*eps_is descending; priorities stay iid.
/// Lanes per replication: 0 preferences, 1 priorities, 2 consent.
Problem gen_instance(const GenConfig& config, long replication);

/// Uniform consent set of size floor(n * consent_fraction).
StudentSet sample_consent(const GenConfig& config, long replication);

enum class Mechanism { kDa, kJbc, kSjbcPlus, kEadaPartial, kEadaFull };
inline constexpr std::array<Mechanism, 5> kMechanisms{Mechanism::kDa, Mechanism::kJbc, Mechanism::kSjbcPlus,
                                                      Mechanism::kEadaPartial, Mechanism::kEadaFull};
const char* to_string(Mechanism mechanism);

struct MechanismMetrics {
  double avg_rank = 0.0;
  int beneficiaries = 0;
  bool pareto_efficient = false;
  bool justifiable = false;
};

struct InstanceMetrics {
  long replication = 0;
  std::array<MechanismMetrics, kMechanisms.size()> by_mechanism{};
};

InstanceMetrics compute_metrics(const Problem& problem, const StudentSet& consent, long replication = 0);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

/// Rates are percentages. stderr = sample std (n-1) / sqrt(reps).
struct MechanismStats {
  MeanSe avg_rank, beneficiaries, pe_rate, justifiable_rate;
};

struct AggregateStats {
  int replications = 0;
  std::array<MechanismStats, kMechanisms.size()> by_mechanism{};

  const MechanismStats& operator[](Mechanism m) const { return by_mechanism[static_cast<int>(m)]; }
};

/// Sums in replication order, so the result does not depend on threads.
AggregateStats aggregate(const std::vector<InstanceMetrics>& rows);

/// Replications in parallel (jobs <= 0: OpenMP default).
AggregateStats run_experiment(const GenConfig& config, std::vector<InstanceMetrics>* rows = nullptr,
                              int jobs = 0);
AggregateStats run_experiment_serial(const GenConfig& config, std::vector<InstanceMetrics>* rows = nullptr);

/// mechanism,metric,mean,stderr
void write_stats_csv(std::ostream& out, const AggregateStats& stats);
/// replication,mechanism,avg_rank,beneficiaries,pe,justifiable
void write_instances_csv(std::ostream& out, const std::vector<InstanceMetrics>& rows);

/// Mean Spearman correlation between all pairs of student preference lists.
double mean_preference_correlation(const Problem& problem);

}  // namespace matchlab
