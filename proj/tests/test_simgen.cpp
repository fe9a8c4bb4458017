#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "matchlab/rng.hpp"
#include "matchlab/simgen.hpp"

using namespace matchlab;

TEST_CASE("mt19937_64 stream matches the standard's reference value") {
  // The standard requires the 10000th output of a default-seeded engine.
  std::mt19937_64 engine;
  engine.discard(9999);
  CHECK(engine() == 9981545732273789042ULL);
}

TEST_CASE("streams are deterministic and independent") {
  Rng a(1, 0, 0), b(1, 0, 0), c(1, 1, 0), d(1, 0, 1);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
}

TEST_CASE("bounded draws, uniforms and normals") {
  Rng rng(5, 0, 0);
  std::vector<int> counts(6, 0);
  for (int k = 0; k < 60000; ++k) ++counts[rng.below(6)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
  double sum = 0, sq = 0;
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / 100000) < 0.02);
  CHECK(std::abs(sq / 100000 - 1.0) < 0.03);
}

TEST_CASE("permutations and subsets") {
  Rng rng(9, 0, 0);
  auto perm = random_permutation(10, rng);
  std::set<int> seen(perm.begin(), perm.end());
  CHECK(seen.size() == 10u);
  const auto subset = random_subset(10, 4, rng);
  CHECK(subset.size() == 4u);
  CHECK(std::is_sorted(subset.begin(), subset.end()));
  CHECK(std::set<int>(subset.begin(), subset.end()).size() == 4u);
  CHECK(random_subset(5, 0, rng).empty());
}

TEST_CASE("instances are deterministic per replication") {
  GenConfig config;
  config.n = 3;
  config.seed = 1;
  const Problem a = gen_instance(config, 0);
  const Problem b = gen_instance(config, 0);
  CHECK(a.all_prefs() == b.all_prefs());
  CHECK(a.all_priorities() == b.all_priorities());
  CHECK(gen_instance(config, 1).all_prefs() != a.all_prefs());
}

TEST_CASE("correlated model extremes") {
  GenConfig config;
  config.n = 12;
  config.model = PrefModel::kCorrelated;
  config.rho = 1.0;
  const Problem p = gen_instance(config, 0);
  for (int i = 1; i < 12; ++i) CHECK(p.prefs(i) == p.prefs(0));
  config.rho = 0.0;
  double total = 0;
  for (int r = 0; r < 50; ++r) total += mean_preference_correlation(gen_instance(config, r));
  CHECK(std::abs(total / 50) < 0.03);
}

TEST_CASE("rho = 0.5 yields positively correlated preferences") {
  GenConfig config;
  config.n = 50;
  config.model = PrefModel::kCorrelated;
  config.rho = 0.5;
  double total = 0;
  for (int r = 0; r < 100; ++r) total += mean_preference_correlation(gen_instance(config, r));
  CHECK(total / 100 > 0.1);
}

TEST_CASE("config validation and consent size") {
  GenConfig config;
  config.n = 7;
  config.consent_fraction = 0.5;
  CHECK(config.consent_size() == 3);
  CHECK(sample_consent(config, 0).size() == 3u);
  config.consent_fraction = 1.5;
  CHECK_THROWS_AS(config.validate(), InputError);
  config.consent_fraction = 0.5;
  config.replications = 0;
  CHECK_THROWS_AS(config.validate(), InputError);
}

TEST_CASE("per-instance invariants and stable aggregation") {
  GenConfig config;
  config.n = 15;
  config.replications = 40;
  config.seed = 4;
  std::vector<InstanceMetrics> rows;
  const AggregateStats par = run_experiment(config, &rows, 2);
  const AggregateStats ser = run_experiment_serial(config);
  std::ostringstream a, b;
  write_stats_csv(a, par);
  write_stats_csv(b, ser);
  CHECK(a.str() == b.str());
  for (const auto& row : rows) {
    const auto& jbc = row.by_mechanism[static_cast<int>(Mechanism::kJbc)];
    const auto& plus = row.by_mechanism[static_cast<int>(Mechanism::kSjbcPlus)];
    const auto& full = row.by_mechanism[static_cast<int>(Mechanism::kEadaFull)];
    CHECK(plus.beneficiaries >= jbc.beneficiaries);
    CHECK(plus.justifiable);
    CHECK(full.pareto_efficient);
    for (const auto& m : row.by_mechanism) {
      CHECK(m.avg_rank >= 1.0);
      CHECK(m.beneficiaries <= config.n);
    }
  }
  CHECK(par[Mechanism::kDa].beneficiaries.mean == 0.0);
}

TEST_CASE("CSV layout") {
  std::vector<InstanceMetrics> rows(2);
  rows[0].replication = 1;
  rows[1].replication = 0;
  rows[0].by_mechanism[0] = {2.0, 0, true, true};
  rows[1].by_mechanism[0] = {4.0, 0, false, true};
  const AggregateStats stats = aggregate(rows);
  CHECK(stats[Mechanism::kDa].avg_rank.mean == doctest::Approx(3.0));
  CHECK(stats[Mechanism::kDa].avg_rank.se == doctest::Approx(1.0));  // sd sqrt(2) over sqrt(2)
  CHECK(stats[Mechanism::kDa].pe_rate.mean == doctest::Approx(50.0));
  std::ostringstream os;
  write_stats_csv(os, stats);
  CHECK(os.str().rfind("mechanism,metric,mean,stderr\nDA,avg_rank,3.000000,1.000000\n", 0) == 0);
  std::ostringstream inst;
  write_instances_csv(inst, rows);
  CHECK(inst.str().rfind("replication,mechanism,avg_rank,beneficiaries,pe,justifiable\n1,DA,2.000000,0,1,1\n", 0) == 0);
}
