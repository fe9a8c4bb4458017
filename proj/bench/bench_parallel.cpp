// Wall-clock comparison of the OpenMP kernels against their serial
// references. Also checks that both produce the same answer.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "matchlab/eada.hpp"
#include "matchlab/oracle.hpp"
#include "matchlab/simgen.hpp"

using namespace matchlab;

namespace {

template <class F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool line(const char* kernel, double serial, double parallel, bool same) {
  std::printf("%-12s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", kernel, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "outputs agree" : "OUTPUTS DIFFER");
  return same;
}

std::string csv(const AggregateStats& stats) {
  std::ostringstream out;
  write_stats_csv(out, stats);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel vs serial kernels"};
  int reps = 200, n = 50, orbit_n = 14, battery = 300, battery_n = 6;
  app.add_option("--reps", reps, "simulation replications")->check(CLI::PositiveNumber);
  app.add_option("--n", n, "simulation market size")->check(CLI::PositiveNumber);
  app.add_option("--orbit-n", orbit_n, "students in the EADA orbit instance")->check(CLI::Range(1, 20));
  app.add_option("--battery", battery, "oracle battery instances")->check(CLI::PositiveNumber);
  app.add_option("--battery-n", battery_n, "oracle battery size")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  bool ok = true;

  GenConfig sim;
  sim.n = n;
  sim.replications = reps;
  AggregateStats a, b;
  const double ts = timed([&] { a = run_experiment_serial(sim); });
  const double tp = timed([&] { b = run_experiment(sim); });
  ok &= line("simulation", ts, tp, csv(a) == csv(b));

  GenConfig one;
  one.n = orbit_n;
  one.seed = 3;
  const Problem p = gen_instance(one, 0);
  std::vector<Matching> x, y;
  const double os = timed([&] { x = eada_orbit_serial(p); });
  const double op = timed([&] { y = eada_orbit(p); });
  ok &= line("eada-orbit", os, op, x == y);

  const BatteryConfig config{battery_n, battery, 2024};
  BatteryResult r, s;
  const double bs = timed([&] { r = run_battery_serial(config); });
  const double bp = timed([&] { s = run_battery(config); });
  ok &= line("battery", bs, bp, r.failures == s.failures && r.examples == s.examples);
  return ok ? 0 : 1;
}
