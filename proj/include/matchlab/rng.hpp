#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace matchlab {

/// Random source for instance generation. The engine is std::mt19937_64,
/// whose output sequence the standard fixes exactly; the mappings below
/// are spelled out here because std distributions are implementation
/// defined, which would break cross-platform reproducibility.
class Rng {
 public:
  /// Independent stream for (seed, replication, lane), seeded through
  /// std::seed_seq over the five 32-bit halves/words.
  Rng(std::uint64_t seed, std::uint64_t replication, std::uint64_t lane);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound) by rejection, no modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();
  /// Standard normal via the Marsaglia polar method; the second variate of
  /// each accepted pair is cached for the following call.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Fisher-Yates shuffle of 0..n-1 (swap position k with a draw in [0, k]).
std::vector<int> random_permutation(int n, Rng& rng);

/// k distinct values from 0..n-1, sorted, uniform over k-subsets.
std::vector<int> random_subset(int n, int k, Rng& rng);

}  // namespace matchlab
