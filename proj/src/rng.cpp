#include "matchlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace matchlab {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t replication, std::uint64_t lane) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32),
                    static_cast<std::uint32_t>(lane)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t replication, std::uint64_t lane)
    : engine_(seeded(seed, replication, lane)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the short tail so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= limit) return x % bound;
  }
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 0);
  for (int k = n - 1; k > 0; --k)
    std::swap(out[k], out[rng.below(static_cast<std::uint64_t>(k) + 1)]);
  return out;
}

std::vector<int> random_subset(int n, int k, Rng& rng) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int p = 0; p < k; ++p)
    std::swap(pool[p], pool[p + rng.below(static_cast<std::uint64_t>(n - p))]);
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace matchlab
