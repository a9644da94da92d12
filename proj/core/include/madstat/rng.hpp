#pragma once

#include <cstdint>
#include <random>

namespace madstat {

// splitmix64 finalizer; used to derive independent stream seeds from
// (master seed, counters) so that every replication is reproducible
// regardless of scheduling.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0) noexcept;

// Portable random stream. The engine output is fixed by the standard and all
// variate transforms are implemented here, so draws do not depend on the
// standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1)
  double normal();
  double exponential();
  // Marsaglia-Tsang; shape > 0.
  double gamma(double shape);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace madstat
