#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "madstat/generators.hpp"
#include "madstat/limit_laws.hpp"
#include "madstat/tail.hpp"

namespace madstat {

enum class CenteringSource { analytic, reference_run };

struct StudyConfig {
  GeneratorSpec generator;
  std::size_t n = 1000;
  std::size_t reps = 1000;
  NormingRate rate = NormingRate::sqrt_n;
  CenteringSource centering = CenteringSource::analytic;
  std::uint64_t seed = 0x5EED0ADULL;
  // Overrides the generator's own tail model for the n / a_n rate.
  std::optional<TailModel> tail;
  std::size_t reference_length = kReferenceLength;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
};

struct StudyResult {
  StudyConfig config;
  double mu = 0.0;
  double theta = 0.0;
  bool theta_estimated = false;
  double theta_se = 0.0;
  double norming = 1.0;  // rate_n
  std::vector<double> results;
  std::vector<std::uint64_t> rep_seeds;
  double wall_seconds = 0.0;
};

std::uint64_t replication_seed(std::uint64_t master, std::size_t rep) noexcept;

// results[r] = rate_n (sample_mad(generate(gen, n, seed_r)) - theta).
StudyResult run_study(const StudyConfig& config);

}  // namespace madstat
