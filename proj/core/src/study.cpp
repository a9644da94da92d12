#include "madstat/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "madstat/error.hpp"
#include "madstat/rng.hpp"

namespace madstat {

namespace {

constexpr std::uint64_t kReferenceStream = 0x7EF0;

std::optional<TailModel> study_tail(const StudyConfig& config) {
  if (config.tail) return config.tail;
  return tail_model(config.generator);
}

}  // namespace

void StudyConfig::validate() const {
  madstat::validate(generator);
  if (n < 1) throw ConfigError("n must be at least 1");
  if (reps < 1) throw ConfigError("reps must be at least 1");
  if (rate == NormingRate::n_over_an) {
    const auto t = study_tail(*this);
    if (!t) throw ConfigError("rate n_over_an requires a tail model for the generator");
    t->validate();
  }
  if (centering == CenteringSource::reference_run && reference_length < 2) {
    throw ConfigError("reference_length must be at least 2");
  }
}

std::uint64_t replication_seed(std::uint64_t master, std::size_t rep) noexcept {
  return derive_seed(master, rep, 0x5EED);
}

StudyResult run_study(const StudyConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  StudyResult out;
  out.config = config;

  TrueTheta centre;
  if (config.centering == CenteringSource::analytic) {
    auto exact = analytic_theta(config.generator);
    if (!exact) {
      throw ConfigError("generator " + kind_name(config.generator) +
                        " has no closed-form theta; use mu_theta_source reference_run");
    }
    centre = *exact;
  } else {
    centre = reference_theta(config.generator, config.reference_length,
                             derive_seed(config.seed, kReferenceStream));
  }
  out.mu = centre.mu;
  out.theta = centre.theta;
  out.theta_estimated = centre.estimated;
  out.theta_se = centre.theta_se;

  const double n = static_cast<double>(config.n);
  out.norming = config.rate == NormingRate::sqrt_n
                    ? std::sqrt(n)
                    : n / norming_an(*study_tail(config), config.n);

  out.rep_seeds.resize(config.reps);
  for (std::size_t r = 0; r < config.reps; ++r) {
    out.rep_seeds[r] = replication_seed(config.seed, r);
  }
  out.results.assign(config.reps, 0.0);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next.fetch_add(1); r < config.reps; r = next.fetch_add(1)) {
      const Series x = generate(config.generator, config.n, out.rep_seeds[r]);
      out.results[r] = out.norming * (sample_mad(x) - out.theta);
    }
  };

  unsigned threads = config.threads != 0 ? config.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.reps));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace madstat
