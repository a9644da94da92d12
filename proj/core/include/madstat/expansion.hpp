#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "madstat/generators.hpp"
#include "madstat/mad_core.hpp"

namespace madstat {

// Exact split of sample_mad - oracle_mad into the sign-sum term, the atom
// term and the remainder carried by the points strictly between mu and the
// sample mean (the set K_n).
struct ExpansionReport {
  std::size_t n = 0;
  double mean_gap = 0.0;     // mean - mu
  double lhs = 0.0;          // (1/n) sum (|X_i - mean| - |X_i - mu|)
  double linear_term = 0.0;  // mean_gap * (1/n) sum sign(mu - X_i)
  double atom_term = 0.0;    // |mean_gap| * (1/n) #{X_i == mu}
  double remainder = 0.0;    // R_n / n
  std::size_t k_count = 0;   // #{min(mean, mu) < X_i < max(mean, mu)}
  double population_linear_coeff = 0.0;

  double identity_residual() const noexcept {
    return lhs - linear_term - atom_term - remainder;
  }
  double remainder_bound() const noexcept;
};

// population_b, when known, is Pr[X < mu] - Pr[X > mu] of the law; otherwise
// the empirical balance is reported.
ExpansionReport decompose(const Series& s, double mu,
                          std::optional<double> population_b = std::nullopt);

struct DecayRow {
  std::size_t n = 0;
  double mean_k_fraction = 0.0;       // mean |K_n| / n
  double mean_remainder_ratio = 0.0;  // mean |R_n / n| / |mean_gap|
};

// Replication seeds are derive_seed(seed, n, rep).
std::vector<DecayRow> remainder_decay_curve(const GeneratorSpec& gen,
                                            double mu,
                                            std::span<const std::size_t> n_grid,
                                            std::size_t reps,
                                            std::uint64_t seed);

}  // namespace madstat
