#include "madstat/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "madstat/error.hpp"
#include "madstat/rng.hpp"

namespace madstat {

namespace {

double sign(double x) noexcept { return static_cast<double>((x > 0.0) - (x < 0.0)); }

}  // namespace

double ExpansionReport::remainder_bound() const noexcept {
  if (n == 0) return 0.0;
  return 3.0 * std::abs(mean_gap) * static_cast<double>(k_count) /
         static_cast<double>(n);
}

ExpansionReport decompose(const Series& s, double mu,
                          std::optional<double> population_b) {
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");

  ExpansionReport r;
  r.n = s.size();
  const double n = static_cast<double>(r.n);
  const double xbar = mean(s);
  r.mean_gap = xbar - mu;
  r.lhs = sample_mad(s) - oracle_mad(s, mu);

  const SignBalance balance = sign_balance(s, mu);
  const double sign_sum = static_cast<double>(balance.n_less) -
                          static_cast<double>(balance.n_greater);
  r.linear_term = r.mean_gap * sign_sum / n;
  r.atom_term = std::abs(r.mean_gap) * static_cast<double>(balance.n_equal) / n;

  // Off (A_n, B_n) the case-by-case identity is exact, so R_n only collects
  // the points strictly between mu and the sample mean.
  const double lo = std::min(xbar, mu);
  const double hi = std::max(xbar, mu);
  CompensatedSum remainder;
  for (double x : s) {
    if (!(lo < x && x < hi)) continue;
    ++r.k_count;
    const double atom = x == mu ? std::abs(r.mean_gap) : 0.0;
    remainder.add(std::abs(x - xbar) - std::abs(x - mu) - r.mean_gap * sign(mu - x) - atom);
  }
  r.remainder = remainder.value() / n;
  r.population_linear_coeff = population_b.value_or(balance.b_hat);
  return r;
}

std::vector<DecayRow> remainder_decay_curve(const GeneratorSpec& gen, double mu,
                                            std::span<const std::size_t> n_grid,
                                            std::size_t reps, std::uint64_t seed) {
  validate(gen);
  if (reps == 0) throw ConfigError("reps must be at least 1");
  if (!std::isfinite(mu)) throw ConfigError("mu must be finite");
  std::vector<std::size_t> grid(n_grid.begin(), n_grid.end());
  for (std::size_t n : grid) {
    if (n < 2) throw ConfigError("every n in the grid must be at least 2");
  }
  std::sort(grid.begin(), grid.end());

  std::vector<DecayRow> rows;
  rows.reserve(grid.size());
  for (std::size_t n : grid) {
    CompensatedSum k_fraction;
    CompensatedSum ratio;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const Series x = generate(gen, n, derive_seed(seed, n, rep));
      const ExpansionReport report = decompose(x, mu);
      k_fraction.add(static_cast<double>(report.k_count) / static_cast<double>(n));
      if (report.mean_gap != 0.0) {
        ratio.add(std::abs(report.remainder) / std::abs(report.mean_gap));
      }
    }
    const double count = static_cast<double>(reps);
    rows.push_back({n, k_fraction.value() / count, ratio.value() / count});
  }
  return rows;
}

}  // namespace madstat
