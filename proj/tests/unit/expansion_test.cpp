#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "madstat/error.hpp"
#include "madstat/expansion.hpp"
#include "madstat/generators.hpp"
#include "madstat/rng.hpp"

namespace madstat {
namespace {

// Brute-force evaluation of every sum in the decomposition with plain loops.
struct BruteForce {
  double lhs;
  double sign_term;
  double atom_term;
  double remainder;
  std::size_t k;
};

BruteForce brute_force(const std::vector<double>& x, double mu) {
  long double sum = 0.0L;
  for (double v : x) sum += v;
  const double xbar = static_cast<double>(sum / static_cast<long double>(x.size()));
  const double gap = xbar - mu;
  const double lo = std::min(xbar, mu);
  const double hi = std::max(xbar, mu);
  long double lhs = 0.0L;
  long double sign_sum = 0.0L;
  long double atoms = 0.0L;
  long double rem = 0.0L;
  std::size_t k = 0;
  for (double v : x) {
    const double d = std::abs(v - xbar) - std::abs(v - mu);
    const double sgn = mu - v > 0 ? 1.0 : (mu - v < 0 ? -1.0 : 0.0);
    const double atom = v == mu ? 1.0 : 0.0;
    lhs += d;
    sign_sum += sgn;
    atoms += atom;
    if (lo < v && v < hi) {
      ++k;
      rem += d - gap * sgn - std::abs(gap) * atom;
    }
  }
  const long double n = static_cast<long double>(x.size());
  return {static_cast<double>(lhs / n), static_cast<double>(gap * sign_sum / n),
          static_cast<double>(std::abs(gap) * atoms / n), static_cast<double>(rem / n), k};
}

TEST(DecomposeTest, ConstantSeriesAtItsValue) {
  const auto r = decompose(Series{2.5, 2.5, 2.5, 2.5}, 2.5);
  EXPECT_EQ(r.mean_gap, 0.0);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.linear_term, 0.0);
  EXPECT_EQ(r.atom_term, 0.0);
  EXPECT_EQ(r.remainder, 0.0);
  EXPECT_EQ(r.k_count, 0u);
}

TEST(DecomposeTest, MeanEqualsMu) {
  const auto r = decompose(Series{0.0, 2.0}, 1.0);
  EXPECT_EQ(r.mean_gap, 0.0);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.linear_term, 0.0);
  EXPECT_EQ(r.atom_term, 0.0);
  EXPECT_EQ(r.remainder, 0.0);
}

TEST(DecomposeTest, HandComputedAtomExample) {
  const std::vector<double> x{0.0, 0.0, 3.0};
  const auto oracle = brute_force(x, 0.0);
  ASSERT_NEAR(oracle.lhs, 1.0 / 3.0, 1e-15);
  ASSERT_NEAR(oracle.sign_term, -1.0 / 3.0, 1e-15);
  ASSERT_NEAR(oracle.atom_term, 2.0 / 3.0, 1e-15);
  ASSERT_EQ(oracle.k, 0u);

  const auto r = decompose(Series(x), 0.0);
  EXPECT_EQ(r.n, 3u);
  EXPECT_DOUBLE_EQ(r.mean_gap, 1.0);
  EXPECT_NEAR(r.lhs, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.linear_term, -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.atom_term, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(r.remainder, 0.0);
  EXPECT_EQ(r.k_count, 0u);
  EXPECT_NEAR(r.population_linear_coeff, -1.0 / 3.0, 1e-15);
  EXPECT_EQ(decompose(Series(x), 0.0, 0.25).population_linear_coeff, 0.25);
}

TEST(DecomposeTest, MatchesBruteForceOnRandomSamples) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 60);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform() < 0.3 ? std::round(rng.normal()) : rng.normal() * 2.0;
    const double mu = rng.uniform() < 0.3 ? 0.0 : rng.normal();
    const auto oracle = brute_force(x, mu);
    const auto r = decompose(Series(x), mu);
    EXPECT_NEAR(r.lhs, oracle.lhs, 1e-13);
    EXPECT_NEAR(r.linear_term, oracle.sign_term, 1e-13);
    EXPECT_NEAR(r.atom_term, oracle.atom_term, 1e-13);
    EXPECT_NEAR(r.remainder, oracle.remainder, 1e-13);
    EXPECT_EQ(r.k_count, oracle.k);
  }
}

TEST(DecomposeTest, IdentityAndBoundHold) {
  Rng rng(78);
  const std::vector<GeneratorSpec> laws{
      IidNormal{0.0, 1.0}, IidExponential{2.0},
      IidDiscrete{{{-1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}}},
      IidParetoSymmetric{1.5, 0.3, 1.0}, IidStudentT{3.0}};
  for (int trial = 0; trial < 500; ++trial) {
    const auto& law = laws[trial % laws.size()];
    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * 198);
    const Series x = generate(law, n, derive_seed(1, trial));
    const double mu = trial % 3 == 0 ? 0.0 : rng.normal();
    const auto r = decompose(x, mu);
    EXPECT_LE(std::abs(r.identity_residual()), 1e-10);
    EXPECT_LE(std::abs(r.remainder), r.remainder_bound());
    EXPECT_GE(r.atom_term, 0.0);
    if (r.k_count == 0) {
      EXPECT_EQ(r.remainder, 0.0);
    }
  }
}

TEST(DecomposeTest, AtTheSampleMeanEverythingVanishes) {
  const Series x = generate(IidExponential{1.0}, 500, 3);
  const auto r = decompose(x, mean(x));
  EXPECT_EQ(r.mean_gap, 0.0);
  EXPECT_EQ(r.lhs, 0.0);
}

TEST(DecomposeTest, Errors) {
  EXPECT_THROW(decompose(Series{1.0}, std::nan("")), DomainError);
}

TEST(DecayCurveTest, ConstantGeneratorGivesZeros) {
  const std::vector<std::size_t> grid{10, 100};
  const auto rows = remainder_decay_curve(IidDiscrete{{{3.0, 1.0}}}, 3.0, grid, 5, 1);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.mean_k_fraction, 0.0);
    EXPECT_EQ(row.mean_remainder_ratio, 0.0);
  }
}

TEST(DecayCurveTest, ThreePointLawNeverHasStrictlyBetweenPoints) {
  const std::vector<std::size_t> grid{2, 5, 50, 500};
  const auto rows = remainder_decay_curve(
      IidDiscrete{{{-1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}}}, 0.0, grid, 100, 2);
  for (const auto& row : rows) {
    EXPECT_EQ(row.mean_k_fraction, 0.0);
    EXPECT_EQ(row.mean_remainder_ratio, 0.0);
  }
}

TEST(DecayCurveTest, ThreePointLawEnumeratedSmallSamples) {
  // Every sample of size 4 over {-1, 0, 1}: no point lies strictly between 0
  // and the sample mean.
  const double values[3] = {-1.0, 0.0, 1.0};
  for (int code = 0; code < 81; ++code) {
    std::vector<double> x;
    int c = code;
    for (int i = 0; i < 4; ++i, c /= 3) x.push_back(values[c % 3]);
    const auto r = decompose(Series(x), 0.0);
    EXPECT_EQ(r.k_count, 0u);
    EXPECT_EQ(r.remainder, 0.0);
  }
}

TEST(DecayCurveTest, NormalKFractionDecreases) {
  const std::vector<std::size_t> grid{10'000, 100, 1'000};
  const auto rows = remainder_decay_curve(IidNormal{0.0, 1.0}, 0.0, grid, 200, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].n, 100u);
  EXPECT_GT(rows[0].mean_k_fraction, rows[1].mean_k_fraction);
  EXPECT_GT(rows[1].mean_k_fraction, rows[2].mean_k_fraction);
  EXPECT_LT(rows[2].mean_k_fraction, 0.01);
}

TEST(DecayCurveTest, DeterministicAndValidated) {
  const std::vector<std::size_t> grid{50, 60};
  const auto a = remainder_decay_curve(IidExponential{1.0}, 1.0, grid, 20, 9);
  const auto b = remainder_decay_curve(IidExponential{1.0}, 1.0, grid, 20, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_k_fraction, b[i].mean_k_fraction);
    EXPECT_EQ(a[i].mean_remainder_ratio, b[i].mean_remainder_ratio);
  }
  const std::vector<std::size_t> bad{1};
  EXPECT_THROW(remainder_decay_curve(IidNormal{}, 0.0, bad, 5, 1), ConfigError);
  EXPECT_THROW(remainder_decay_curve(IidNormal{}, 0.0, grid, 0, 1), ConfigError);
  EXPECT_THROW(remainder_decay_curve(IidParetoSymmetric{0.9, 0.5, 1.0}, 0.0, grid, 5, 1),
               ConfigError);
}

}  // namespace
}  // namespace madstat
