#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "madstat/error.hpp"
#include "madstat/generators.hpp"
#include "madstat/mad_core.hpp"
#include "madstat/rng.hpp"
#include "oracles/quadrature.hpp"

namespace madstat {
namespace {

// Random series with ties and mixed scales, for property checks.
Series random_series(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) {
    const double u = rng.uniform();
    if (u < 0.2) {
      x = std::round(rng.normal() * 2.0);
    } else if (u < 0.9) {
      x = rng.normal() * 3.0 + 1.0;
    } else {
      x = rng.exponential() * 50.0;
    }
  }
  return Series(std::move(v));
}

TEST(SeriesTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Series(std::vector<double>{}), DomainError);
  EXPECT_THROW(Series({1.0, std::numeric_limits<double>::quiet_NaN()}), DomainError);
  EXPECT_THROW(Series({std::numeric_limits<double>::infinity()}), DomainError);
}

TEST(SampleMadTest, SmallExamples) {
  EXPECT_DOUBLE_EQ(sample_mad(Series{1.0, 2.0, 3.0}), 2.0 / 3.0);
  EXPECT_EQ(sample_mad(Series{0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1}), 0.0);
  EXPECT_EQ(sample_mad(Series{42.0}), 0.0);
  EXPECT_GT(sample_mad(Series{0.1, 0.1, 0.1 + 1e-15}), 0.0);
}

TEST(SampleMadTest, StandardNormalApproachesIntegral) {
  const double expected = oracle::integrate_real_line(
      [](double x) { return std::abs(x) * oracle::normal_pdf(x); });
  ASSERT_NEAR(expected, 0.7978845608028654, 1e-12);
  const Series x = generate(IidNormal{0.0, 1.0}, 100'000, 11);
  EXPECT_NEAR(sample_mad(x), expected, 0.01);
}

TEST(OracleMadTest, Examples) {
  EXPECT_DOUBLE_EQ(oracle_mad(Series{1.0, 2.0, 3.0}, 2.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(oracle_mad(Series{1.0, 2.0, 3.0}, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(oracle_mad(Series{-1.0, 0.0, 1.0, -1.0, 0.0, 1.0}, 0.0), 2.0 / 3.0);
  EXPECT_THROW(oracle_mad(Series{1.0}, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(DispersionTest, FunctionExamples) {
  const Series s{0.0, 2.0};
  EXPECT_DOUBLE_EQ(dispersion_fn(s, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(dispersion_fn(s, 0.0), 1.0);
}

TEST(DispersionTest, DerivativeExamples) {
  const Series s{-1.0, 1.0};
  EXPECT_EQ(dispersion_derivative(s, -5.0).value, -1.0);
  EXPECT_EQ(dispersion_derivative(s, 5.0).value, 1.0);
  const auto mid = dispersion_derivative(s, 0.0);
  EXPECT_EQ(mid.value, 0.0);
  EXPECT_FALSE(mid.kink);
  const auto at_point = dispersion_derivative(s, 1.0);
  EXPECT_TRUE(at_point.kink);
  EXPECT_EQ(at_point.value, 1.0);
}

TEST(DispersionTest, DerivativeMatchesFiniteDifferenceAwayFromKinks) {
  Rng rng(5);
  const Series s = random_series(rng, 40);
  for (int k = 0; k < 50; ++k) {
    const double u = rng.normal() * 4.0 + 0.123456789;
    const auto slope = dispersion_derivative(s, u);
    if (slope.kink) continue;
    const double h = 1e-7;
    const double fd = (dispersion_fn(s, u + h) - dispersion_fn(s, u - h)) / (2.0 * h);
    EXPECT_NEAR(slope.value, fd, 1e-5);
  }
}

TEST(SignBalanceTest, Examples) {
  const auto a = sign_balance(Series{-1.0, 0.0, 1.0}, 0.0);
  EXPECT_EQ(a.b_hat, 0.0);
  EXPECT_DOUBLE_EQ(a.p_eq, 1.0 / 3.0);
  const auto b = sign_balance(Series{1.0, 2.0, 3.0}, 0.0);
  EXPECT_EQ(b.b_hat, -1.0);
  EXPECT_EQ(b.p_eq, 0.0);
  const auto c = sign_balance(Series{0.0, 0.0, 0.0, 1.0}, 0.0);
  EXPECT_EQ(c.p_eq, 0.75);
  EXPECT_EQ(c.b_hat, -0.25);
}

TEST(SignBalanceTest, CountsPartitionTheSample) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Series s = random_series(rng, 1 + trial % 37);
    const double mu = std::round(rng.normal());
    const auto b = sign_balance(s, mu);
    EXPECT_EQ(b.n_less + b.n_equal + b.n_greater, s.size());
    EXPECT_NEAR(b.p_less + b.p_eq + b.p_greater, 1.0, 1e-15);
    EXPECT_NEAR(b.b_hat, b.p_less - b.p_greater, 1e-15);
  }
}

TEST(MadPropertyTest, SampleEqualsOracleAtTheMean) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const Series s = random_series(rng, 1 + trial * 3);
    EXPECT_EQ(sample_mad(s), oracle_mad(s, mean(s)));
    EXPECT_EQ(dispersion_fn(s, mean(s)), sample_mad(s));
  }
}

TEST(MadPropertyTest, TranslationInvariantAndHomogeneous) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Series s = random_series(rng, 2 + trial);
    const double c = rng.normal() * 10.0;
    std::vector<double> shifted(s.begin(), s.end());
    std::vector<double> scaled(s.begin(), s.end());
    for (auto& x : shifted) x += c;
    for (auto& x : scaled) x *= c;
    const double base = sample_mad(s);
    EXPECT_NEAR(sample_mad(Series(shifted)), base, 1e-12 * std::max(1.0, base) * (1.0 + std::abs(c)));
    EXPECT_NEAR(sample_mad(Series(scaled)), std::abs(c) * base, 1e-12 * std::abs(c) * base + 1e-300);
  }
}

TEST(MadPropertyTest, DispersionFunctionIsConvex) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Series s = random_series(rng, 25);
    double u = rng.normal() * 5.0;
    double v = rng.normal() * 5.0;
    double w = rng.normal() * 5.0;
    if (u > v) std::swap(u, v);
    if (v > w) std::swap(v, w);
    if (u > v) std::swap(u, v);
    if (!(u < w)) continue;
    const double bound = ((w - v) * dispersion_fn(s, u) + (v - u) * dispersion_fn(s, w)) / (w - u);
    EXPECT_LE(dispersion_fn(s, v), bound + 1e-12);
  }
}

TEST(MadPropertyTest, MinimizedAtTheMedian) {
  const Series s{5.0, -2.0, 7.0, 1.0, 3.0};
  const double at_median = dispersion_fn(s, 3.0);
  for (double u = -5.0; u <= 10.0; u += 0.25) EXPECT_LE(at_median, dispersion_fn(s, u) + 1e-15);
}

TEST(EcdfTest, LeftAndRightLimits) {
  const EcdfSummary e(Series{3.0, 1.0, 2.0, 2.0});
  EXPECT_EQ(e.cdf(-10.0), 0.0);
  EXPECT_EQ(e.cdf(10.0), 1.0);
  EXPECT_EQ(e.cdf(2.0), 0.75);
  EXPECT_EQ(e.cdf_left(2.0), 0.25);
  EXPECT_EQ(e.count_le(2.0) - e.count_lt(2.0), 2u);
}

TEST(EcdfTest, JumpEqualsMultiplicity) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Series s = random_series(rng, 30);
    const EcdfSummary e(s);
    const double x = s[trial % s.size()];
    std::size_t copies = 0;
    for (double v : s) copies += v == x ? 1 : 0;
    EXPECT_EQ(e.count_le(x) - e.count_lt(x), copies);
    EXPECT_LE(e.cdf_left(x), e.cdf(x));
  }
}

TEST(CompensatedSumTest, KeepsTwelveDigitsAtTenMillion) {
  std::vector<double> v(10'000'000, 0.1);
  v[0] = 1e8;
  const double sum = compensated_sum(v);
  EXPECT_NEAR(sum, 1e8 + 0.1 * (10'000'000 - 1), 1e-4);
}

}  // namespace
}  // namespace madstat
