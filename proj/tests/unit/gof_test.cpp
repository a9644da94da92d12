#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "madstat/error.hpp"
#include "madstat/generators.hpp"
#include "madstat/gof.hpp"
#include "madstat/limit_laws.hpp"
#include "madstat/rng.hpp"

namespace madstat {
namespace {

// Brute force: evaluate both ECDFs at every pooled point.
double ks_brute(const Series& a, const Series& b) {
  auto cdf = [](const Series& s, double x) {
    double c = 0.0;
    for (double v : s) c += v <= x ? 1.0 : 0.0;
    return c / static_cast<double>(s.size());
  };
  double d = 0.0;
  for (const Series* s : {&a, &b}) {
    for (double x : *s) d = std::max(d, std::abs(cdf(a, x) - cdf(b, x)));
  }
  return d;
}

TEST(KsTest, Examples) {
  const Series a{3.0, 1.0, 2.0};
  EXPECT_EQ(ks_two_sample(a, a), 0.0);
  EXPECT_EQ(ks_two_sample(Series{-5.0, -4.0}, Series{0.0, 1.0, 2.0}), 1.0);
  EXPECT_DOUBLE_EQ(ks_two_sample(Series{0.0}, Series{0.0, 1.0}), 0.5);
}

TEST(KsTest, MatchesBruteForceWithTies) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t na = 1 + static_cast<std::size_t>(rng.uniform() * 40);
    const std::size_t nb = 1 + static_cast<std::size_t>(rng.uniform() * 40);
    std::vector<double> va(na);
    std::vector<double> vb(nb);
    for (auto& x : va) x = std::round(rng.normal() * 3.0);
    for (auto& x : vb) x = std::round(rng.normal() * 3.0 + 0.5);
    const Series a(va);
    const Series b(vb);
    EXPECT_NEAR(ks_two_sample(a, b), ks_brute(a, b), 1e-15);
  }
}

TEST(KsTest, SymmetricAndMonotoneInvariant) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> va(100);
    std::vector<double> vb(80);
    for (auto& x : va) x = rng.normal();
    for (auto& x : vb) x = rng.normal() * 1.3 + 0.2;
    const double d = ks_two_sample(Series(va), Series(vb));
    EXPECT_EQ(ks_two_sample(Series(vb), Series(va)), d);
    for (auto& x : va) x = std::exp(x) * 3.0 + 1.0;
    for (auto& x : vb) x = std::exp(x) * 3.0 + 1.0;
    EXPECT_NEAR(ks_two_sample(Series(va), Series(vb)), d, 1e-15);
  }
}

TEST(KsTest, DisjointHalves) {
  const Series x = generate(IidNormal{}, 100'000, 3);
  std::vector<double> first(x.begin(), x.begin() + 50'000);
  std::vector<double> second(x.begin() + 50'000, x.end());
  EXPECT_LT(ks_two_sample(Series(first), Series(second)), 0.02);
}

TEST(QuantileTest, TypeSeven) {
  const Series s{4.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(quantile(s, 0.0), 1.0);
  EXPECT_EQ(quantile(s, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(s, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(s, 0.25), 1.75);
  EXPECT_EQ(quantile(Series{7.0}, 0.3), 7.0);
  EXPECT_THROW(quantile(s, 1.5), DomainError);
}

TEST(QuantileBandTest, IdenticalAndShifted) {
  const Series x = generate(IidExponential{1.0}, 1001, 4);
  const std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};
  const GofReport same = quantile_band(x, x, levels);
  ASSERT_EQ(same.quantile_table.size(), levels.size());
  for (const auto& row : same.quantile_table) EXPECT_EQ(row.abs_gap, 0.0);
  EXPECT_EQ(same.ks_distance, 0.0);
  EXPECT_EQ(same.n_sample, 1001u);

  std::vector<double> shifted(x.begin(), x.end());
  for (auto& v : shifted) v += 2.5;
  const GofReport moved = quantile_band(x, Series(shifted), levels);
  for (const auto& row : moved.quantile_table) EXPECT_NEAR(row.abs_gap, 2.5, 1e-12);
}

TEST(QuantileBandTest, StableRerunsWithinSubsamplingBand) {
  const std::size_t n = 100'000;
  const Series a = sample_stable(1.5, true, 1.0, n, 5);
  const Series b = sample_stable(1.5, true, 1.0, n, 6);
  const std::vector<double> levels{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const GofReport report = quantile_band(a, b, levels);

  // Subsampling: quantiles of 20 blocks of n / 20, rescaled to size n.
  const std::size_t blocks = 20;
  const std::size_t m = n / blocks;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::vector<double> qs;
    for (std::size_t k = 0; k < blocks; ++k) {
      std::vector<double> block(a.begin() + k * m, a.begin() + (k + 1) * m);
      qs.push_back(quantile(Series(block), levels[i]));
    }
    double mean = 0.0;
    for (double q : qs) mean += q;
    mean /= blocks;
    double var = 0.0;
    for (double q : qs) var += (q - mean) * (q - mean);
    var /= blocks - 1;
    const double se_full = std::sqrt(var / blocks);
    EXPECT_LT(report.quantile_table[i].abs_gap, 3.0 * std::sqrt(2.0) * se_full) << levels[i];
  }
}

TEST(QuantileBandTest, Errors) {
  const Series x{1.0, 2.0};
  const std::vector<double> bad{0.5, 0.2};
  EXPECT_THROW(quantile_band(x, x, bad), DomainError);
  const std::vector<double> outside{0.0};
  EXPECT_THROW(quantile_band(x, x, outside), DomainError);
}

}  // namespace
}  // namespace madstat
