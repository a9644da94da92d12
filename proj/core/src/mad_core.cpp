#include "madstat/mad_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madstat/error.hpp"

namespace madstat {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("series must contain at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DomainError("series value at position " + std::to_string(i) +
                        " is not finite");
    }
  }
}

}  // namespace

Series::Series(std::vector<double> values) : values_(std::move(values)) {
  check_values(values_);
}

Series::Series(std::initializer_list<double> values) : values_(values) {
  check_values(values_);
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double mean(const Series& s) noexcept {
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (*lo == *hi) return *lo;
  const double m = compensated_sum(s.values()) / static_cast<double>(s.size());
  return std::clamp(m, *lo, *hi);
}

double oracle_mad(const Series& s, double mu) {
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  CompensatedSum acc;
  for (double x : s) acc.add(std::abs(x - mu));
  return acc.value() / static_cast<double>(s.size());
}

double sample_mad(const Series& s) { return oracle_mad(s, mean(s)); }

double dispersion_fn(const Series& s, double u) { return oracle_mad(s, u); }

DispersionSlope dispersion_derivative(const Series& s, double u) {
  std::size_t below_or_at = 0;
  bool kink = false;
  for (double x : s) {
    if (x <= u) ++below_or_at;
    if (x == u) kink = true;
  }
  const double f = static_cast<double>(below_or_at) / static_cast<double>(s.size());
  return {2.0 * f - 1.0, kink};
}

SignBalance sign_balance(const Series& s, double mu) {
  SignBalance b;
  for (double x : s) {
    if (x < mu) {
      ++b.n_less;
    } else if (x > mu) {
      ++b.n_greater;
    } else {
      ++b.n_equal;
    }
  }
  const double n = static_cast<double>(s.size());
  b.p_less = static_cast<double>(b.n_less) / n;
  b.p_eq = static_cast<double>(b.n_equal) / n;
  b.p_greater = static_cast<double>(b.n_greater) / n;
  b.b_hat = (static_cast<double>(b.n_less) - static_cast<double>(b.n_greater)) / n;
  return b;
}

EcdfSummary::EcdfSummary(const Series& s) : sorted_(s.vector()) {
  std::sort(sorted_.begin(), sorted_.end());
}

std::size_t EcdfSummary::count_le(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

std::size_t EcdfSummary::count_lt(double x) const {
  return static_cast<std::size_t>(
      std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

double EcdfSummary::cdf(double x) const {
  return static_cast<double>(count_le(x)) / static_cast<double>(sorted_.size());
}

double EcdfSummary::cdf_left(double x) const {
  return static_cast<double>(count_lt(x)) / static_cast<double>(sorted_.size());
}

}  // namespace madstat
