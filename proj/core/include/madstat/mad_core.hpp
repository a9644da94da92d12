#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace madstat {

// An ordered batch of finite observations, n >= 1.
class Series {
 public:
  explicit Series(std::vector<double> values);
  Series(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<double> values_;
};

// Neumaier-compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;
double mean(const Series& s) noexcept;

// (1/n) sum |X_i - mean|.
double sample_mad(const Series& s);
// (1/n) sum |X_i - mu|, the deviation that could be computed if the true mean
// were known.
double oracle_mad(const Series& s, double mu);
// Empirical dispersion function u -> (1/n) sum |X_i - u|.
double dispersion_fn(const Series& s, double u);

struct DispersionSlope {
  double value;  // 2 F_n(u) - 1
  bool kink;     // u coincides with a sample point
};
DispersionSlope dispersion_derivative(const Series& s, double u);

// Empirical Pr[X < mu], Pr[X = mu], Pr[X > mu]; equality is exact floating
// comparison.
struct SignBalance {
  std::size_t n_less = 0;
  std::size_t n_equal = 0;
  std::size_t n_greater = 0;
  double p_less = 0.0;
  double p_eq = 0.0;
  double p_greater = 0.0;
  double b_hat = 0.0;  // p_less - p_greater
};
SignBalance sign_balance(const Series& s, double mu);

// Sorted view of a sample answering F_n(x) and F_n(x-) queries.
class EcdfSummary {
 public:
  explicit EcdfSummary(const Series& s);

  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> sorted() const noexcept { return sorted_; }
  std::size_t count_le(double x) const;
  std::size_t count_lt(double x) const;
  double cdf(double x) const;
  double cdf_left(double x) const;

 private:
  std::vector<double> sorted_;
};

}  // namespace madstat
