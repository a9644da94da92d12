#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>

#include "madstat/generators.hpp"
#include "madstat/longrun.hpp"
#include "madstat/mad_core.hpp"
#include "madstat/tail.hpp"

namespace madstat {

// Limit of sqrt(n)(MAD_n - theta) under finite variance:
//   a Y + p_eq |Y| + Z,  (Y, Z) ~ N(0, cov).
struct GaussianFunctionalParams {
  double a = 0.0;     // Pr[X < mu] - Pr[X > mu]
  double p_eq = 0.0;  // Pr[X = mu]
  Cov2 cov;           // var_Y, var_Z, cov_YZ

  void validate() const;
};

// Totally right-skewed alpha-stable limit of (n / a_n)(MAD_n - theta).
struct StableParams {
  double alpha = 1.5;
  double sigma = 1.0;
  double p = 0.5;
  double p_less = 0.5;
  double p_greater = 0.5;

  void validate() const;
};

enum class NormingRate { sqrt_n, n_over_an };

struct LimitModel {
  std::variant<GaussianFunctionalParams, StableParams> params;

  NormingRate rate() const noexcept {
    return std::holds_alternative<StableParams>(params) ? NormingRate::n_over_an
                                                        : NormingRate::sqrt_n;
  }
};

// ---- Gaussian regimes ----------------------------------------------------

// Analytic covariance of (X - mu, |X - mu|) for iid laws with a closed form.
// Throws RegimeError for infinite-variance or serially dependent laws.
GaussianFunctionalParams gaussian_limit_iid(const GeneratorSpec& law);
// Sample version; mu defaults to the sample mean.
GaussianFunctionalParams gaussian_limit_iid(const Series& s,
                                            std::optional<double> mu = {});
// Long-run covariance of (X_i - mu, |X_i - mu|).
GaussianFunctionalParams gaussian_limit_mixing(const Series& s, double mu,
                                               const LagWindowSpec& window);

Series sample_functional_limit(const GaussianFunctionalParams& params,
                               std::size_t n_draws, std::uint64_t seed);
// p_eq E|Y| = p_eq sqrt(2 var_Y / pi).
double functional_limit_mean(const GaussianFunctionalParams& params);
// a^2 var_Y + 2 a cov_YZ + var_Z; requires p_eq == 0.
double sigma_theta_sq(const GaussianFunctionalParams& params);

// ---- Stable regime -------------------------------------------------------

// sigma^alpha = 2^alpha (p_less^alpha p + p_greater^alpha (1 - p))
//               / (Gamma(2 - alpha) / (alpha - 1) |cos(alpha pi / 2)|).
double stable_scale(double alpha, double p, double p_less, double p_greater);

// Scale whose Levy tail constant C_alpha sigma^alpha equals
// lim n Pr[xi > a_n] = (2 p_less)^alpha p + (2 p_greater)^alpha (1 - p),
// C_alpha = (alpha - 1) / (Gamma(2 - alpha) |cos(alpha pi / 2)|).
double tail_matched_stable_scale(double alpha, double p, double p_less,
                                 double p_greater);

enum class StableScaleConvention { formula, tail_matched };

// exp{-sigma^alpha |s|^alpha (1 - i sign(s) tan(alpha pi / 2))}; this is
// E[exp(+i s X)] for the right-skewed draws of sample_stable.
std::complex<double> stable_cf(const StableParams& params, double s);

// (1/n) sum exp(+i s X_j).
std::complex<double> empirical_cf(const Series& s, double t);
// (1/n) sum exp(-i s X_j).
std::complex<double> empirical_cf_conj_convention(const Series& s, double t);

// Chambers-Mallows-Stuck draws of S_alpha(sigma, +-1, 0).
Series sample_stable(double alpha, bool skew_to_right, double sigma,
                     std::size_t n_draws, std::uint64_t seed);

StableParams stable_limit(const GeneratorSpec& law,
                          StableScaleConvention convention =
                              StableScaleConvention::formula);

// a_n = inf{x >= scale : Pr[|X| > x] <= 1/n}.
double norming_an(const TailModel& tail, std::size_t n);
// Generic version for a decreasing survival function on [lower, inf).
double norming_an(const std::function<double(double)>& survival, double lower,
                  std::size_t n);

// xi_i = |X_i - mu| + b (X_i - mu), |b| < 1.
Series xi_transform(const Series& s, double mu, double b);

}  // namespace madstat
