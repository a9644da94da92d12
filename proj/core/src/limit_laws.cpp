#include "madstat/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "law_moments.hpp"
#include "madstat/error.hpp"
#include "madstat/rng.hpp"

namespace madstat {

namespace {

constexpr double kPsdTolerance = 1e-10;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw DomainError("alpha must lie strictly inside (1, 2)");
  }
}

// |cos(alpha pi / 2)| Gamma(2 - alpha) / (alpha - 1), i.e. 1 / C_alpha.
double inverse_tail_constant(double alpha) {
  return std::tgamma(2.0 - alpha) / (alpha - 1.0) *
         std::abs(std::cos(alpha * std::numbers::pi / 2.0));
}

// lim n Pr[xi > a_n] for the xi-transform of a tail with balance p.
double xi_tail_weight(double alpha, double p, double p_less, double p_greater) {
  return std::pow(2.0, alpha) *
         (std::pow(p_less, alpha) * p + std::pow(p_greater, alpha) * (1.0 - p));
}

void check_scale_inputs(double alpha, double p, double p_less, double p_greater) {
  check_alpha(alpha);
  check_probability(p, "p");
  check_probability(p_less, "p_less");
  check_probability(p_greater, "p_greater");
}

Series centred_pair_component(const Series& s, double mu, bool absolute) {
  std::vector<double> out(s.size());
  std::transform(s.begin(), s.end(), out.begin(), [mu, absolute](double x) {
    return absolute ? std::abs(x - mu) : x - mu;
  });
  return Series(std::move(out));
}

}  // namespace

void GaussianFunctionalParams::validate() const {
  if (!(a >= -1.0 && a <= 1.0)) throw DomainError("a must lie in [-1, 1]");
  check_probability(p_eq, "p_eq");
  if (std::abs(a) + p_eq > 1.0 + 1e-12) throw DomainError("|a| + p_eq must not exceed 1");
  if (!std::isfinite(cov.yy) || !std::isfinite(cov.zz) || !std::isfinite(cov.yz)) {
    throw DomainError("covariance entries must be finite");
  }
  if (cov.min_eigenvalue() < -kPsdTolerance) {
    throw DomainError("covariance matrix is not positive semidefinite");
  }
}

void StableParams::validate() const {
  check_alpha(alpha);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  check_probability(p, "p");
  check_probability(p_less, "p_less");
  check_probability(p_greater, "p_greater");
  if (p_less + p_greater > 1.0 + 1e-12) {
    throw DomainError("p_less + p_greater must not exceed 1");
  }
}

GaussianFunctionalParams gaussian_limit_iid(const GeneratorSpec& law) {
  if (!is_iid(law)) {
    throw RegimeError(kind_name(law) +
                      " is serially dependent; use gaussian_limit_mixing");
  }
  const auto moments = detail::pair_moments(law);
  if (!moments) {
    throw RegimeError(kind_name(law) +
                      " has infinite variance; use stable_limit for the n / a_n regime");
  }
  const auto signs = law_sign_probabilities(law);
  GaussianFunctionalParams out;
  out.a = signs->p_less - signs->p_greater;
  out.p_eq = signs->p_eq;
  out.cov = Cov2{moments->var_y, moments->var_z, moments->cov_yz};
  return out;
}

GaussianFunctionalParams gaussian_limit_iid(const Series& s, std::optional<double> mu) {
  const double centre = mu.value_or(mean(s));
  if (!std::isfinite(centre)) throw DomainError("mu must be finite");
  if (s.size() < 2) throw DomainError("a covariance estimate needs at least 2 observations");
  const Series y = centred_pair_component(s, centre, false);
  const Series z = centred_pair_component(s, centre, true);
  const SignBalance balance = sign_balance(s, centre);
  GaussianFunctionalParams out;
  out.a = balance.b_hat;
  out.p_eq = balance.p_eq;
  out.cov = longrun_cov(y, z, LagWindowSpec{LagKernel::bartlett, 0});
  return out;
}

GaussianFunctionalParams gaussian_limit_mixing(const Series& s, double mu,
                                               const LagWindowSpec& window) {
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  const Series y = centred_pair_component(s, mu, false);
  const Series z = centred_pair_component(s, mu, true);
  const SignBalance balance = sign_balance(s, mu);
  GaussianFunctionalParams out;
  out.a = balance.b_hat;
  out.p_eq = balance.p_eq;
  out.cov = longrun_cov(y, z, window);
  return out;
}

Series sample_functional_limit(const GaussianFunctionalParams& params,
                               std::size_t n_draws, std::uint64_t seed) {
  params.validate();
  if (n_draws == 0) throw DomainError("n_draws must be at least 1");

  // Cholesky of a PSD 2x2 matrix; negative pivots up to the tolerance are
  // treated as zero.
  const Cov2& c = params.cov;
  const double l11 = std::sqrt(std::max(c.yy, 0.0));
  double l21 = 0.0;
  double l22 = 0.0;
  if (l11 > 0.0) {
    l21 = c.yz / l11;
    const double pivot = c.zz - l21 * l21;
    if (pivot < -kPsdTolerance) throw DomainError("covariance matrix is not positive semidefinite");
    l22 = std::sqrt(std::max(pivot, 0.0));
  } else {
    if (std::abs(c.yz) > kPsdTolerance) {
      throw DomainError("covariance matrix is not positive semidefinite");
    }
    l22 = std::sqrt(std::max(c.zz, 0.0));
  }

  Rng rng(seed);
  std::vector<double> out(n_draws);
  for (auto& v : out) {
    const double g1 = rng.normal();
    const double g2 = rng.normal();
    const double y = l11 * g1;
    const double z = l21 * g1 + l22 * g2;
    v = params.a * y + params.p_eq * std::abs(y) + z;
  }
  return Series(std::move(out));
}

double functional_limit_mean(const GaussianFunctionalParams& params) {
  params.validate();
  return params.p_eq * std::sqrt(2.0 * std::max(params.cov.yy, 0.0) / std::numbers::pi);
}

double sigma_theta_sq(const GaussianFunctionalParams& params) {
  params.validate();
  if (params.p_eq != 0.0) {
    throw RegimeError("the limit is non-Gaussian when Pr[X = mu] > 0");
  }
  const Cov2& c = params.cov;
  return params.a * params.a * c.yy + 2.0 * params.a * c.yz + c.zz;
}

double stable_scale(double alpha, double p, double p_less, double p_greater) {
  check_scale_inputs(alpha, p, p_less, p_greater);
  const double numerator = xi_tail_weight(alpha, p, p_less, p_greater);
  if (!(numerator > 0.0)) throw DomainError("stable scale degenerates to zero");
  return std::pow(numerator / inverse_tail_constant(alpha), 1.0 / alpha);
}

double tail_matched_stable_scale(double alpha, double p, double p_less,
                                 double p_greater) {
  check_scale_inputs(alpha, p, p_less, p_greater);
  const double weight = xi_tail_weight(alpha, p, p_less, p_greater);
  if (!(weight > 0.0)) throw DomainError("stable scale degenerates to zero");
  return std::pow(weight * inverse_tail_constant(alpha), 1.0 / alpha);
}

std::complex<double> stable_cf(const StableParams& params, double s) {
  params.validate();
  if (s == 0.0) return {1.0, 0.0};
  const double sgn = s > 0.0 ? 1.0 : -1.0;
  const double magnitude =
      std::pow(params.sigma, params.alpha) * std::pow(std::abs(s), params.alpha);
  const double skew = sgn * std::tan(params.alpha * std::numbers::pi / 2.0);
  return std::exp(std::complex<double>(-magnitude, magnitude * skew));
}

std::complex<double> empirical_cf(const Series& s, double t) {
  CompensatedSum re;
  CompensatedSum im;
  for (double x : s) {
    re.add(std::cos(t * x));
    im.add(std::sin(t * x));
  }
  const double n = static_cast<double>(s.size());
  return {re.value() / n, im.value() / n};
}

std::complex<double> empirical_cf_conj_convention(const Series& s, double t) {
  return empirical_cf(s, -t);
}

Series sample_stable(double alpha, bool skew_to_right, double sigma,
                     std::size_t n_draws, std::uint64_t seed) {
  check_alpha(alpha);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  if (n_draws == 0) throw DomainError("n_draws must be at least 1");

  const double beta = skew_to_right ? 1.0 : -1.0;
  const double skew = beta * std::tan(std::numbers::pi * alpha / 2.0);
  const double shift = std::atan(skew) / alpha;
  const double factor = std::pow(1.0 + skew * skew, 1.0 / (2.0 * alpha));
  const double exponent = (1.0 - alpha) / alpha;

  Rng rng(seed);
  std::vector<double> out(n_draws);
  for (auto& x : out) {
    const double v = std::numbers::pi * (rng.uniform_open() - 0.5);
    const double w = rng.exponential();
    const double shifted = alpha * (v + shift);
    const double unit = factor * std::sin(shifted) / std::pow(std::cos(v), 1.0 / alpha) *
                        std::pow(std::cos(v - shifted) / w, exponent);
    x = sigma * unit;
  }
  return Series(std::move(out));
}

StableParams stable_limit(const GeneratorSpec& law, StableScaleConvention convention) {
  const auto tail = tail_model(law);
  if (!tail || !is_iid(law)) {
    throw RegimeError(kind_name(law) + " does not carry a regularly varying tail model");
  }
  if (!(tail->alpha < 2.0)) {
    throw RegimeError("alpha >= 2 has finite variance; use the Gaussian regime");
  }
  const auto signs = law_sign_probabilities(law);
  if (!signs || signs->p_eq != 0.0) {
    throw RegimeError("the stable regime needs a law continuous at its mean");
  }
  StableParams out;
  out.alpha = tail->alpha;
  out.p = tail->p;
  out.p_less = signs->p_less;
  out.p_greater = signs->p_greater;
  out.sigma = convention == StableScaleConvention::formula
                  ? stable_scale(out.alpha, out.p, out.p_less, out.p_greater)
                  : tail_matched_stable_scale(out.alpha, out.p, out.p_less, out.p_greater);
  return out;
}

double norming_an(const std::function<double(double)>& survival, double lower,
                  std::size_t n) {
  if (n == 0) throw DomainError("n must be at least 1");
  if (!(lower > 0.0) || !std::isfinite(lower)) throw DomainError("lower bound must be positive");
  const double target = 1.0 / static_cast<double>(n);
  if (survival(lower) <= target) return lower;

  double lo = lower;
  double hi = 2.0 * lower;
  int doublings = 0;
  while (!(survival(hi) <= target)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 2000 || !std::isfinite(hi)) {
      throw DomainError("tail function does not decrease to 0");
    }
  }
  for (int it = 0; it < 400 && (hi - lo) > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double norming_an(const TailModel& tail, std::size_t n) {
  tail.validate();
  if (n == 0) throw DomainError("n must be at least 1");
  if (tail.slow == SlowVariation::constant) {
    return tail.scale * std::pow(static_cast<double>(n), 1.0 / tail.alpha);
  }
  return norming_an([&tail](double x) { return tail.survival(x); }, tail.scale, n);
}

Series xi_transform(const Series& s, double mu, double b) {
  if (!(std::abs(b) < 1.0)) throw DomainError("b must satisfy |b| < 1");
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  std::vector<double> out(s.size());
  std::transform(s.begin(), s.end(), out.begin(), [mu, b](double x) {
    const double d = x - mu;
    return std::abs(d) + b * d;
  });
  return Series(std::move(out));
}

}  // namespace madstat
