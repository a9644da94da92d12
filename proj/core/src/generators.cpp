#include "madstat/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "madstat/error.hpp"
#include "madstat/longrun.hpp"
#include "madstat/rng.hpp"
#include "law_moments.hpp"

namespace madstat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const double kSqrtTwoOverPi = std::sqrt(2.0 / std::numbers::pi);

// Moments of a one-sided Pareto(alpha, x_m) variable R.
struct ParetoSide {
  double alpha;
  double x_m;

  double cdf(double t) const { return t <= x_m ? 0.0 : 1.0 - std::pow(x_m / t, alpha); }
  double mean() const { return alpha * x_m / (alpha - 1.0); }
  double second_moment() const { return alpha * x_m * x_m / (alpha - 2.0); }
  // E[(R - t)^+]
  double upper1(double t) const {
    if (t <= x_m) return mean() - t;
    return std::pow(x_m, alpha) * std::pow(t, 1.0 - alpha) / (alpha - 1.0);
  }
  // E[(t - R)^+]
  double lower1(double t) const { return t - mean() + upper1(t); }
  // E[((R - t)^+)^2], alpha > 2
  double upper2(double t) const {
    if (t <= x_m) return second_moment() - 2.0 * t * mean() + t * t;
    return 2.0 * std::pow(x_m, alpha) * std::pow(t, 2.0 - alpha) /
           ((alpha - 1.0) * (alpha - 2.0));
  }
  // E[((t - R)^+)^2], alpha > 2
  double lower2(double t) const {
    return t * t - 2.0 * t * mean() + second_moment() - upper2(t);
  }
};

double student_t_abs_mean(double dof) {
  return 2.0 * std::sqrt(dof) *
         std::exp(std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof)) /
         (std::sqrt(std::numbers::pi) * (dof - 1.0));
}

double discrete_mean(const IidDiscrete& d) {
  double m = 0.0;
  for (const auto& a : d.atoms) m += a.value * a.prob;
  return m;
}

double draw_iid(const GeneratorSpec& gen, Rng& rng);

double draw_discrete(const IidDiscrete& d, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (const auto& a : d.atoms) {
    cumulative += a.prob;
    if (u < cumulative) return a.value;
  }
  return d.atoms.back().value;
}

double draw_iid(const GeneratorSpec& gen, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const IidNormal& g) { return g.mu + g.sd * rng.normal(); },
          [&](const IidExponential& g) { return rng.exponential() / g.rate; },
          [&](const IidDiscrete& g) { return draw_discrete(g, rng); },
          [&](const IidParetoSymmetric& g) {
            const double magnitude = g.x_m * std::pow(1.0 - rng.uniform(), -1.0 / g.alpha);
            return rng.uniform() < g.p ? magnitude : -magnitude;
          },
          [&](const IidStudentT& g) {
            const double z = rng.normal();
            const double chi2 = 2.0 * rng.gamma(0.5 * g.dof);
            return z / std::sqrt(chi2 / g.dof);
          },
          [&](const Ar1&) -> double { throw ConfigError("innovation must be an iid law"); },
          [&](const Ma1&) -> double { throw ConfigError("innovation must be an iid law"); },
      },
      gen.law());
}

// Mean of an iid law; every iid kind has one in closed form.
double iid_mean(const GeneratorSpec& gen) {
  return std::visit(
      Overloaded{
          [](const IidNormal& g) { return g.mu; },
          [](const IidExponential& g) { return 1.0 / g.rate; },
          [](const IidDiscrete& g) { return discrete_mean(g); },
          [](const IidParetoSymmetric& g) {
            return (2.0 * g.p - 1.0) * ParetoSide{g.alpha, g.x_m}.mean();
          },
          [](const IidStudentT&) { return 0.0; },
          [](const Ar1&) -> double { throw ConfigError("innovation must be an iid law"); },
          [](const Ma1&) -> double { throw ConfigError("innovation must be an iid law"); },
      },
      gen.law());
}

void validate_innovation(const std::shared_ptr<const GeneratorSpec>& innovation,
                         const char* owner) {
  if (!innovation) throw ConfigError(std::string(owner) + ".innovation is missing");
  if (!is_iid(*innovation)) {
    throw ConfigError(std::string(owner) + ".innovation must be an iid law");
  }
  validate(*innovation);
}

}  // namespace

Ar1 make_ar1(double phi, GeneratorSpec innovation) {
  return Ar1{phi, std::make_shared<const GeneratorSpec>(std::move(innovation))};
}

Ma1 make_ma1(double theta, GeneratorSpec innovation) {
  return Ma1{theta, std::make_shared<const GeneratorSpec>(std::move(innovation))};
}

bool is_iid(const GeneratorSpec& gen) {
  return !gen.as<Ar1>() && !gen.as<Ma1>();
}

std::string kind_name(const GeneratorSpec& gen) {
  return std::visit(Overloaded{
                        [](const IidNormal&) { return "iid_normal"; },
                        [](const IidExponential&) { return "iid_exponential"; },
                        [](const IidDiscrete&) { return "iid_discrete"; },
                        [](const IidParetoSymmetric&) { return "iid_pareto_symmetric"; },
                        [](const IidStudentT&) { return "iid_student_t"; },
                        [](const Ar1&) { return "ar1"; },
                        [](const Ma1&) { return "ma1"; },
                    },
                    gen.law());
}

void validate(const GeneratorSpec& gen) {
  std::visit(
      Overloaded{
          [](const IidNormal& g) {
            if (!std::isfinite(g.mu)) throw ConfigError("iid_normal.mu must be finite");
            if (!(g.sd > 0.0) || !std::isfinite(g.sd)) {
              throw ConfigError("iid_normal.sd must be positive");
            }
          },
          [](const IidExponential& g) {
            if (!(g.rate > 0.0) || !std::isfinite(g.rate)) {
              throw ConfigError("iid_exponential.rate must be positive");
            }
          },
          [](const IidDiscrete& g) {
            if (g.atoms.empty()) throw ConfigError("iid_discrete.atoms must not be empty");
            double total = 0.0;
            for (const auto& a : g.atoms) {
              if (!std::isfinite(a.value)) throw ConfigError("iid_discrete.atoms value must be finite");
              if (!(a.prob >= 0.0 && a.prob <= 1.0)) {
                throw ConfigError("iid_discrete.atoms prob must lie in [0, 1]");
              }
              total += a.prob;
            }
            if (std::abs(total - 1.0) > 1e-12) {
              throw ConfigError("iid_discrete.atoms probabilities must sum to 1");
            }
          },
          [](const IidParetoSymmetric& g) {
            if (!(g.alpha > 1.0) || !std::isfinite(g.alpha)) {
              throw ConfigError("iid_pareto_symmetric.alpha must exceed 1 (finite mean)");
            }
            if (!(g.p >= 0.0 && g.p <= 1.0)) {
              throw ConfigError("iid_pareto_symmetric.p must lie in [0, 1]");
            }
            if (!(g.x_m > 0.0) || !std::isfinite(g.x_m)) {
              throw ConfigError("iid_pareto_symmetric.x_m must be positive");
            }
          },
          [](const IidStudentT& g) {
            if (!(g.dof > 1.0) || !std::isfinite(g.dof)) {
              throw ConfigError("iid_student_t.dof must exceed 1 (finite mean)");
            }
          },
          [](const Ar1& g) {
            if (!(std::abs(g.phi) < 1.0)) throw ConfigError("ar1.phi must satisfy |phi| < 1");
            validate_innovation(g.innovation, "ar1");
          },
          [](const Ma1& g) {
            if (!std::isfinite(g.theta)) throw ConfigError("ma1.theta must be finite");
            validate_innovation(g.innovation, "ma1");
          },
      },
      gen.law());
}

Series generate(const GeneratorSpec& gen, std::size_t n, std::uint64_t seed) {
  validate(gen);
  if (n == 0) throw ConfigError("n must be at least 1");
  Rng rng(seed);
  std::vector<double> out(n);

  if (const auto* ar = gen.as<Ar1>()) {
    const GeneratorSpec& innovation = *ar->innovation;
    const double m = iid_mean(innovation);
    double x = m;
    if (const auto* normal = innovation.as<IidNormal>()) {
      x = m + normal->sd / std::sqrt(1.0 - ar->phi * ar->phi) * rng.normal();
    } else {
      const auto burn_in = 1000 + static_cast<std::size_t>(
                                      std::ceil(50.0 / (1.0 - std::abs(ar->phi))));
      for (std::size_t t = 0; t < burn_in; ++t) {
        x = m + ar->phi * (x - m) + (draw_iid(innovation, rng) - m);
      }
    }
    out[0] = x;
    for (std::size_t t = 1; t < n; ++t) {
      x = m + ar->phi * (x - m) + (draw_iid(innovation, rng) - m);
      out[t] = x;
    }
    return Series(std::move(out));
  }

  if (const auto* ma = gen.as<Ma1>()) {
    const GeneratorSpec& innovation = *ma->innovation;
    const double m = iid_mean(innovation);
    double previous = draw_iid(innovation, rng);
    for (std::size_t t = 0; t < n; ++t) {
      const double e = draw_iid(innovation, rng);
      out[t] = e + ma->theta * (previous - m);
      previous = e;
    }
    return Series(std::move(out));
  }

  for (auto& x : out) x = draw_iid(gen, rng);
  return Series(std::move(out));
}

std::optional<TrueTheta> analytic_theta(const GeneratorSpec& gen) {
  validate(gen);
  return std::visit(
      Overloaded{
          [](const IidNormal& g) -> std::optional<TrueTheta> {
            return TrueTheta{g.mu, g.sd * kSqrtTwoOverPi};
          },
          [](const IidExponential& g) -> std::optional<TrueTheta> {
            return TrueTheta{1.0 / g.rate, 2.0 / (std::numbers::e * g.rate)};
          },
          [](const IidDiscrete& g) -> std::optional<TrueTheta> {
            const double mu = discrete_mean(g);
            double theta = 0.0;
            for (const auto& a : g.atoms) theta += a.prob * std::abs(a.value - mu);
            return TrueTheta{mu, theta};
          },
          [](const IidParetoSymmetric& g) -> std::optional<TrueTheta> {
            const ParetoSide r{g.alpha, g.x_m};
            const double mu = (2.0 * g.p - 1.0) * r.mean();
            const double positive = g.p * r.upper1(mu) + (1.0 - g.p) * r.lower1(-mu);
            const double negative = g.p * r.lower1(mu) + (1.0 - g.p) * r.upper1(-mu);
            return TrueTheta{mu, positive + negative};
          },
          [](const IidStudentT& g) -> std::optional<TrueTheta> {
            return TrueTheta{0.0, student_t_abs_mean(g.dof)};
          },
          [](const Ar1& g) -> std::optional<TrueTheta> {
            if (const auto* normal = g.innovation->as<IidNormal>()) {
              const double sd = normal->sd / std::sqrt(1.0 - g.phi * g.phi);
              return TrueTheta{normal->mu, sd * kSqrtTwoOverPi};
            }
            return std::nullopt;
          },
          [](const Ma1& g) -> std::optional<TrueTheta> {
            if (const auto* normal = g.innovation->as<IidNormal>()) {
              const double sd = normal->sd * std::sqrt(1.0 + g.theta * g.theta);
              return TrueTheta{normal->mu, sd * kSqrtTwoOverPi};
            }
            return std::nullopt;
          },
      },
      gen.law());
}

TrueTheta reference_theta(const GeneratorSpec& gen, std::size_t reference_length,
                          std::uint64_t seed) {
  validate(gen);
  double mu = 0.0;
  if (const auto* ar = gen.as<Ar1>()) {
    mu = iid_mean(*ar->innovation);
  } else if (const auto* ma = gen.as<Ma1>()) {
    mu = iid_mean(*ma->innovation);
  } else {
    mu = iid_mean(gen);
  }

  const Series x = generate(gen, reference_length, seed);
  TrueTheta out;
  out.mu = mu;
  out.theta = oracle_mad(x, mu);
  out.estimated = true;

  std::vector<double> deviations(x.size());
  std::transform(x.begin(), x.end(), deviations.begin(),
                 [mu](double v) { return std::abs(v - mu); });
  const Series dev(std::move(deviations));
  const LagWindowSpec window = is_iid(gen) ? LagWindowSpec{LagKernel::bartlett, 0}
                                           : LagWindowSpec{};
  const Cov2 lr = longrun_cov(dev, dev, window);
  out.theta_se = std::sqrt(std::max(lr.yy, 0.0) / static_cast<double>(x.size()));
  return out;
}

TrueTheta true_theta(const GeneratorSpec& gen, std::size_t reference_length,
                     std::uint64_t seed) {
  if (auto exact = analytic_theta(gen)) return *exact;
  return reference_theta(gen, reference_length, seed);
}

std::optional<TailModel> tail_model(const GeneratorSpec& gen) {
  if (const auto* pareto = gen.as<IidParetoSymmetric>()) {
    return TailModel{pareto->alpha, pareto->p, pareto->x_m, SlowVariation::constant};
  }
  return std::nullopt;
}

std::optional<LawSignProbabilities> law_sign_probabilities(const GeneratorSpec& gen) {
  validate(gen);
  return std::visit(
      Overloaded{
          [](const IidNormal&) -> std::optional<LawSignProbabilities> {
            return LawSignProbabilities{0.5, 0.0, 0.5};
          },
          [](const IidExponential&) -> std::optional<LawSignProbabilities> {
            const double above = std::exp(-1.0);
            return LawSignProbabilities{1.0 - above, 0.0, above};
          },
          [](const IidDiscrete& g) -> std::optional<LawSignProbabilities> {
            const double mu = discrete_mean(g);
            LawSignProbabilities out{0.0, 0.0, 0.0};
            for (const auto& a : g.atoms) {
              if (a.value < mu) {
                out.p_less += a.prob;
              } else if (a.value > mu) {
                out.p_greater += a.prob;
              } else {
                out.p_eq += a.prob;
              }
            }
            return out;
          },
          [](const IidParetoSymmetric& g) -> std::optional<LawSignProbabilities> {
            const ParetoSide r{g.alpha, g.x_m};
            const double mu = (2.0 * g.p - 1.0) * r.mean();
            const double less = g.p * r.cdf(mu) + (1.0 - g.p) * (1.0 - r.cdf(-mu));
            return LawSignProbabilities{less, 0.0, 1.0 - less};
          },
          [](const IidStudentT&) -> std::optional<LawSignProbabilities> {
            return LawSignProbabilities{0.5, 0.0, 0.5};
          },
          [](const Ar1& g) -> std::optional<LawSignProbabilities> {
            if (g.innovation->as<IidNormal>()) return LawSignProbabilities{0.5, 0.0, 0.5};
            return std::nullopt;
          },
          [](const Ma1& g) -> std::optional<LawSignProbabilities> {
            if (g.innovation->as<IidNormal>()) return LawSignProbabilities{0.5, 0.0, 0.5};
            return std::nullopt;
          },
      },
      gen.law());
}

namespace detail {

std::optional<PairMoments> pair_moments(const GeneratorSpec& gen) {
  const auto theta = analytic_theta(gen);
  if (!theta || !is_iid(gen)) return std::nullopt;
  const double mad = theta->theta;
  return std::visit(
      Overloaded{
          [&](const IidNormal& g) -> std::optional<PairMoments> {
            const double v = g.sd * g.sd;
            return PairMoments{v, v - mad * mad, 0.0};
          },
          [&](const IidExponential& g) -> std::optional<PairMoments> {
            const double s2 = 1.0 / (g.rate * g.rate);
            return PairMoments{s2, s2 - mad * mad, (4.0 / std::numbers::e - 1.0) * s2};
          },
          [&](const IidDiscrete& g) -> std::optional<PairMoments> {
            const double mu = theta->mu;
            double second = 0.0;
            double signed_second = 0.0;
            for (const auto& a : g.atoms) {
              const double d = a.value - mu;
              second += a.prob * d * d;
              signed_second += a.prob * d * std::abs(d);
            }
            return PairMoments{second, second - mad * mad, signed_second};
          },
          [&](const IidParetoSymmetric& g) -> std::optional<PairMoments> {
            if (!(g.alpha > 2.0)) return std::nullopt;
            const ParetoSide r{g.alpha, g.x_m};
            const double mu = theta->mu;
            const double positive2 = g.p * r.upper2(mu) + (1.0 - g.p) * r.lower2(-mu);
            const double negative2 = g.p * r.lower2(mu) + (1.0 - g.p) * r.upper2(-mu);
            const double second = positive2 + negative2;
            return PairMoments{second, second - mad * mad, positive2 - negative2};
          },
          [&](const IidStudentT& g) -> std::optional<PairMoments> {
            if (!(g.dof > 2.0)) return std::nullopt;
            const double v = g.dof / (g.dof - 2.0);
            return PairMoments{v, v - mad * mad, 0.0};
          },
          [](const Ar1&) -> std::optional<PairMoments> { return std::nullopt; },
          [](const Ma1&) -> std::optional<PairMoments> { return std::nullopt; },
      },
      gen.law());
}

}  // namespace detail

}  // namespace madstat
