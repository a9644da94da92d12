#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "madstat/mad_core.hpp"
#include "madstat/tail.hpp"

namespace madstat {

class GeneratorSpec;

struct IidNormal {
  double mu = 0.0;
  double sd = 1.0;
};
struct IidExponential {
  double rate = 1.0;
};
struct Atom {
  double value;
  double prob;
};
struct IidDiscrete {
  std::vector<Atom> atoms;
};
// Right tail with probability p, left tail with probability 1 - p; |X| is
// Pareto(alpha, x_m) on each side.
struct IidParetoSymmetric {
  double alpha = 1.5;
  double p = 0.5;
  double x_m = 1.0;
};
struct IidStudentT {
  double dof = 5.0;
};
// X_t - m = phi (X_{t-1} - m) + (e_t - m), m the innovation mean.
struct Ar1 {
  double phi = 0.0;
  std::shared_ptr<const GeneratorSpec> innovation;
};
// X_t = e_t + theta (e_{t-1} - m).
struct Ma1 {
  double theta = 0.0;
  std::shared_ptr<const GeneratorSpec> innovation;
};

class GeneratorSpec {
 public:
  using Variant = std::variant<IidNormal, IidExponential, IidDiscrete,
                               IidParetoSymmetric, IidStudentT, Ar1, Ma1>;

  GeneratorSpec() = default;
  template <typename T>
    requires std::is_constructible_v<Variant, T>
  GeneratorSpec(T law) : law_(std::move(law)) {}  // NOLINT(implicit)

  const Variant& law() const noexcept { return law_; }
  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&law_);
  }

 private:
  Variant law_ = IidNormal{};
};

Ar1 make_ar1(double phi, GeneratorSpec innovation);
Ma1 make_ma1(double theta, GeneratorSpec innovation);

// Throws ConfigError naming the offending field.
void validate(const GeneratorSpec& gen);
bool is_iid(const GeneratorSpec& gen);
std::string kind_name(const GeneratorSpec& gen);

// Length-n stationary realization, deterministic in seed.
Series generate(const GeneratorSpec& gen, std::size_t n, std::uint64_t seed);

struct TrueTheta {
  double mu = 0.0;
  double theta = 0.0;
  bool estimated = false;
  double theta_se = 0.0;  // Monte Carlo standard error when estimated
};

inline constexpr std::size_t kReferenceLength = 10'000'000;

// Closed-form (mu, theta) when available.
std::optional<TrueTheta> analytic_theta(const GeneratorSpec& gen);
// Always simulates: oracle_mad about the analytic mean over one long run,
// with a long-run-variance standard error.
TrueTheta reference_theta(const GeneratorSpec& gen, std::size_t reference_length,
                          std::uint64_t seed);
// Closed form, else a reference run of the given length with oracle_mad.
TrueTheta true_theta(const GeneratorSpec& gen,
                     std::size_t reference_length = kReferenceLength,
                     std::uint64_t seed = 0x5EED0ADULL);

// Tail model carried by heavy-tailed generators (the Pareto family).
std::optional<TailModel> tail_model(const GeneratorSpec& gen);

// Exact Pr[X < mu], Pr[X = mu], Pr[X > mu] for iid laws with closed forms.
struct LawSignProbabilities {
  double p_less;
  double p_eq;
  double p_greater;
};
std::optional<LawSignProbabilities> law_sign_probabilities(
    const GeneratorSpec& gen);

}  // namespace madstat
