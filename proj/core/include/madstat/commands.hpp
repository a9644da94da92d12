#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "madstat/gof.hpp"
#include "madstat/limit_laws.hpp"
#include "madstat/longrun.hpp"
#include "madstat/mad_core.hpp"
#include "madstat/study.hpp"
#include "madstat/tail.hpp"

namespace madstat {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED0ADULL;
inline constexpr const char* kReportVersion = "1";

nlohmann::json cmd_estimate(const Series& s);

// ---- confidence intervals -----------------------------------------------

enum class Regime { iid, mixing, stable };

struct CiOptions {
  Regime regime = Regime::iid;
  bool atom = false;
  double level = 95.0;  // percent
  // Centre for sign balance / atom location. Defaults to the sample mean,
  // or for atom=yes to the sample value nearest the mean.
  std::optional<double> mu;
  LagWindowSpec window;
  std::uint64_t seed = kDefaultSeed;
  std::size_t limit_draws = 100'000;
  std::optional<TailModel> tail;  // required for Regime::stable
  StableScaleConvention scale_convention = StableScaleConvention::formula;
};

struct CiResult {
  std::size_t n = 0;
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 95.0;
  Regime regime = Regime::iid;
  bool atom = false;
  double mu = 0.0;
  LimitModel model;
  std::optional<double> sigma_theta_sq;
  std::optional<std::size_t> bandwidth;
  std::optional<double> norming;  // a_n / n or 1 / sqrt(n)
};

CiResult confidence_interval(const Series& s, const CiOptions& options);
nlohmann::json cmd_ci(const Series& s, const CiOptions& options);

// ---- Monte Carlo verification -------------------------------------------

struct McVerifyConfig {
  StudyConfig study;
  std::size_t reference_draws = 100'000;
  // Multiplies every reference draw; values != 1 give negative controls.
  double reference_scale = 1.0;
  StableScaleConvention scale_convention = StableScaleConvention::formula;
  // Used when the Gaussian reference needs a long-run estimate.
  std::size_t longrun_reference_length = 1'000'000;
  LagWindowSpec window;
  std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};
  std::optional<double> ks_tolerance;
  std::optional<double> quantile_tolerance;
};

McVerifyConfig parse_mc_verify_config(const nlohmann::json& j);
McVerifyConfig load_mc_verify_config(const std::filesystem::path& path);

struct McVerifyOutcome {
  StudyResult study;
  LimitModel model;
  Series reference;
  GofReport gof;
  nlohmann::json report;
};

McVerifyOutcome cmd_mc_verify(const McVerifyConfig& config);

nlohmann::json cmd_expansion_check(const Series& s, double mu,
                                   std::optional<double> population_b = {});

std::string regime_name(Regime r);
Regime parse_regime(const std::string& name);

}  // namespace madstat
