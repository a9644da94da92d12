#include "madstat/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <boost/math/distributions/normal.hpp>

#include "madstat/error.hpp"
#include "madstat/expansion.hpp"
#include "madstat/io.hpp"
#include "madstat/rng.hpp"

namespace madstat {

using nlohmann::json;

namespace {

constexpr std::uint64_t kLongrunStream = 0x10C0;
constexpr std::uint64_t kReferenceStream = 0x4EF0;

double nearest_sample_value(const Series& s, double target) {
  return *std::min_element(s.begin(), s.end(), [target](double a, double b) {
    return std::abs(a - target) < std::abs(b - target);
  });
}

json summary(std::span<const double> xs) {
  CompensatedSum sum;
  for (double x : xs) sum.add(x);
  const double n = static_cast<double>(xs.size());
  const double m = sum.value() / n;
  CompensatedSum sq;
  for (double x : xs) sq.add((x - m) * (x - m));
  const double var = xs.size() > 1 ? sq.value() / (n - 1.0) : 0.0;
  return json{{"mean", m}, {"variance", var}, {"mean_se", std::sqrt(var / n)}};
}

std::size_t positive_count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ConfigError(field + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::iid:
      return "iid";
    case Regime::mixing:
      return "mixing";
    case Regime::stable:
      return "stable";
  }
  return "iid";
}

Regime parse_regime(const std::string& name) {
  if (name == "iid") return Regime::iid;
  if (name == "mixing") return Regime::mixing;
  if (name == "stable") return Regime::stable;
  throw ConfigError("regime must be one of iid, mixing, stable (got '" + name + "')");
}

json cmd_estimate(const Series& s) {
  const double m = mean(s);
  return json{{"spec_version", kReportVersion},
              {"command", "estimate"},
              {"n", s.size()},
              {"mean", m},
              {"sample_mad", sample_mad(s)},
              {"sign_balance", sign_balance(s, m)}};
}

CiResult confidence_interval(const Series& s, const CiOptions& options) {
  if (!(options.level > 0.0 && options.level < 100.0)) {
    throw ConfigError("level must lie strictly between 0 and 100");
  }
  if (options.limit_draws < 2) throw ConfigError("limit_draws must be at least 2");

  CiResult out;
  out.n = s.size();
  out.level = options.level;
  out.regime = options.regime;
  out.atom = options.atom;
  out.estimate = sample_mad(s);
  const double n = static_cast<double>(s.size());
  const double tail = (1.0 - options.level / 100.0) / 2.0;

  if (options.regime == Regime::stable) {
    if (options.atom) {
      throw RegimeError("the stable regime requires a law continuous at its mean");
    }
    if (!options.tail) throw ConfigError("the stable regime needs --alpha, --p and --xm");
    out.mu = options.mu.value_or(mean(s));
    const SignBalance balance = sign_balance(s, out.mu);
    StableParams params;
    params.alpha = options.tail->alpha;
    params.p = options.tail->p;
    params.p_less = balance.p_less;
    params.p_greater = balance.p_greater;
    params.sigma =
        options.scale_convention == StableScaleConvention::formula
            ? stable_scale(params.alpha, params.p, params.p_less, params.p_greater)
            : tail_matched_stable_scale(params.alpha, params.p, params.p_less, params.p_greater);
    out.model.params = params;
    const Series draws =
        sample_stable(params.alpha, true, params.sigma, options.limit_draws, options.seed);
    const double scale = norming_an(*options.tail, s.size()) / n;
    out.norming = scale;
    out.lower = out.estimate - quantile(draws, 1.0 - tail) * scale;
    out.upper = out.estimate - quantile(draws, tail) * scale;
    return out;
  }

  if (options.atom) {
    out.mu = options.mu.value_or(nearest_sample_value(s, mean(s)));
  } else {
    out.mu = options.mu.value_or(mean(s));
  }

  GaussianFunctionalParams params;
  if (options.regime == Regime::iid) {
    params = gaussian_limit_iid(s, out.mu);
  } else {
    params = gaussian_limit_mixing(s, out.mu, options.window);
    out.bandwidth = options.window.resolve(s.size());
  }
  if (!options.atom) params.p_eq = 0.0;
  out.model.params = params;
  out.norming = 1.0 / std::sqrt(n);

  if (!options.atom) {
    const double variance = sigma_theta_sq(params);
    out.sigma_theta_sq = variance;
    const boost::math::normal_distribution<double> standard;
    const double z = boost::math::quantile(standard, 1.0 - tail);
    const double half = z * std::sqrt(std::max(variance, 0.0) / n);
    out.lower = out.estimate - half;
    out.upper = out.estimate + half;
    return out;
  }

  // The functional limit is not centred, so the interval inverts its own
  // quantiles.
  const Series draws = sample_functional_limit(params, options.limit_draws, options.seed);
  out.lower = out.estimate - quantile(draws, 1.0 - tail) / std::sqrt(n);
  out.upper = out.estimate - quantile(draws, tail) / std::sqrt(n);
  return out;
}

json cmd_ci(const Series& s, const CiOptions& options) {
  const CiResult r = confidence_interval(s, options);
  json j{{"spec_version", kReportVersion},
         {"command", "ci"},
         {"regime", regime_name(r.regime)},
         {"atom", r.atom},
         {"level", r.level},
         {"n", r.n},
         {"estimate", r.estimate},
         {"lower", r.lower},
         {"upper", r.upper},
         {"mu", r.mu},
         {"limit_model", r.model},
         {"seed", options.seed}};
  if (r.sigma_theta_sq) j["sigma_theta_sq"] = *r.sigma_theta_sq;
  if (r.bandwidth) j["bandwidth"] = *r.bandwidth;
  if (r.norming) j["norming"] = *r.norming;
  if (options.tail) j["tail"] = *options.tail;
  if (options.regime == Regime::stable) {
    j["stable_scale"] =
        options.scale_convention == StableScaleConvention::formula ? "formula" : "tail_matched";
  }
  return j;
}

McVerifyConfig parse_mc_verify_config(const json& j) {
  if (!j.is_object()) throw ConfigError("study file must contain a JSON object");
  McVerifyConfig c;
  c.study = j.get<StudyConfig>();
  if (j.contains("reference")) {
    const json& ref = j.at("reference");
    if (!ref.is_object()) throw ConfigError("reference must be an object");
    if (ref.contains("draws")) c.reference_draws = positive_count(ref.at("draws"), "reference.draws");
    if (ref.contains("scale")) {
      if (!ref.at("scale").is_number()) throw ConfigError("reference.scale must be a number");
      c.reference_scale = ref.at("scale").get<double>();
    }
    if (ref.contains("stable_scale")) {
      const json& v = ref.at("stable_scale");
      const std::string name = v.is_string() ? v.get<std::string>() : "";
      if (name == "formula") {
        c.scale_convention = StableScaleConvention::formula;
      } else if (name == "tail_matched") {
        c.scale_convention = StableScaleConvention::tail_matched;
      } else {
        throw ConfigError("reference.stable_scale must be 'formula' or 'tail_matched'");
      }
    }
    if (ref.contains("longrun_length")) {
      c.longrun_reference_length = positive_count(ref.at("longrun_length"), "reference.longrun_length");
    }
    if (ref.contains("window")) c.window = ref.at("window").get<LagWindowSpec>();
  }
  if (j.contains("levels")) {
    if (!j.at("levels").is_array()) throw ConfigError("levels must be an array of numbers");
    c.levels.clear();
    for (const json& v : j.at("levels")) {
      if (!v.is_number()) throw ConfigError("levels must be an array of numbers");
      c.levels.push_back(v.get<double>());
    }
  }
  for (std::size_t k = 0; k < c.levels.size(); ++k) {
    if (!(c.levels[k] > 0.0 && c.levels[k] < 1.0) ||
        (k > 0 && !(c.levels[k] > c.levels[k - 1]))) {
      throw ConfigError("levels must be strictly increasing inside (0, 1)");
    }
  }
  if (j.contains("ks_tolerance")) {
    if (!j.at("ks_tolerance").is_number()) throw ConfigError("ks_tolerance must be a number");
    c.ks_tolerance = j.at("ks_tolerance").get<double>();
  }
  if (j.contains("quantile_tolerance")) {
    if (!j.at("quantile_tolerance").is_number()) {
      throw ConfigError("quantile_tolerance must be a number");
    }
    c.quantile_tolerance = j.at("quantile_tolerance").get<double>();
  }
  if (c.reference_draws < 2) throw ConfigError("reference.draws must be at least 2");
  if (!(c.reference_scale > 0.0) || !std::isfinite(c.reference_scale)) {
    throw ConfigError("reference.scale must be positive");
  }
  return c;
}

McVerifyConfig load_mc_verify_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open study file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("study file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_mc_verify_config(j);
}

McVerifyOutcome cmd_mc_verify(const McVerifyConfig& config) {
  StudyResult study = run_study(config.study);
  const StudyConfig& sc = config.study;
  const std::uint64_t reference_seed = derive_seed(sc.seed, kReferenceStream);

  LimitModel model;
  std::vector<double> reference;
  if (sc.rate == NormingRate::n_over_an) {
    StableParams params = stable_limit(sc.generator, config.scale_convention);
    model.params = params;
    const Series draws =
        sample_stable(params.alpha, true, params.sigma, config.reference_draws, reference_seed);
    reference = draws.vector();
  } else {
    GaussianFunctionalParams params;
    if (is_iid(sc.generator) && analytic_theta(sc.generator)) {
      params = gaussian_limit_iid(sc.generator);
    } else {
      const Series longrun_sample = generate(sc.generator, config.longrun_reference_length,
                                             derive_seed(sc.seed, kLongrunStream));
      params = gaussian_limit_mixing(longrun_sample, study.mu, config.window);
    }
    model.params = params;
    const Series draws = sample_functional_limit(params, config.reference_draws, reference_seed);
    reference = draws.vector();
  }
  if (config.reference_scale != 1.0) {
    for (double& v : reference) v *= config.reference_scale;
  }

  Series sample(study.results);
  Series reference_series(std::move(reference));
  GofReport gof = quantile_band(sample, reference_series, config.levels);

  json study_json{{"config", sc},
                  {"mu", study.mu},
                  {"theta", study.theta},
                  {"theta_estimated", study.theta_estimated},
                  {"theta_se", study.theta_se},
                  {"norming", study.norming},
                  {"summary", summary(study.results)}};
  json verdict = json::object();
  bool pass = true;
  if (config.ks_tolerance) {
    const bool ok = gof.ks_distance < *config.ks_tolerance;
    verdict["ks_tolerance"] = *config.ks_tolerance;
    verdict["ks_pass"] = ok;
    pass = pass && ok;
  }
  if (config.quantile_tolerance) {
    const bool ok = std::all_of(gof.quantile_table.begin(), gof.quantile_table.end(),
                                [&](const QuantileRow& r) {
                                  return r.abs_gap < *config.quantile_tolerance;
                                });
    verdict["quantile_tolerance"] = *config.quantile_tolerance;
    verdict["quantile_pass"] = ok;
    pass = pass && ok;
  }
  verdict["pass"] = pass;

  json report{{"spec_version", kReportVersion},
              {"command", "mc-verify"},
              {"study", std::move(study_json)},
              {"limit_model", model},
              {"reference",
               {{"draws", config.reference_draws},
                {"scale", config.reference_scale},
                {"stable_scale", config.scale_convention == StableScaleConvention::formula
                                     ? "formula"
                                     : "tail_matched"},
                {"summary", summary(reference_series.values())}}},
              {"gof", gof},
              {"verdict", std::move(verdict)}};

  return McVerifyOutcome{std::move(study), std::move(model), std::move(reference_series),
                         std::move(gof), std::move(report)};
}

json cmd_expansion_check(const Series& s, double mu, std::optional<double> population_b) {
  const ExpansionReport r = decompose(s, mu, population_b);
  json j = r;
  j["spec_version"] = kReportVersion;
  j["command"] = "expansion-check";
  j["mu"] = mu;
  j["identity_residual"] = r.identity_residual();
  j["remainder_bound"] = r.remainder_bound();
  j["bound_holds"] = std::abs(r.remainder) <= r.remainder_bound();
  return j;
}

}  // namespace madstat
