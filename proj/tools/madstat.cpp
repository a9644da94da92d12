// madstat: sample mean absolute deviation, its expansion, confidence
// intervals and Monte Carlo verification of the limit laws.
//
// Exit codes: 0 success, 2 validation error, 3 numeric/domain error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "madstat/commands.hpp"
#include "madstat/error.hpp"
#include "madstat/generators.hpp"
#include "madstat/io.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct InputOptions {
  std::string input;
  std::string column = "0";
  bool no_header = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool required) {
  auto* opt = cmd->add_option("--input", in.input, "CSV file to read");
  if (required) opt->required();
  cmd->add_option("--column", in.column, "Column name, or 0-based index")
      ->capture_default_str();
  cmd->add_flag("--no-header", in.no_header, "The CSV file has no header row");
}

madstat::Series load(const InputOptions& in) {
  return madstat::read_csv_column(in.input, in.column, !in.no_header);
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw madstat::ConfigError("cannot write '" + out + "'");
  file << text;
}

madstat::LagWindowSpec parse_window(const std::string& bandwidth, const std::string& kernel) {
  madstat::LagWindowSpec w;
  if (kernel == "bartlett") {
    w.kernel = madstat::LagKernel::bartlett;
  } else if (kernel == "truncated") {
    w.kernel = madstat::LagKernel::truncated;
  } else {
    throw madstat::ConfigError("--kernel must be bartlett or truncated");
  }
  if (bandwidth != "auto") {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(bandwidth, &used);
      if (used != bandwidth.size()) throw std::invalid_argument(bandwidth);
      w.bandwidth = value;
    } catch (const std::exception&) {
      throw madstat::ConfigError("--bandwidth must be 'auto' or a non-negative integer");
    }
  }
  return w;
}

madstat::GeneratorSpec named_generator(const std::string& name, double alpha, double p,
                                       double xm, double dof) {
  if (!name.empty() && name.front() == '{') {
    try {
      return json::parse(name).get<madstat::GeneratorSpec>();
    } catch (const json::exception& e) {
      throw madstat::ConfigError(std::string("--generator is not valid JSON: ") + e.what());
    }
  }
  if (name == "normal") return madstat::IidNormal{0.0, 1.0};
  if (name == "exponential") return madstat::IidExponential{1.0};
  if (name == "three-point") {
    return madstat::IidDiscrete{{{-1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}}};
  }
  if (name == "pareto") return madstat::IidParetoSymmetric{alpha, p, xm};
  if (name == "student-t") return madstat::IidStudentT{dof};
  throw madstat::ConfigError("--generator must be normal, exponential, three-point, pareto, "
                             "student-t or a JSON generator object");
}

madstat::StableScaleConvention parse_scale(const std::string& s) {
  if (s == "formula") return madstat::StableScaleConvention::formula;
  if (s == "tail-matched") return madstat::StableScaleConvention::tail_matched;
  throw madstat::ConfigError("--stable-scale must be formula or tail-matched");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean absolute deviation: estimation, expansion and limit-law verification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML key-value file");

  std::string out;
  std::uint64_t seed = madstat::kDefaultSeed;

  // estimate
  InputOptions est_in;
  auto* estimate = app.add_subcommand("estimate", "Sample MAD and sign balance of a column");
  add_input_options(estimate, est_in, true);
  estimate->add_option("--out", out, "Write the JSON report here instead of stdout");

  // ci
  InputOptions ci_in;
  std::string regime;
  std::string atom = "no";
  double level = 95.0;
  std::optional<double> ci_mu;
  std::string bandwidth = "auto";
  std::string kernel = "bartlett";
  std::optional<double> alpha;
  double p = 0.5;
  double xm = 1.0;
  std::size_t draws = 100'000;
  std::string stable_scale = "formula";
  auto* ci = app.add_subcommand("ci", "Regime-aware confidence interval for theta");
  add_input_options(ci, ci_in, true);
  ci->add_option("--regime", regime, "Declared regime")
      ->required()
      ->check(CLI::IsMember({"iid", "mixing", "stable"}));
  ci->add_option("--atom", atom, "Declared atom at the mean")
      ->check(CLI::IsMember({"yes", "no"}))
      ->capture_default_str();
  ci->add_option("--level", level, "Confidence level in percent")->capture_default_str();
  ci->add_option("--mu", ci_mu, "Centre for the sign balance / atom location");
  ci->add_option("--bandwidth", bandwidth, "Long-run bandwidth: auto or an integer")
      ->capture_default_str();
  ci->add_option("--kernel", kernel, "Lag window: bartlett or truncated")->capture_default_str();
  ci->add_option("--alpha", alpha, "Tail index for the stable regime");
  ci->add_option("--p", p, "Right-tail balance for the stable regime")->capture_default_str();
  ci->add_option("--xm", xm, "Tail scale for the stable regime")->capture_default_str();
  ci->add_option("--draws", draws, "Simulated limit draws")->capture_default_str();
  ci->add_option("--stable-scale", stable_scale, "formula or tail-matched")
      ->capture_default_str();
  ci->add_option("--seed", seed, "Random seed")->capture_default_str();
  ci->add_option("--out", out, "Write the JSON report here instead of stdout");

  // mc-verify
  std::string study_file;
  std::optional<unsigned> threads;
  auto* verify = app.add_subcommand("mc-verify", "Monte Carlo check of a limit law");
  verify->add_option("study", study_file, "JSON study configuration")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--threads", threads, "Worker threads (results do not depend on it)");
  verify->add_option("--out", out,
                     "JSON report path; <stem>.study.csv and <stem>.reference.csv are "
                     "written beside it");

  // expansion-check
  InputOptions exp_in;
  double exp_mu = 0.0;
  std::string generator;
  std::size_t n = 1000;
  std::optional<double> b;
  double gen_alpha = 1.5;
  double dof = 5.0;
  auto* expansion = app.add_subcommand("expansion-check", "Exact decomposition of MAD_n - MAD~_n");
  add_input_options(expansion, exp_in, false);
  expansion->add_option("--mu", exp_mu, "Population mean")->required();
  expansion->add_option("--generator", generator,
                        "normal | exponential | three-point | pareto | student-t | JSON object");
  expansion->add_option("--n", n, "Sample size for --generator")->capture_default_str();
  expansion->add_option("--alpha", gen_alpha, "Pareto tail index")->capture_default_str();
  expansion->add_option("--p", p, "Pareto right-tail balance")->capture_default_str();
  expansion->add_option("--xm", xm, "Pareto scale")->capture_default_str();
  expansion->add_option("--dof", dof, "Student t degrees of freedom")->capture_default_str();
  expansion->add_option("--b", b, "Population Pr[X<mu] - Pr[X>mu], if known");
  expansion->add_option("--seed", seed, "Random seed")->capture_default_str();
  expansion->add_option("--out", out, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (estimate->parsed()) {
      emit(madstat::cmd_estimate(load(est_in)), out);
    } else if (ci->parsed()) {
      madstat::CiOptions options;
      options.regime = madstat::parse_regime(regime);
      options.atom = atom == "yes";
      options.level = level;
      options.mu = ci_mu;
      options.window = parse_window(bandwidth, kernel);
      options.seed = seed;
      options.limit_draws = draws;
      options.scale_convention = parse_scale(stable_scale);
      if (options.regime == madstat::Regime::stable) {
        if (!alpha) throw madstat::ConfigError("--regime stable requires --alpha");
        madstat::TailModel tail{*alpha, p, xm, madstat::SlowVariation::constant};
        try {
          tail.validate();
        } catch (const madstat::DomainError& e) {
          throw madstat::ConfigError(e.what());
        }
        options.tail = tail;
      }
      emit(madstat::cmd_ci(load(ci_in), options), out);
    } else if (verify->parsed()) {
      madstat::McVerifyConfig config = madstat::load_mc_verify_config(study_file);
      if (threads) config.study.threads = *threads;
      const madstat::McVerifyOutcome outcome = madstat::cmd_mc_verify(config);
      emit(outcome.report, out);
      if (!out.empty()) {
        const fs::path base = fs::path(out).replace_extension();
        madstat::write_csv_column(base.string() + ".study.csv", "normalized_statistic",
                                  outcome.study.results);
        madstat::write_csv_column(base.string() + ".reference.csv", "reference",
                                  outcome.reference.values());
      }
    } else if (expansion->parsed()) {
      madstat::Series sample = [&] {
        if (!exp_in.input.empty()) {
          if (!generator.empty()) {
            throw madstat::ConfigError("use either --input or --generator, not both");
          }
          return load(exp_in);
        }
        if (generator.empty()) throw madstat::ConfigError("--input or --generator is required");
        return madstat::generate(named_generator(generator, gen_alpha, p, xm, dof), n, seed);
      }();
      emit(madstat::cmd_expansion_check(sample, exp_mu, b), out);
    }
  } catch (const madstat::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const madstat::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const madstat::RegimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
