#include "madstat/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <variant>

#include "madstat/error.hpp"

namespace madstat {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// RFC 4180-style split of one line; quoted cells may contain commas and "".
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

bool all_empty(const std::vector<std::string>& cells) {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.empty(); });
}

std::optional<std::size_t> parse_index(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* first = s.data();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// JSON field helpers that turn library exceptions into ConfigError naming the
// field.
double number_field(const json& j, const char* field, const std::string& ctx) {
  if (!j.contains(field)) throw ConfigError(ctx + "." + field + " is required");
  const json& v = j.at(field);
  if (!v.is_number()) throw ConfigError(ctx + "." + field + " must be a number");
  return v.get<double>();
}

double number_field_or(const json& j, const char* field, const std::string& ctx,
                       double fallback) {
  return j.contains(field) ? number_field(j, field, ctx) : fallback;
}

std::size_t count_field_or(const json& j, const char* field, const std::string& ctx,
                           std::size_t fallback) {
  if (!j.contains(field)) return fallback;
  const json& v = j.at(field);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError(ctx + "." + field + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::uint64_t seed_field_or(const json& j, const char* field, const std::string& ctx,
                            std::uint64_t fallback) {
  if (!j.contains(field)) return fallback;
  const json& v = j.at(field);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const auto value = std::stoull(s, &used, 0);
      if (used == s.size()) return value;
    } catch (const std::exception&) {
    }
    throw ConfigError(ctx + "." + field + " is not a valid seed");
  }
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError(ctx + "." + field + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string string_field(const json& j, const char* field, const std::string& ctx) {
  if (!j.contains(field)) throw ConfigError(ctx + "." + field + " is required");
  const json& v = j.at(field);
  if (!v.is_string()) throw ConfigError(ctx + "." + field + " must be a string");
  return v.get<std::string>();
}

GeneratorSpec generator_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError(ctx + " must be an object");
  const std::string kind = string_field(j, "kind", ctx);
  GeneratorSpec out;
  if (kind == "iid_normal") {
    out = IidNormal{number_field_or(j, "mu", ctx, 0.0), number_field_or(j, "sd", ctx, 1.0)};
  } else if (kind == "iid_exponential") {
    out = IidExponential{number_field_or(j, "rate", ctx, 1.0)};
  } else if (kind == "iid_discrete") {
    if (!j.contains("atoms") || !j.at("atoms").is_array()) {
      throw ConfigError(ctx + ".atoms must be an array");
    }
    IidDiscrete d;
    for (const json& a : j.at("atoms")) {
      if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
        d.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
      } else if (a.is_object()) {
        d.atoms.push_back({number_field(a, "value", ctx + ".atoms[]"),
                           number_field(a, "prob", ctx + ".atoms[]")});
      } else {
        throw ConfigError(ctx + ".atoms entries must be [value, prob] or {value, prob}");
      }
    }
    out = std::move(d);
  } else if (kind == "iid_pareto_symmetric") {
    out = IidParetoSymmetric{number_field(j, "alpha", ctx), number_field_or(j, "p", ctx, 0.5),
                             number_field_or(j, "x_m", ctx, 1.0)};
  } else if (kind == "iid_student_t") {
    out = IidStudentT{number_field(j, "dof", ctx)};
  } else if (kind == "ar1" || kind == "ma1") {
    if (!j.contains("innovation")) throw ConfigError(ctx + ".innovation is required");
    GeneratorSpec innovation = generator_from_json(j.at("innovation"), ctx + ".innovation");
    if (kind == "ar1") {
      out = make_ar1(number_field(j, "phi", ctx), std::move(innovation));
    } else {
      out = make_ma1(number_field(j, "theta", ctx), std::move(innovation));
    }
  } else {
    throw ConfigError(ctx + ".kind '" + kind + "' is not a known generator");
  }
  validate(out);
  return out;
}

}  // namespace

// ---- CSV -----------------------------------------------------------------

Series parse_csv_column(std::istream& in, const std::string& column, bool has_header,
                        const std::string& source) {
  std::optional<std::size_t> index;
  if (!has_header) {
    index = parse_index(column);
    if (!index) {
      throw ConfigError(source + ": column '" + column +
                        "' must be a 0-based index when there is no header");
    }
  }

  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = !has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cells = split_csv_line(line);
    if (all_empty(cells)) continue;

    if (!header_seen) {
      header_seen = true;
      const auto named = std::find(cells.begin(), cells.end(), column);
      if (named != cells.end()) {
        index = static_cast<std::size_t>(named - cells.begin());
      } else if (auto numeric = parse_index(column); numeric && *numeric < cells.size()) {
        index = numeric;
      } else {
        throw ConfigError(source + ": column '" + column + "' not found in header");
      }
      continue;
    }

    if (*index >= cells.size()) {
      throw ConfigError(source + ": line " + std::to_string(line_no) + " has no column " +
                        std::to_string(*index));
    }
    const std::string& cell = cells[*index];
    if (cell.empty()) {
      throw ConfigError(source + ": line " + std::to_string(line_no) + " has an empty cell");
    }
    const auto value = parse_number(cell);
    if (!value) {
      throw ConfigError(source + ": line " + std::to_string(line_no) + " value '" + cell +
                        "' is not a finite number");
    }
    values.push_back(*value);
  }
  if (values.empty()) throw ConfigError(source + ": column '" + column + "' has no values");
  return Series(std::move(values));
}

Series read_csv_column(const std::filesystem::path& path, const std::string& column,
                       bool has_header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file '" + path.string() + "'");
  return parse_csv_column(in, column, has_header, path.string());
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv_column(std::ostream& out, const std::string& header,
                      std::span<const double> values) {
  out << header << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

void write_csv_column(const std::filesystem::path& path, const std::string& header,
                      std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  write_csv_column(out, header, values);
}

// ---- JSON ----------------------------------------------------------------

void to_json(json& j, const ExpansionReport& r) {
  j = json{{"n", r.n},
           {"mean_gap", r.mean_gap},
           {"lhs", r.lhs},
           {"linear_term", r.linear_term},
           {"atom_term", r.atom_term},
           {"remainder", r.remainder},
           {"k_count", r.k_count},
           {"population_linear_coeff", r.population_linear_coeff}};
}

void to_json(json& j, const SignBalance& b) {
  j = json{{"b_hat", b.b_hat},
           {"p_less", b.p_less},
           {"p_eq", b.p_eq},
           {"p_greater", b.p_greater}};
}

void to_json(json& j, const Cov2& c) { j = json::array({{c.yy, c.yz}, {c.yz, c.zz}}); }

void to_json(json& j, const GaussianFunctionalParams& p) {
  j = json{{"regime", "gaussian"}, {"a", p.a}, {"p_eq", p.p_eq}, {"cov", p.cov}};
}

void to_json(json& j, const StableParams& p) {
  j = json{{"regime", "stable"}, {"alpha", p.alpha},   {"sigma", p.sigma},
           {"p", p.p},           {"p_less", p.p_less}, {"p_greater", p.p_greater}};
}

void to_json(json& j, const LimitModel& m) {
  std::visit([&j](const auto& params) { to_json(j, params); }, m.params);
}

void to_json(json& j, const GofReport& r) {
  json table = json::array();
  for (const auto& row : r.quantile_table) {
    table.push_back({{"level", row.level},
                     {"sample_q", row.sample_q},
                     {"reference_q", row.reference_q},
                     {"abs_gap", row.abs_gap}});
  }
  j = json{{"ks_distance", r.ks_distance},
           {"quantile_table", std::move(table)},
           {"n_sample", r.n_sample},
           {"n_reference", r.n_reference}};
}

void to_json(json& j, const TailModel& t) {
  j = json{{"alpha", t.alpha},
           {"p", t.p},
           {"scale", t.scale},
           {"slow_variation", t.slow == SlowVariation::log ? "log" : "constant"}};
}

void from_json(const json& j, TailModel& t) {
  const std::string ctx = "tail";
  if (!j.is_object()) throw ConfigError(ctx + " must be an object");
  t.alpha = number_field(j, "alpha", ctx);
  t.p = number_field_or(j, "p", ctx, 0.5);
  t.scale = number_field_or(j, "scale", ctx, 1.0);
  t.slow = SlowVariation::constant;
  if (j.contains("slow_variation")) {
    const auto s = string_field(j, "slow_variation", ctx);
    if (s == "log") {
      t.slow = SlowVariation::log;
    } else if (s != "constant") {
      throw ConfigError(ctx + ".slow_variation must be 'constant' or 'log'");
    }
  }
  try {
    t.validate();
  } catch (const DomainError& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

void to_json(json& j, const LagWindowSpec& w) {
  j = json{{"kernel", w.kernel == LagKernel::bartlett ? "bartlett" : "truncated"}};
  if (w.bandwidth) {
    j["bandwidth"] = *w.bandwidth;
  } else {
    j["bandwidth"] = "auto";
  }
}

void from_json(const json& j, LagWindowSpec& w) {
  const std::string ctx = "window";
  if (!j.is_object()) throw ConfigError(ctx + " must be an object");
  w = LagWindowSpec{};
  if (j.contains("kernel")) {
    const auto k = string_field(j, "kernel", ctx);
    if (k == "bartlett") {
      w.kernel = LagKernel::bartlett;
    } else if (k == "truncated") {
      w.kernel = LagKernel::truncated;
    } else {
      throw ConfigError(ctx + ".kernel must be 'bartlett' or 'truncated'");
    }
  }
  if (j.contains("bandwidth") && !(j.at("bandwidth").is_string() &&
                                   j.at("bandwidth").get<std::string>() == "auto")) {
    w.bandwidth = count_field_or(j, "bandwidth", ctx, 0);
  }
}

void to_json(json& j, const GeneratorSpec& g) {
  std::visit(
      [&j](const auto& law) {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, IidNormal>) {
          j = json{{"kind", "iid_normal"}, {"mu", law.mu}, {"sd", law.sd}};
        } else if constexpr (std::is_same_v<T, IidExponential>) {
          j = json{{"kind", "iid_exponential"}, {"rate", law.rate}};
        } else if constexpr (std::is_same_v<T, IidDiscrete>) {
          json atoms = json::array();
          for (const auto& a : law.atoms) atoms.push_back({{"value", a.value}, {"prob", a.prob}});
          j = json{{"kind", "iid_discrete"}, {"atoms", std::move(atoms)}};
        } else if constexpr (std::is_same_v<T, IidParetoSymmetric>) {
          j = json{{"kind", "iid_pareto_symmetric"},
                   {"alpha", law.alpha},
                   {"p", law.p},
                   {"x_m", law.x_m}};
        } else if constexpr (std::is_same_v<T, IidStudentT>) {
          j = json{{"kind", "iid_student_t"}, {"dof", law.dof}};
        } else if constexpr (std::is_same_v<T, Ar1>) {
          j = json{{"kind", "ar1"}, {"phi", law.phi}, {"innovation", *law.innovation}};
        } else {
          j = json{{"kind", "ma1"}, {"theta", law.theta}, {"innovation", *law.innovation}};
        }
      },
      g.law());
}

void from_json(const json& j, GeneratorSpec& g) { g = generator_from_json(j, "generator"); }

void to_json(json& j, const StudyConfig& c) {
  j = json{{"generator", c.generator},
           {"n", c.n},
           {"reps", c.reps},
           {"rate", c.rate == NormingRate::sqrt_n ? "sqrt_n" : "n_over_an"},
           {"mu_theta_source",
            c.centering == CenteringSource::analytic ? "analytic" : "reference_run"},
           {"seed", c.seed}};
  if (c.tail) j["tail"] = *c.tail;
  if (c.centering == CenteringSource::reference_run) j["reference_length"] = c.reference_length;
}

void from_json(const json& j, StudyConfig& c) {
  const std::string ctx = "study";
  if (!j.is_object()) throw ConfigError(ctx + " must be an object");
  c = StudyConfig{};
  if (!j.contains("generator")) throw ConfigError(ctx + ".generator is required");
  c.generator = generator_from_json(j.at("generator"), ctx + ".generator");
  c.n = count_field_or(j, "n", ctx, c.n);
  c.reps = count_field_or(j, "reps", ctx, c.reps);
  if (j.contains("rate")) {
    const auto r = string_field(j, "rate", ctx);
    if (r == "sqrt_n") {
      c.rate = NormingRate::sqrt_n;
    } else if (r == "n_over_an") {
      c.rate = NormingRate::n_over_an;
    } else {
      throw ConfigError(ctx + ".rate must be 'sqrt_n' or 'n_over_an'");
    }
  }
  if (j.contains("mu_theta_source")) {
    const auto s = string_field(j, "mu_theta_source", ctx);
    if (s == "analytic") {
      c.centering = CenteringSource::analytic;
    } else if (s == "reference_run" || s == "reference-run") {
      c.centering = CenteringSource::reference_run;
    } else {
      throw ConfigError(ctx + ".mu_theta_source must be 'analytic' or 'reference_run'");
    }
  }
  c.seed = seed_field_or(j, "seed", ctx, c.seed);
  if (j.contains("tail")) c.tail = j.at("tail").get<TailModel>();
  c.reference_length = count_field_or(j, "reference_length", ctx, c.reference_length);
  c.threads = static_cast<unsigned>(count_field_or(j, "threads", ctx, 0));
  c.validate();
}

void to_json(json& j, const StudyResult& r) {
  j = json{{"config", r.config},
           {"mu", r.mu},
           {"theta", r.theta},
           {"theta_estimated", r.theta_estimated},
           {"theta_se", r.theta_se},
           {"norming", r.norming},
           {"results", r.results}};
}

}  // namespace madstat
