#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "madstat/expansion.hpp"
#include "madstat/generators.hpp"
#include "madstat/gof.hpp"
#include "madstat/limit_laws.hpp"
#include "madstat/longrun.hpp"
#include "madstat/mad_core.hpp"
#include "madstat/study.hpp"
#include "madstat/tail.hpp"

namespace madstat {

// ---- CSV -----------------------------------------------------------------

// `column` is a header name, or a 0-based index. Lines that are entirely
// empty are skipped; any other empty or non-numeric cell in the column is an
// error naming its 1-based line number.
Series parse_csv_column(std::istream& in, const std::string& column,
                        bool has_header, const std::string& source = "input");
Series read_csv_column(const std::filesystem::path& path,
                       const std::string& column, bool has_header);

// Single-column CSV with a header line, values written with 17 significant
// digits so that re-reading reproduces them exactly.
void write_csv_column(std::ostream& out, const std::string& header,
                      std::span<const double> values);
void write_csv_column(const std::filesystem::path& path,
                      const std::string& header,
                      std::span<const double> values);

std::string format_double(double x);

// ---- JSON ----------------------------------------------------------------

void to_json(nlohmann::json& j, const ExpansionReport& r);
void to_json(nlohmann::json& j, const SignBalance& b);
void to_json(nlohmann::json& j, const Cov2& c);
void to_json(nlohmann::json& j, const GaussianFunctionalParams& p);
void to_json(nlohmann::json& j, const StableParams& p);
void to_json(nlohmann::json& j, const LimitModel& m);
void to_json(nlohmann::json& j, const GofReport& r);
void to_json(nlohmann::json& j, const TailModel& t);
void from_json(const nlohmann::json& j, TailModel& t);
void to_json(nlohmann::json& j, const LagWindowSpec& w);
void from_json(const nlohmann::json& j, LagWindowSpec& w);

// Generators use {"kind": "...", ...}; ar1/ma1 nest an "innovation" object.
void to_json(nlohmann::json& j, const GeneratorSpec& g);
void from_json(const nlohmann::json& j, GeneratorSpec& g);

void to_json(nlohmann::json& j, const StudyConfig& c);
void from_json(const nlohmann::json& j, StudyConfig& c);
// Configuration, centering and results; wall time is left out so that the
// output is a pure function of the configuration.
void to_json(nlohmann::json& j, const StudyResult& r);

}  // namespace madstat
