#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kwp/descriptive.hpp"
#include "kwp/estimation.hpp"
#include "kwp/mc_study.hpp"
#include "kwp/model_selection.hpp"
#include "kwp/params.hpp"

namespace kwp {

using json = nlohmann::json;

/// JSON with snake_case keys.  Non-finite numbers are written as the strings
/// "Infinity", "-Infinity" and "NaN" so that every value round-trips.
json number_to_json(double v);
double number_from_json(const json& j);

void to_json(json& j, const KwPParams& p);
void from_json(const json& j, KwPParams& p);
void to_json(json& j, const StartSummary& s);
void from_json(const json& j, StartSummary& s);
void to_json(json& j, const FitResult& f);
void from_json(const json& j, FitResult& f);
void to_json(json& j, const ComparisonRow& r);
void from_json(const json& j, ComparisonRow& r);
void to_json(json& j, const ComparisonReport& r);
void from_json(const json& j, ComparisonReport& r);
void to_json(json& j, const DescriptiveStats& d);
void from_json(const json& j, DescriptiveStats& d);
void to_json(json& j, const ParameterSummary& p);
void to_json(json& j, const SizeSummary& s);
/// Summary tables only; per-replication records go to study_records_csv.
void to_json(json& j, const StudyResult& r);

/// 17 significant digits, the shortest width that round-trips a double.
std::string format_double(double v);

/// Columns: model, estimates, SEs, AIC, BIC, CAIC, K-S, -2l.
std::string fit_text(const FitResult& f);
std::string comparison_text(const ComparisonReport& r);
std::string describe_text(const DescriptiveStats& d);

std::string study_records_csv(const StudyResult& r);

}  // namespace kwp
