#pragma once

#include <string>

#include <json.hpp>

#include "qam/bounds.hpp"
#include "qam/search.hpp"

namespace qam {

/// First line of every CSV report.
inline constexpr const char* kCsvVersionLine = "# qam-csv v1";

void to_json(nlohmann::json& j, const NormEstimate& e);
void from_json(const nlohmann::json& j, NormEstimate& e);

/// Fields: bound_name, value, raw_value (null when infinite), hypotheses_ok,
/// symmetrized, capped, details[{label, kind, value, refinement_error, grid_size}].
void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

void to_json(nlohmann::json& j, const RhoEstimate& r);
void from_json(const nlohmann::json& j, RhoEstimate& r);

void to_json(nlohmann::json& j, const ConvergenceReport& r);

std::string bound_csv_header();
std::string to_csv_row(const BoundReport& r);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace qam
