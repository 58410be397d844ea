#include "qam/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace qam {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void to_json(json& j, const NormEstimate& e) {
  j = json{{"kind", std::string(to_string(e.kind))},
           {"value", e.value},
           {"refinement_error", e.refinement_error},
           {"grid_size", e.grid_size}};
}

void from_json(const json& j, NormEstimate& e) {
  e.kind = parse_norm_kind(j.at("kind").get<std::string>());
  e.value = j.at("value").get<double>();
  e.refinement_error = j.at("refinement_error").get<double>();
  e.grid_size = j.at("grid_size").get<std::size_t>();
}

void to_json(json& j, const BoundReport& r) {
  json details = json::array();
  for (const auto& d : r.details) {
    json e = d.estimate;
    e["label"] = d.label;
    details.push_back(std::move(e));
  }
  j = json{{"bound_name", std::string(to_string(r.name))},
           {"value", r.value},
           {"raw_value", std::isfinite(r.raw_value) ? json(r.raw_value) : json(nullptr)},
           {"hypotheses_ok", r.hypotheses_ok},
           {"symmetrized", r.symmetrized},
           {"capped", r.capped},
           {"details", std::move(details)}};
}

void from_json(const json& j, BoundReport& r) {
  r.name = parse_bound_name(j.at("bound_name").get<std::string>());
  r.value = j.at("value").get<double>();
  const auto& raw = j.at("raw_value");
  r.raw_value = raw.is_null() ? std::numeric_limits<double>::infinity() : raw.get<double>();
  r.hypotheses_ok = j.at("hypotheses_ok").get<bool>();
  r.symmetrized = j.at("symmetrized").get<bool>();
  r.capped = j.value("capped", false);
  r.details.clear();
  for (const auto& d : j.at("details")) {
    r.details.push_back({d.at("label").get<std::string>(), d.get<NormEstimate>()});
  }
}

void to_json(json& j, const RhoEstimate& r) {
  j = json{{"value", r.value},
           {"witness_points", r.witness_points},
           {"witness_weights", r.witness_weights},
           {"evaluations", r.evaluations}};
}

void from_json(const json& j, RhoEstimate& r) {
  r.value = j.at("value").get<double>();
  r.witness_points = j.at("witness_points").get<std::vector<double>>();
  r.witness_weights = j.at("witness_weights").get<std::vector<double>>();
  r.evaluations = j.at("evaluations").get<std::size_t>();
}

void to_json(json& j, const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"generator", row.generator}, {"b_deviation", row.b_deviation}, {"rho", row.rho}});
  }
  j = json{{"limit", r.limit}, {"interval", {r.lo, r.hi}}, {"grid", r.grid}, {"rows", rows}};
}

std::string bound_csv_header() {
  return "bound_name,value,raw_value,hypotheses_ok,symmetrized,capped";
}

std::string to_csv_row(const BoundReport& r) {
  return std::string(to_string(r.name)) + "," + format_double(r.value) + "," +
         format_double(r.raw_value) + "," + (r.hypotheses_ok ? "1" : "0") + "," +
         (r.symmetrized ? "1" : "0") + "," + (r.capped ? "1" : "0");
}

}  // namespace qam
