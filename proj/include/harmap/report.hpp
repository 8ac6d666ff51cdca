#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmap/core.hpp"

namespace harmap {

inline constexpr int kSchemaVersion = 1;

enum class Verdict { HoldsOnSamples, Violated, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnSamples: return "holds-on-samples";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Outcome of scanning a criterion over a finite sample set. A "holds" verdict
/// certifies the strict inequality at the samples only.
struct CheckReport {
  std::string criterion;
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;
  Complex witness{};
  std::optional<double> gamma;
  /// gamma(epsilon) for each sampled direction, when the criterion has one.
  std::vector<double> gamma_by_direction;
  std::optional<GridSpec> grid;
  /// Resolution and parameter echo (n_points, tol, alpha, ...).
  std::map<std::string, double> metadata;
  std::vector<std::string> notes;

  bool holds() const { return verdict == Verdict::HoldsOnSamples; }
};

inline nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json grid_to_json(const GridSpec& grid) {
  return {{"n_radial", grid.n_radial}, {"n_angular", grid.n_angular}, {"r_max", grid.r_max}};
}

inline nlohmann::json to_json(const CheckReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["criterion"] = report.criterion;
  j["verdict"] = to_string(report.verdict);
  j["margin"] = report.margin;
  j["witness"] = complex_to_json(report.witness);
  j["gamma"] = report.gamma ? nlohmann::json(*report.gamma) : nlohmann::json(nullptr);
  j["grid"] = report.grid ? grid_to_json(*report.grid) : nlohmann::json(nullptr);
  if (!report.gamma_by_direction.empty()) j["gamma_by_direction"] = report.gamma_by_direction;
  if (!report.metadata.empty()) j["metadata"] = report.metadata;
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j;
}

namespace detail {

inline CheckReport inconclusive(std::string criterion, std::optional<GridSpec> grid,
                                Complex where, const std::string& why) {
  CheckReport r;
  r.criterion = std::move(criterion);
  r.verdict = Verdict::Inconclusive;
  r.margin = 0.0;
  r.witness = where;
  r.grid = grid;
  r.notes.push_back("evaluation failed: " + why);
  return r;
}

inline Verdict strict_verdict(double margin) {
  return margin > 0.0 ? Verdict::HoldsOnSamples : Verdict::Violated;
}

}  // namespace detail

}  // namespace harmap
