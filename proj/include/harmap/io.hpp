#pragma once

// JSON forms of function specs, measures and structural parameters.
//
//   function spec: {"type":"named","name":"f_k","params":{"k":0.5}}
//                  {"type":"series","h":[c1,c2,...],"g":[d1,...],"radius":r}
//     series coefficient k multiplies z^(k+1); complex values are [re, im]
//     (a bare number is read as a real value).
//   measure:       {"atoms":[[theta, weight], ...]}
//   params:        {"c":..., "c1":..., "c0":[re, im]}

#include <string>
#include <vector>

#include <json.hpp>

#include "harmap/core.hpp"
#include "harmap/gallery.hpp"
#include "harmap/structural.hpp"

namespace harmap::io {

class ParseError : public Error {
 public:
  using Error::Error;
};

inline Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("expected a complex number as [re, im], got " + j.dump());
}

inline std::vector<Complex> coefficients_from_json(const nlohmann::json& j, const char* key) {
  std::vector<Complex> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw ParseError(std::string("series: '") + key + "' must be an array");
  for (const auto& c : j[key]) out.push_back(complex_from_json(c));
  return out;
}

inline HarmonicMap map_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("function spec must be an object with a string 'type'");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "named") {
    if (!j.contains("name") || !j["name"].is_string()) throw ParseError("named spec needs 'name'");
    gallery::Params params;
    if (j.contains("params")) {
      if (!j["params"].is_object()) throw ParseError("'params' must be an object");
      for (const auto& [key, value] : j["params"].items()) {
        if (!value.is_number()) throw ParseError("parameter '" + key + "' must be a number");
        params[key] = value.get<double>();
      }
    }
    return gallery::get(j["name"].get<std::string>(), params);
  }
  if (type == "series") {
    const double radius = j.value("radius", 1.0);
    auto h = coefficients_from_json(j, "h");
    auto g = coefficients_from_json(j, "g");
    if (h.empty()) throw ParseError("series spec needs a nonempty 'h'");
    try {
      return HarmonicMap(AnalyticFunction::series(std::move(h), radius, "h series"),
                         AnalyticFunction::series(std::move(g), radius, "g series"), "series");
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown function spec type '" + type + "'");
}

inline HarmonicMap map_from_json(const std::string& text) {
  try {
    return map_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline DiscreteMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw ParseError("measure must be an object with an 'atoms' array");
  }
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw ParseError("measure atoms must be [theta, weight] pairs");
    }
    atoms.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return DiscreteMeasure(std::move(atoms));
}

inline StructuralParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("structural params must be an object");
  StructuralParams p;
  p.c = j.value("c", 1.0);
  p.c1 = j.value("c1", 0.0);
  if (j.contains("c0")) p.c0 = complex_from_json(j["c0"]);
  p.validate();
  return p;
}

inline nlohmann::json to_json(const DiscreteMeasure& mu) {
  auto atoms = nlohmann::json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({a.theta, a.weight});
  return {{"atoms", atoms}};
}

}  // namespace harmap::io
