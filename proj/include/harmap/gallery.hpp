#pragma once

// Closed-form example maps, looked up by name. All roots are principal
// branches.

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "harmap/core.hpp"

namespace harmap::gallery {

using Params = std::map<std::string, double>;

struct EntryInfo {
  std::string name;
  std::vector<std::string> params;
  std::string formula;
  std::string provenance;
};

/// Stable, documented ordering.
inline const std::vector<EntryInfo>& list() {
  static const std::vector<EntryInfo> entries = {
      {"identity", {}, "f(z) = z", "trivial univalent map"},
      {"cayley", {}, "f(z) = z/(1-z)", "convex map onto the half-plane Re w > -1/2"},
      {"koebe", {}, "f(z) = z/(1-z)^2", "extremal starlike map of class S"},
      {"h0", {}, "h0(z) = z + z^2/2", "Re h0' > 0 on the disk, hence univalent"},
      {"f_k", {"k"}, "f_k(z) = h0(z) + k conj(h0(z)), 0 <= k < 1",
       "univalent, yet the close-to-convexity sufficient condition holds only for k = 0"},
      {"h1", {}, "h1(z) = ((1+g(z))/(1-g(z)))^2, g(z) = sqrt(1 - 2/(1 + sqrt(3 - 8z/(1+z)^2)))",
       "conformal onto (C minus (-inf,-1]) minus the closed unit disk; "
       "not close-to-convex (stated, not checked)"},
      {"h_r", {"r"}, "h_r(z) = h1(r z), 0 < r < 1", "dilation of h1"},
      {"F_eps", {"r", "eps"}, "F_eps(z) = h_r(z) + eps conj(z)",
       "perturbation to which the epsilon-budget construction applies"},
      {"f_eps", {"r", "eps"}, "f_eps(z) = (1+eps) h_r(z) + eps conj(z)",
       "f_eps = h_r + eps(h_r + conj z); univalent for eps < eps0/(1-eps0)"},
  };
  return entries;
}

namespace detail {

inline AnalyticFunction cayley() {
  return {[](Complex z) { return z / (1.0 - z); },
          [](Complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); }, 1.0, "z/(1-z)"};
}

inline AnalyticFunction koebe() {
  return {[](Complex z) { return z / ((1.0 - z) * (1.0 - z)); },
          [](Complex z) { return (1.0 + z) / std::pow(1.0 - z, 3); }, 1.0, "z/(1-z)^2"};
}

inline AnalyticFunction h0() {
  return {[](Complex z) { return z + 0.5 * z * z; }, [](Complex z) { return 1.0 + z; }, 1.0,
          "z + z^2/2"};
}

/// Argument of the inner square root of h1; its image avoids (-inf, 0].
inline Complex h1_radicand(Complex z) { return 3.0 - 8.0 * z / ((1.0 + z) * (1.0 + z)); }

inline Complex h1_value(Complex z) {
  const Complex s = std::sqrt(h1_radicand(z));
  const Complex g = std::sqrt(1.0 - 2.0 / (1.0 + s));
  const Complex q = (1.0 + g) / (1.0 - g);
  return q * q;
}

/// Chain rule through u = 8z/(1+z)^2, s = sqrt(3-u), t = 2/(1+s), g = sqrt(1-t).
inline Complex h1_derivative(Complex z) {
  const Complex du = 8.0 * (1.0 - z) / std::pow(1.0 + z, 3);
  const Complex s = std::sqrt(h1_radicand(z));
  const Complex ds = -du / (2.0 * s);
  const Complex dt = -2.0 * ds / ((1.0 + s) * (1.0 + s));
  const Complex g = std::sqrt(1.0 - 2.0 / (1.0 + s));
  const Complex dg = -dt / (2.0 * g);
  return 4.0 * (1.0 + g) / std::pow(1.0 - g, 3) * dg;
}

/// Fails loudly if the radicand of h1 meets the branch cut inside |z| <= 0.999.
inline void verify_h1_branch() {
  for (int i = 1; i <= 16; ++i) {
    const double rho = 0.999 * i / 16.0;
    for (int j = 0; j < 256; ++j) {
      const Complex u = h1_radicand(std::polar(rho, kTwoPi * (j + 0.5) / 256.0));
      if (u.real() <= 0.0 && std::abs(u.imag()) <= 1e-12) {
        throw Error("gallery h1: radicand crosses the principal branch cut");
      }
    }
  }
}

inline AnalyticFunction h1() {
  static const bool checked = (verify_h1_branch(), true);
  (void)checked;
  return {h1_value, h1_derivative, 1.0, "h1"};
}

inline double require(const Params& params, const std::string& name, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw LookupError("gallery " + name + ": missing parameter '" + key + "'");
  return it->second;
}

inline void validate_fd(const HarmonicMap& map) {
  std::array<Complex, 8> points{};
  for (std::size_t k = 0; k < points.size(); ++k) {
    points[k] = std::polar(0.9 * map.domain_radius() * (0.2 + 0.1 * static_cast<double>(k)),
                           kTwoPi * (static_cast<double>(k) + 0.3) / 8.0);
  }
  if (derivative_mismatch(map.h(), points) > 1e-4 || derivative_mismatch(map.g(), points) > 1e-4) {
    throw Error("gallery " + map.label() + ": derivative fails finite-difference validation");
  }
}

}  // namespace detail

inline HarmonicMap get(const std::string& name, const Params& params = {}) {
  using detail::require;
  auto build = [&]() -> HarmonicMap {
    if (name == "identity") return HarmonicMap(AnalyticFunction::identity(), name);
    if (name == "cayley") return HarmonicMap(detail::cayley(), name);
    if (name == "koebe") return HarmonicMap(detail::koebe(), name);
    if (name == "h0") return HarmonicMap(detail::h0(), name);
    if (name == "f_k") {
      const double k = require(params, name, "k");
      if (!(k >= 0.0 && k < 1.0)) throw LookupError("gallery f_k: k must lie in [0, 1)");
      const auto h = detail::h0();
      // k = 0 keeps the co-analytic part flagged as identically zero
      auto g = k == 0.0 ? AnalyticFunction::zero()
                        : AnalyticFunction::combine(k, h, 0.0, AnalyticFunction::zero(), {},
                                                    "k h0");
      return HarmonicMap(h, g, name);
    }
    if (name == "h1") return HarmonicMap(detail::h1(), name);
    const double r = require(params, name, "r");
    if (!(r > 0.0 && r < 1.0)) throw LookupError("gallery " + name + ": r must lie in (0, 1)");
    const auto hr = detail::h1().rescaled(r);
    if (name == "h_r") return HarmonicMap(hr, name);
    const double eps = require(params, name, "eps");
    if (!std::isfinite(eps)) throw LookupError("gallery " + name + ": eps must be finite");
    const auto conj_part = AnalyticFunction::combine(eps, AnalyticFunction::identity(), 0.0,
                                                     AnalyticFunction::zero(), {}, "eps z");
    if (name == "F_eps") return HarmonicMap(hr, conj_part, name);
    if (name == "f_eps") {
      const auto analytic = AnalyticFunction::combine(1.0 + eps, hr, 0.0, AnalyticFunction::zero(),
                                                      {}, "(1+eps) h_r");
      return HarmonicMap(analytic, conj_part, name);
    }
    throw LookupError("gallery: unknown map '" + name + "'");
  };
  auto map = build();
  detail::validate_fd(map);
  return map;
}

}  // namespace harmap::gallery
