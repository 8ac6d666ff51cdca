#pragma once

// The distortion constant C(r) bounding |f(z2) - f(z1)| / |z2 - z1| from below
// on circles |z| = r, and the ingredients it is assembled from.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "harmap/core.hpp"
#include "harmap/report.hpp"

namespace harmap {

/// Order alpha of the class the map is assumed to belong to.
struct OrderParam {
  enum class Provenance { AnalyticCase, HarmonicDefault, User };

  double alpha;
  Provenance provenance;

  /// ord S = 2.
  static OrderParam analytic_case() { return {2.0, Provenance::AnalyticCase}; }
  /// 3 is only the known lower bound for ord S_H; the true order is unknown.
  static OrderParam harmonic_default() { return {3.0, Provenance::HarmonicDefault}; }
  static OrderParam user(double alpha) {
    if (!(alpha >= 1.0)) throw PreconditionError("order: alpha must be at least 1");
    return {alpha, Provenance::User};
  }
  static OrderParam for_map(const HarmonicMap& f) {
    return f.is_analytic() ? analytic_case() : harmonic_default();
  }
};

inline std::string to_string(OrderParam::Provenance p) {
  switch (p) {
    case OrderParam::Provenance::AnalyticCase: return "analytic-case";
    case OrderParam::Provenance::HarmonicDefault: return "harmonic-default";
    case OrderParam::Provenance::User: return "user";
  }
  return "user";
}

/// C(r) = (1/(4 alpha r)) x^alpha (1 - x^{2 alpha}), x = (1-r)/(1+r); C(0) = 1.
inline double c_of_r(double r, const OrderParam& order) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("c_of_r: r must lie in [0, 1)");
  if (r == 0.0) return 1.0;
  const double a = order.alpha;
  // log x via log1p and 1 - x^{2a} via expm1 keep full precision as r -> 0
  const double log_x = std::log1p(-r) - std::log1p(r);
  const double one_minus = -std::expm1(2.0 * a * log_x);
  return std::exp(a * log_x) * one_minus / (4.0 * a * r);
}

/// psi(x) = (1 - x^alpha)/(1 - x), with the limit alpha at x = 1.
inline double psi(double x, double alpha) {
  if (x == 1.0) return alpha;
  return (1.0 - std::pow(x, alpha)) / (1.0 - x);
}

/// Lower bound (1-|z|)^{alpha-1} / (1+|z|)^{alpha+1} for |h'(z)| - |g'(z)|.
inline double sheil_small_lower(double z_abs, double alpha) {
  return std::pow(1.0 - z_abs, alpha - 1.0) / std::pow(1.0 + z_abs, alpha + 1.0);
}

/// LHS - RHS of
///   1 - ((1-|t|)/(1+|t|))^alpha >= (|z2-z1|/(2r)) [1 - ((1-r)/(1+r))^{2 alpha}],
/// t = (z2 - z1)/(1 - conj(z1) z2), for two points on |z| = r.
inline double star_inequality_check(Complex z1, Complex z2, double r, double alpha) {
  if (std::abs(std::abs(z1) - std::abs(z2)) > 1e-12) {
    throw PreconditionError("star_inequality_check: |z1| and |z2| differ");
  }
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("star_inequality_check: r must lie in (0, 1)");
  const Complex diff = z2 - z1;
  const double tau = std::abs(diff / (1.0 - std::conj(z1) * z2));
  const double lhs = -std::expm1(alpha * std::log1p(-2.0 * tau / (1.0 + tau)));
  const double x = (1.0 - r) / (1.0 + r);
  const double rhs = std::abs(diff) / (2.0 * r) * -std::expm1(2.0 * alpha * std::log(x));
  return lhs - rhs;
}

/// min over pairs of n equispaced points on |z| = r of |f(zi) - f(zj)|/|zi - zj|,
/// minus (|h'(0)| - |g'(0)|) C(r). Holds when the margin is nonnegative.
inline CheckReport check_pairwise_bound(const HarmonicMap& f, double r, const OrderParam& order,
                                        int n = 128) {
  if (n < 8) throw PreconditionError("check_pairwise_bound: n must be at least 8");
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("check_pairwise_bound: r must lie in (0, 1)");
  std::vector<Complex> z(static_cast<std::size_t>(n));
  std::vector<Complex> w(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] = std::polar(r, kTwoPi * static_cast<double>(k) / n);
    w[k] = eval_map(f, z[k]);
  }
  double min_ratio = std::numeric_limits<double>::infinity();
  Complex witness{};
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double ratio = std::abs(w[i] - w[j]) / std::abs(z[i] - z[j]);
      if (ratio < min_ratio) {
        min_ratio = ratio;
        witness = z[i];
      }
    }
  }
  const double scale =
      std::abs(f.h().derivative(Complex{})) - std::abs(f.g().derivative(Complex{}));
  const double c = c_of_r(r, order);
  const double bound = scale * c;

  CheckReport report;
  report.criterion = "pairwise_bound";
  report.margin = min_ratio - bound;
  report.verdict = report.margin >= 0.0 ? Verdict::HoldsOnSamples : Verdict::Violated;
  report.witness = witness;
  report.metadata = {{"r", r},         {"n", n},          {"alpha", order.alpha},
                     {"C_r", c},       {"bound", bound},  {"min_ratio", min_ratio}};
  report.notes.push_back("alpha provenance: " + to_string(order.provenance));
  return report;
}

}  // namespace harmap
