#pragma once

// Univalent harmonic maps manufactured as F(z) = f(r z) + eps * phi(z), with
// phi = p + conj(q) a bounded-derivative perturbation and eps kept below the
// budget (r/A) min{m(r), m(0) C(r)}.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "harmap/core.hpp"
#include "harmap/distortion.hpp"
#include "harmap/parallel.hpp"
#include "harmap/report.hpp"

namespace harmap {

/// Multiplier applied to the raw budget to absorb grid discretization of m and A.
inline constexpr double kBudgetHaircut = 0.99;

struct Perturbation {
  AnalyticFunction p;
  AnalyticFunction q;
  /// Exact sup of |p'| + |q'| over the disk, when the caller knows it.
  std::optional<double> A_closed_form;

  /// phi(z) = conj(z).
  static Perturbation conj_z() { return {AnalyticFunction::zero(), AnalyticFunction::identity(), 1.0}; }
};

struct MEstimate {
  double value;
  Complex witness;
  /// |h'| - |g'| went nonpositive somewhere: f is not sense-preserving there.
  bool sense_violation;
};

struct AEstimate {
  double value;
  double grid_value;
  bool rigorous;
};

struct BudgetReport {
  double r;
  double alpha;
  OrderParam::Provenance alpha_provenance;
  double C_r;
  double m_r;
  double m_0;
  double A;
  /// (r/A) min{m(r), m(0) C(r)} from the estimates.
  double epsilon0_raw;
  /// epsilon0_raw * kBudgetHaircut; the construction threshold.
  double epsilon0;
  bool rigorous;
  std::string rigor_note;
};

struct ConstructionResult {
  HarmonicMap F;
  double epsilon_used;
  double epsilon_budget;
  double m_r;
  double m_0;
  double A_sup;
  double r;
  double alpha_used;
  std::string rigor_note;
};

/// Grid minimum of |h'| - |g'| over |z| <= r, then two local passes around
/// the best point, each on a 9x9 polar patch with a quarter of the previous
/// spacing. Sampling can only overestimate the true minimum.
inline MEstimate estimate_m(const HarmonicMap& f, double r, const GridSpec& grid = {}) {
  if (!(r >= 0.0 && r < 1.0)) throw PreconditionError("estimate_m: r must lie in [0, 1)");
  auto slack = [&](Complex z) {
    return std::abs(f.h().derivative(z)) - std::abs(f.g().derivative(z));
  };
  if (r == 0.0) {
    const double v = slack(Complex{});
    return {v, Complex{}, v <= 0.0};
  }
  if (!(r < f.domain_radius())) throw DomainError("estimate_m: disk |z| <= r leaves the domain");
  GridSpec disk = grid;
  disk.r_max = r;
  disk.validate();
  const auto samples = disk.samples();
  const auto found =
      detail::parallel_argmin(samples.size(), [&](std::size_t i) { return slack(samples[i]); });
  if (found.failure) throw InapplicableError("estimate_m: " + found.failure->message);

  double best = found.value;
  Complex at = samples[found.index];
  double d_rho = r / disk.n_radial;
  double d_theta = kTwoPi / disk.n_angular;
  for (int level = 0; level < 2; ++level) {
    d_rho /= 4.0;
    d_theta /= 4.0;
    const double rho0 = std::abs(at);
    const double theta0 = std::arg(at);
    for (int i = -4; i <= 4; ++i) {
      const double rho = std::clamp(rho0 + i * d_rho, 0.0, r);
      for (int j = -4; j <= 4; ++j) {
        const Complex z = std::polar(rho, theta0 + j * d_theta);
        const double v = slack(z);
        if (v < best) {
          best = v;
          at = z;
        }
      }
    }
  }
  return {best, at, best <= 0.0};
}

/// sup over the disk of |p'| + |q'|: the closed form when supplied, else the
/// maximum over a grid reaching r_max >= 0.99 (an underestimate).
inline AEstimate estimate_A(const Perturbation& phi, const GridSpec& grid = {40, 96, 0.995}) {
  grid.validate();
  if (grid.r_max < 0.99) throw PreconditionError("estimate_A: grid must reach r_max >= 0.99");
  const auto samples = grid.samples();
  const auto found = detail::parallel_argmax(samples.size(), [&](std::size_t i) {
    const double v = std::abs(phi.p.derivative(samples[i])) + std::abs(phi.q.derivative(samples[i]));
    if (!std::isfinite(v)) throw InapplicableError("non-finite derivative");
    return v;
  });
  if (found.failure) {
    throw InapplicableError("estimate_A: A is not finite near the boundary (" +
                            found.failure->message + ")");
  }
  if (phi.A_closed_form) return {*phi.A_closed_form, found.value, true};
  return {found.value, found.value, false};
}

struct BudgetOptions {
  GridSpec m_grid{40, 96, 0.5};  // r_max is replaced by r
  GridSpec a_grid{40, 96, 0.995};
};

inline BudgetReport epsilon_budget(const HarmonicMap& f, const Perturbation& phi, double r,
                                   const OrderParam& order, const BudgetOptions& options = {}) {
  if (!(r > 0.0 && r < 1.0)) throw InapplicableError("epsilon_budget: r must lie in (0, 1)");
  const auto m_r = estimate_m(f, r, options.m_grid);
  const auto m_0 = estimate_m(f, 0.0, options.m_grid);
  if (m_r.value <= 0.0 || m_0.value <= 0.0) {
    throw InapplicableError("epsilon_budget: f is not sense-preserving on |z| <= r");
  }
  const auto A = estimate_A(phi, options.a_grid);
  if (!(A.value > 0.0)) throw InapplicableError("epsilon_budget: A must be positive");
  const double c = c_of_r(r, order);

  BudgetReport b;
  b.r = r;
  b.alpha = order.alpha;
  b.alpha_provenance = order.provenance;
  b.C_r = c;
  b.m_r = m_r.value;
  b.m_0 = m_0.value;
  b.A = A.value;
  b.epsilon0_raw = (r / A.value) * std::min(m_r.value, m_0.value * c);
  b.epsilon0 = kBudgetHaircut * b.epsilon0_raw;
  b.rigorous = A.rigorous && order.provenance == OrderParam::Provenance::AnalyticCase;
  b.rigor_note = "m(r) is a grid estimate (an upper bound on the true minimum); budget scaled by " +
                 std::to_string(kBudgetHaircut) + ". ";
  b.rigor_note += A.rigorous ? "A taken from the supplied closed form. "
                             : "A is a grid maximum and may underestimate the supremum. ";
  b.rigor_note += "alpha = " + std::to_string(order.alpha) + " (" + to_string(order.provenance) + ")";
  if (order.provenance == OrderParam::Provenance::HarmonicDefault) {
    b.rigor_note += "; the true order of S_H may exceed 3, in which case C(r) and the budget are "
                    "overestimates";
  }
  b.rigor_note += ".";
  return b;
}

struct ConstructOptions {
  std::optional<OrderParam> order;  // defaults to OrderParam::for_map(f)
  BudgetOptions budget;
  /// Build even when eps exceeds the budget; recorded in the rigor note.
  bool unsafe = false;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// F(z) = f(r z) + eps (p(z) + conj q(z)), refused unless eps is below the budget.
inline ConstructionResult construct(const HarmonicMap& f, const Perturbation& phi, double r,
                                    double epsilon, const ConstructOptions& options = {}) {
  if (!(epsilon >= 0.0)) throw PreconditionError("construct: epsilon must be nonnegative");
  const OrderParam order = options.order.value_or(OrderParam::for_map(f));
  const auto budget = epsilon_budget(f, phi, r, order, options.budget);
  std::string note = budget.rigor_note;
  if (!(epsilon < budget.epsilon0)) {
    if (!options.unsafe) {
      throw BudgetExceededError("construct: epsilon " + std::to_string(epsilon) +
                                " is not below the budget " + std::to_string(budget.epsilon0));
    }
    note += " UNSAFE: epsilon forced above the budget; univalence is not guaranteed.";
  }
  const auto h = AnalyticFunction::combine(1.0, f.h().rescaled(r), epsilon, phi.p, {}, "h(rz) + eps p");
  const auto g = AnalyticFunction::combine(1.0, f.g().rescaled(r), epsilon, phi.q, {}, "g(rz) + eps q");
  return {HarmonicMap(h, g, "F[" + f.label() + "]"),
          epsilon,
          budget.epsilon0,
          budget.m_r,
          budget.m_0,
          budget.A,
          r,
          order.alpha,
          note};
}

inline nlohmann::json to_json(const BudgetReport& b) {
  return {{"schema_version", kSchemaVersion},
          {"r", b.r},
          {"alpha", b.alpha},
          {"alpha_provenance", to_string(b.alpha_provenance)},
          {"C_r", b.C_r},
          {"m_r", b.m_r},
          {"m_0", b.m_0},
          {"A", b.A},
          {"epsilon0_raw", b.epsilon0_raw},
          {"epsilon0", b.epsilon0},
          {"rigorous", b.rigorous},
          {"rigor_note", b.rigor_note}};
}

inline nlohmann::json to_json(const ConstructionResult& c) {
  return {{"schema_version", kSchemaVersion},
          {"label", c.F.label()},
          {"epsilon_used", c.epsilon_used},
          {"epsilon_budget", c.epsilon_budget},
          {"m_r", c.m_r},
          {"m_0", c.m_0},
          {"A_sup", c.A_sup},
          {"r", c.r},
          {"alpha_used", c.alpha_used},
          {"rigor_note", c.rigor_note}};
}

/// Data of the affine map taking f to its S_H^0 normalization.
struct AffineParams {
  Complex f0;
  Complex h_prime0;
  Complex g_prime0;
};

struct Normalized {
  HarmonicMap map;
  AffineParams affine;
};

/// f1 = (f - f(0))/h'(0), then f2 = (f1 - beta conj f1)/(1 - |beta|^2) with
/// beta = conj(g'(0))/h'(0).
inline Normalized normalize(const HarmonicMap& f) {
  const Complex f0 = f(Complex{});
  const Complex a = f.h().derivative(Complex{});
  const Complex b = f.g().derivative(Complex{});
  if (std::abs(a) <= kSingularThreshold) throw SingularDerivativeError("normalize: h'(0) vanishes");
  if (!(std::abs(b) < std::abs(a))) {
    throw PreconditionError("normalize: |g'(0)| >= |h'(0)|, f is not sense-preserving at 0");
  }
  const Complex beta = std::conj(b) / a;
  const double denom = 1.0 - std::norm(beta);
  const Complex g0 = f.g().value(Complex{});
  // f1 = H + conj(G), H = (h - h(0))/a, G = (g - g(0))/conj(a)
  const auto H = AnalyticFunction::combine(1.0 / a, f.h(), 0.0, AnalyticFunction::zero(),
                                           -f.h().value(Complex{}) / a, "H");
  const auto G = AnalyticFunction::combine(1.0 / std::conj(a), f.g(), 0.0, AnalyticFunction::zero(),
                                           -g0 / std::conj(a), "G");
  const auto h2 = AnalyticFunction::combine(1.0 / denom, H, -beta / denom, G, {}, "h2");
  const auto g2 = AnalyticFunction::combine(1.0 / denom, G, -std::conj(beta) / denom, H, {}, "g2");
  return {HarmonicMap(h2, g2, f.label() + " normalized", true), {f0, a, b}};
}

/// Inverse of normalize: f = f(0) + h'(0) (f2 + beta conj f2).
inline HarmonicMap denormalize(const HarmonicMap& f2, const AffineParams& p) {
  const Complex beta = std::conj(p.g_prime0) / p.h_prime0;
  // f1 = f2 + beta conj(f2): analytic h2 + beta g2, co-analytic g2 + conj(beta) h2
  const auto h1 = AnalyticFunction::combine(1.0, f2.h(), beta, f2.g(), {}, "h1");
  const auto g1 = AnalyticFunction::combine(1.0, f2.g(), std::conj(beta), f2.h(), {}, "g1");
  const auto h = AnalyticFunction::combine(p.h_prime0, h1, 0.0, AnalyticFunction::zero(), p.f0, "h");
  const auto g = AnalyticFunction::combine(std::conj(p.h_prime0), g1, 0.0, AnalyticFunction::zero(),
                                           {}, "g");
  return HarmonicMap(h, g, f2.label() + " denormalized");
}

}  // namespace harmap
