#pragma once

// Herglotz representation of Caratheodory functions, the structural formula
// for the functions phi that witness univalence of an analytic f, and
// numerical inversion of harmonic maps.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "harmap/core.hpp"
#include "harmap/parallel.hpp"

namespace harmap {

/// Probability measure on the circle made of finitely many atoms.
class DiscreteMeasure {
 public:
  struct Atom {
    double theta;
    double weight;
  };

  explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw PreconditionError("measure: at least one atom required");
    double total = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      const auto& a = atoms_[k];
      if (!(a.theta >= 0.0 && a.theta < kTwoPi)) {
        throw PreconditionError("measure: atom angles must lie in [0, 2pi)");
      }
      if (k > 0 && !(a.theta > atoms_[k - 1].theta)) {
        throw PreconditionError("measure: atom angles must be strictly increasing");
      }
      if (!(a.weight >= 0.0)) throw PreconditionError("measure: weights must be nonnegative");
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw PreconditionError("measure: weights must sum to 1 (got " + std::to_string(total) + ")");
    }
  }

  static DiscreteMeasure point_mass(double theta) { return DiscreteMeasure({{theta, 1.0}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

struct StructuralParams {
  double c = 1.0;
  double c1 = 0.0;
  Complex c0{};

  void validate() const {
    if (!(c > 0.0)) throw PreconditionError("structural params: c must be positive");
    if (!std::isfinite(c1)) throw PreconditionError("structural params: c1 must be finite");
  }
};

/// p(z) = sum_k w_k (1 + z e^{i theta_k}) / (1 - z e^{i theta_k}).
inline Complex herglotz_p(const DiscreteMeasure& mu, Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("herglotz_p: |z| must be below 1");
  Complex sum{};
  for (const auto& atom : mu.atoms()) {
    const Complex t = z * std::polar(1.0, atom.theta);
    sum += atom.weight * (1.0 + t) / (1.0 - t);
  }
  return sum;
}

struct InversionOptions {
  double tol = 1e-12;
  int max_iterations = 50;
  /// Resolution of the fallback seed search over the domain.
  int seed_radial = 24;
  int seed_angular = 64;
  int seed_attempts = 6;
};

namespace detail {

struct NewtonOutcome {
  Complex z;
  double residual;
  bool converged;
};

/// Newton on the real 2x2 system f(z) = w. The step solves
/// h' dz + conj(g') conj(dz) = -(f(z) - w), halved while it leaves the domain
/// or fails to reduce the residual.
inline NewtonOutcome newton_invert(const HarmonicMap& f, Complex w, Complex z,
                                   const InversionOptions& opt) {
  const double radius = f.domain_radius();
  const double target = opt.tol * std::max(1.0, std::abs(w));
  Complex r = f(z) - w;
  double res = std::abs(r);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (res <= target) {
      // polish once; keep it only if it helps
      const Complex a = f.h().derivative(z);
      const Complex b = std::conj(f.g().derivative(z));
      const double jac = std::norm(a) - std::norm(b);
      if (jac != 0.0) {
        const Complex zz = z + (-std::conj(a) * r + b * std::conj(r)) / jac;
        if (std::abs(zz) < radius) {
          const Complex rr = f(zz) - w;
          if (std::abs(rr) < res) return {zz, std::abs(rr), true};
        }
      }
      return {z, res, true};
    }
    const Complex a = f.h().derivative(z);
    const Complex b = std::conj(f.g().derivative(z));
    const double jac = std::norm(a) - std::norm(b);
    if (!(std::abs(jac) > 0.0) || !std::isfinite(jac)) break;
    Complex step = (-std::conj(a) * r + b * std::conj(r)) / jac;
    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings, step *= 0.5) {
      const Complex trial = z + step;
      if (!(std::abs(trial) < radius)) continue;
      const Complex tr = f(trial) - w;
      const double tres = std::abs(tr);
      if (std::isfinite(tres) && tres < res) {
        z = trial;
        r = tr;
        res = tres;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {z, res, res <= target};
}

}  // namespace detail

/// z with |f(z) - w| <= tol * max(1, |w|). Newton from `seed` first; on
/// failure, restarts from the best points of a coarse polar search.
inline Complex invert(const HarmonicMap& f, Complex w, Complex seed = {},
                      const InversionOptions& opt = {}) {
  const double radius = f.domain_radius();
  double best_residual = std::numeric_limits<double>::infinity();
  if (std::abs(seed) < radius) {
    const auto out = detail::newton_invert(f, w, seed, opt);
    if (out.converged) return out.z;
    best_residual = out.residual;
  }

  std::vector<std::pair<double, Complex>> seeds;
  seeds.reserve(static_cast<std::size_t>(opt.seed_radial * opt.seed_angular) + 1);
  seeds.emplace_back(std::abs(f(Complex{}) - w), Complex{});
  for (int i = 1; i <= opt.seed_radial; ++i) {
    const double rho = 0.999 * radius * i / opt.seed_radial;
    for (int j = 0; j < opt.seed_angular; ++j) {
      const Complex z = std::polar(rho, kTwoPi * (j + 0.5 * (i % 2)) / opt.seed_angular);
      const double d = std::abs(f(z) - w);
      if (std::isfinite(d)) seeds.emplace_back(d, z);
    }
  }
  const auto attempts = std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(opt.seed_attempts));
  std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(attempts), seeds.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t k = 0; k < attempts; ++k) {
    const auto out = detail::newton_invert(f, w, seeds[k].second, opt);
    if (out.converged) return out.z;
    best_residual = std::min(best_residual, out.residual);
  }
  throw InversionError("invert: Newton iteration did not converge", w, best_residual);
}

/// phi = f^{-1} as a Wirtinger function: z_w = conj(h')/J, z_wbar = -conj(g')/J.
inline WirtingerFunction make_inverse(const HarmonicMap& f, const InversionOptions& opt = {}) {
  auto derivs = [f, opt](Complex w) {
    const Complex z = invert(f, w, {}, opt);
    const Complex hp = f.h().derivative(z);
    const Complex gp = f.g().derivative(z);
    const double jac = std::norm(hp) - std::norm(gp);
    if (std::abs(jac) <= kSingularThreshold) throw SingularDerivativeError("inverse: J_f vanishes");
    return WirtingerPair{std::conj(hp) / jac, -std::conj(gp) / jac};
  };
  return {[f, opt](Complex w) { return invert(f, w, {}, opt); },
          [derivs](Complex w) { return derivs(w).dz; },
          [derivs](Complex w) { return derivs(w).dzbar; }, "image of " + f.label()};
}

/// phi(w) = -c[(1 + i c1) zeta + 2 sum_k w_k e^{-i theta_k} log(1 - zeta e^{i theta_k})] + c0
/// with zeta = f^{-1}(w). The principal logarithm is single-valued here since
/// 1 - zeta e^{i theta} stays in the unit disk about 1.
inline Complex build_phi(const std::function<Complex(Complex)>& f_inv, const DiscreteMeasure& mu,
                         const StructuralParams& params, Complex w) {
  params.validate();
  const Complex zeta = f_inv(w);
  if (!(std::abs(zeta) < 1.0)) throw DomainError("build_phi: f^{-1}(w) must lie in the unit disk");
  Complex sum{};
  for (const auto& atom : mu.atoms()) {
    const Complex e = std::polar(1.0, atom.theta);
    sum += atom.weight * std::conj(e) * std::log(1.0 - zeta * e);
  }
  const Complex i{0.0, 1.0};
  return -params.c * ((1.0 + i * params.c1) * zeta + 2.0 * sum) + params.c0;
}

/// max over the grid of |D[phi o f](z) - (c p(z) - i c c1)| with D a central
/// difference and phi assembled from a numerical inverse of f.
inline double verify_structural_identity(const AnalyticFunction& f, const DiscreteMeasure& mu,
                                         const StructuralParams& params, const GridSpec& grid) {
  params.validate();
  grid.validate();
  const HarmonicMap map(f, f.description());
  const auto samples = grid.samples();
  constexpr double step = kFiniteDifferenceStep;
  const Complex i{0.0, 1.0};
  auto phi_of_f = [&](Complex z) {
    const Complex w = map(z);
    return build_phi([&](Complex v) { return invert(map, v, z); }, mu, params, w);
  };
  const auto worst = detail::parallel_argmax(samples.size(), [&](std::size_t k) {
    const Complex z = samples[k];
    if (!(std::abs(z) + step < f.domain_radius())) {
      throw DomainError("verify_structural_identity: grid leaves the domain of f");
    }
    const Complex fd = (phi_of_f(z + step) - phi_of_f(z - step)) / (2.0 * step);
    const Complex expected = params.c * herglotz_p(mu, z) - i * params.c * params.c1;
    return std::abs(fd - expected);
  });
  if (worst.failure) {
    throw InversionError("verify_structural_identity: " + worst.failure->message,
                         map(samples[worst.failure->index]),
                         std::numeric_limits<double>::infinity());
  }
  return worst.value;
}

/// Phi(w) = f^{-1}(w) / (e^{i gamma} phi'(w)).
inline Complex build_big_phi(const AnalyticFunction& f,
                             const std::function<Complex(Complex)>& phi_prime, double gamma,
                             Complex w, Complex seed = {}) {
  const Complex dphi = phi_prime(w);
  if (std::abs(dphi) <= kSingularThreshold) throw SingularDerivativeError("build_big_phi: phi'(w) vanishes");
  const Complex zeta = invert(HarmonicMap(f, f.description()), w, seed);
  return zeta / (std::polar(1.0, gamma) * dphi);
}

}  // namespace harmap
