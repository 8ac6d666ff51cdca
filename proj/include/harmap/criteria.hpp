#pragma once

// Sampled checks of the univalence and close-to-convexity conditions. Every
// check reduces to a margin that is positive exactly when the strict
// inequality holds at all samples.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "harmap/core.hpp"
#include "harmap/parallel.hpp"
#include "harmap/report.hpp"

namespace harmap {

struct CriteriaDefaults {
  static constexpr int kEpsilonDirections = 64;
  static constexpr int kGammaCandidates = 72;
  static constexpr double kGammaTolerance = 1e-6;
  static constexpr double kZeroThreshold = 1e-14;
};

namespace detail {

/// Angle reduced to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a <= -kPi ? a + kTwoPi : a;
}

struct HalfPlaneFit {
  double gap = 0.0;        // largest circular gap between sorted arguments
  double gamma = 0.0;      // rotation putting every value into Re > 0
  std::size_t edge = 0;    // sample at the far edge of the largest gap
};

/// Values lie in an open half-plane through 0 iff the largest circular gap
/// between their arguments exceeds pi. Values must be nonzero.
inline HalfPlaneFit fit_half_plane(const std::vector<Complex>& values) {
  std::vector<std::pair<double, std::size_t>> args(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) args[i] = {std::arg(values[i]), i};
  std::sort(args.begin(), args.end());
  HalfPlaneFit best;
  best.gap = -1.0;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const bool last = k + 1 == args.size();
    const double next = last ? args.front().first + kTwoPi : args[k + 1].first;
    const double gap = next - args[k].first;
    if (gap > best.gap) {
      best.gap = gap;
      const double bisector = args[k].first + 0.5 * gap;
      // the values are centred opposite the gap; rotate that centre onto 0
      best.gamma = wrap_angle(-(bisector + kPi));
      best.edge = last ? args.front().second : args[k + 1].second;
    }
  }
  return best;
}

/// max over gamma of min_i (Re(e^{i gamma} a_i) - b_i): uniform coarse scan,
/// then golden-section refinement around the best candidate.
struct GammaSearch {
  double margin;
  double gamma;
  std::size_t argmin;
};

inline GammaSearch search_gamma(const std::vector<Complex>& a, const std::vector<double>& b,
                                int n_gamma, double tolerance) {
  auto evaluate = [&](double gamma, std::size_t* where) {
    const Complex rot = std::polar(1.0, gamma);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = (rot * a[i]).real() - b[i];
      if (v < worst) {
        worst = v;
        at = i;
      }
    }
    if (where) *where = at;
    return worst;
  };

  GammaSearch best{-std::numeric_limits<double>::infinity(), 0.0, 0};
  for (int k = 0; k < n_gamma; ++k) {
    const double gamma = kTwoPi * k / n_gamma;
    std::size_t at = 0;
    const double m = evaluate(gamma, &at);
    if (m > best.margin) best = {m, gamma, at};
  }

  const double step = kTwoPi / n_gamma;
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = best.gamma - step;
  double hi = best.gamma + step;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = evaluate(x1, nullptr);
  double f2 = evaluate(x2, nullptr);
  while (hi - lo > tolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = evaluate(x2, nullptr);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = evaluate(x1, nullptr);
    }
  }
  const double refined = 0.5 * (lo + hi);
  std::size_t at = 0;
  const double m = evaluate(refined, &at);
  if (m > best.margin) best = {m, refined, at};
  best.gamma = std::fmod(best.gamma + kTwoPi, kTwoPi);
  return best;
}

/// Shared body of the close-to-convexity checks: a = h'/G', b = |g'/G'|.
template <class Ratio>
CheckReport close_to_convex_check(std::string criterion, const HarmonicMap& f,
                                  const GridSpec& grid, int n_gamma, Ratio&& ratio) {
  grid.validate();
  if (n_gamma < 8) throw PreconditionError(criterion + ": n_gamma must be at least 8");
  const auto samples = grid.samples();
  std::vector<std::pair<Complex, double>> data;
  if (auto fail = parallel_map(samples.size(), data, [&](std::size_t i) {
        detail::require_in_domain(f, samples[i]);
        return ratio(samples[i]);
      })) {
    return inconclusive(criterion, grid, samples[fail->index], fail->message);
  }
  std::vector<Complex> a(data.size());
  std::vector<double> b(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    a[i] = data[i].first;
    b[i] = data[i].second;
  }
  const auto found = search_gamma(a, b, n_gamma, CriteriaDefaults::kGammaTolerance);
  CheckReport r;
  r.criterion = std::move(criterion);
  r.margin = found.margin;
  r.verdict = strict_verdict(found.margin);
  r.witness = samples[found.argmin];
  r.gamma = found.gamma;
  r.grid = grid;
  r.metadata["n_gamma"] = n_gamma;
  return r;
}

}  // namespace detail

/// Re Psi_z > |Psi_zbar| on the samples, with Psi = phi o f.
inline CheckReport check_corollary1(const HarmonicMap& f, const WirtingerFunction& phi,
                                    const GridSpec& grid) {
  grid.validate();
  const auto samples = grid.samples();
  const auto found = detail::parallel_argmin(samples.size(), [&](std::size_t i) {
    const auto d = composed_wirtinger(f, phi, samples[i]);
    return d.dz.real() - std::abs(d.dzbar);
  });
  if (found.failure) {
    return detail::inconclusive("corollary1", grid, samples[found.failure->index],
                                found.failure->message);
  }
  CheckReport r;
  r.criterion = "corollary1";
  r.margin = found.value;
  r.verdict = detail::strict_verdict(found.value);
  r.witness = samples[found.index];
  r.grid = grid;
  return r;
}

/// For each of n_epsilon unimodular epsilon, the values Psi_z + epsilon*Psi_zbar
/// must avoid 0 and fit in an open half-plane; gamma(epsilon) rotates that
/// half-plane onto Re > 0. Margin = min over epsilon of (largest gap - pi)/2.
inline CheckReport check_theorem1(const HarmonicMap& f, const WirtingerFunction& phi,
                                  const GridSpec& grid,
                                  int n_epsilon = CriteriaDefaults::kEpsilonDirections) {
  grid.validate();
  if (n_epsilon < 4) throw PreconditionError("theorem1: n_epsilon must be at least 4");
  const auto samples = grid.samples();
  std::vector<WirtingerPair> pairs;
  if (auto fail = detail::parallel_map(samples.size(), pairs, [&](std::size_t i) {
        return composed_wirtinger(f, phi, samples[i]);
      })) {
    return detail::inconclusive("theorem1", grid, samples[fail->index], fail->message);
  }

  CheckReport r;
  r.criterion = "theorem1";
  r.grid = grid;
  r.metadata["n_epsilon"] = n_epsilon;
  r.margin = std::numeric_limits<double>::infinity();
  std::vector<double> gammas(static_cast<std::size_t>(n_epsilon));
  std::vector<Complex> w(samples.size());
  for (int k = 0; k < n_epsilon; ++k) {
    const Complex eps = std::polar(1.0, kTwoPi * k / n_epsilon);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      w[i] = pairs[i].dz + eps * pairs[i].dzbar;
      if (!std::isfinite(w[i].real()) || !std::isfinite(w[i].imag())) {
        return detail::inconclusive("theorem1", grid, samples[i], "non-finite derivative");
      }
      if (std::abs(w[i]) <= CriteriaDefaults::kZeroThreshold) {
        r.verdict = Verdict::Violated;
        r.margin = -kPi / 2.0;
        r.witness = samples[i];
        r.gamma.reset();
        r.notes.push_back("Psi_z + eps*Psi_zbar vanishes at the witness for eps = exp(2 pi i " +
                          std::to_string(k) + "/" + std::to_string(n_epsilon) + ")");
        return r;
      }
    }
    const auto fit = detail::fit_half_plane(w);
    const double margin = 0.5 * (fit.gap - kPi);
    gammas[static_cast<std::size_t>(k)] = fit.gamma;
    if (margin < r.margin) {
      r.margin = margin;
      r.witness = samples[fit.edge];
      r.gamma = fit.gamma;
    }
  }
  r.verdict = detail::strict_verdict(r.margin);
  r.gamma_by_direction = std::move(gammas);
  return r;
}

/// max over gamma of min over samples of Re(e^{i gamma} h') - |g'|.
inline CheckReport check_theoremA(const HarmonicMap& f, const GridSpec& grid,
                                  int n_gamma = CriteriaDefaults::kGammaCandidates) {
  return detail::close_to_convex_check("theoremA", f, grid, n_gamma, [&](Complex z) {
    return std::pair{f.h().derivative(z), std::abs(f.g().derivative(z))};
  });
}

/// As theoremA with h' and g' divided by G'. Convexity of G is assumed, not checked.
inline CheckReport check_theoremB(const HarmonicMap& f, const AnalyticFunction& G,
                                  const GridSpec& grid,
                                  int n_gamma = CriteriaDefaults::kGammaCandidates) {
  auto r = detail::close_to_convex_check("theoremB", f, grid, n_gamma, [&](Complex z) {
    const Complex gp = G.derivative(z);
    if (std::abs(gp) <= kSingularThreshold) throw SingularDerivativeError("G'(z) vanishes");
    return std::pair{f.h().derivative(z) / gp, std::abs(f.g().derivative(z) / gp)};
  });
  r.notes.push_back("assumed: G is univalent and convex (not verified)");
  return r;
}

/// Re(z f'(z) / Phi(f(z))) > 0. At z = 0 the ratio is replaced by its limit
/// 1/Phi'(f(0)) when Phi(f(0)) = 0.
inline CheckReport check_philike(const AnalyticFunction& f, const AnalyticFunction& Phi,
                                 const GridSpec& grid) {
  grid.validate();
  const auto samples = grid.samples();
  std::vector<Complex> ratios;
  std::optional<std::size_t> pole;
  auto fail = detail::parallel_map(samples.size(), ratios, [&](std::size_t i) {
    const Complex z = samples[i];
    if (!f.contains(z)) throw DomainError("sample outside the domain of f");
    const Complex fz = f.value(z);
    const Complex denom = Phi.value(fz);
    if (z == Complex{}) {
      if (std::abs(denom) > CriteriaDefaults::kZeroThreshold) return Complex{};
      const Complex dphi = Phi.derivative(fz);
      if (std::abs(dphi) <= kSingularThreshold) throw SingularDerivativeError("Phi'(f(0)) vanishes");
      return Complex{1.0, 0.0} / dphi;
    }
    if (std::abs(denom) <= CriteriaDefaults::kZeroThreshold) {
      return Complex{std::numeric_limits<double>::infinity(), 0.0};
    }
    return z * f.derivative(z) / denom;
  });
  if (fail) return detail::inconclusive("philike", grid, samples[fail->index], fail->message);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (std::isinf(ratios[i].real())) {
      pole = i;
      break;
    }
  }
  CheckReport r;
  r.criterion = "philike";
  r.grid = grid;
  if (pole) {
    r.verdict = Verdict::Violated;
    r.margin = 0.0;
    r.witness = samples[*pole];
    r.notes.push_back("Phi(f(z)) vanishes at a nonzero sample");
    return r;
  }
  std::size_t at = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i].real() < ratios[at].real()) at = i;
  }
  r.margin = ratios[at].real();
  r.verdict = detail::strict_verdict(r.margin);
  r.witness = samples[at];
  return r;
}

}  // namespace harmap
