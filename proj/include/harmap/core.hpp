#pragma once

// Harmonic mappings f = h + conj(g) on disks inside the unit disk, plus the
// pointwise analytic data the criteria are built from.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace harmap {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Finite-difference step used by every derivative validation.
inline constexpr double kFiniteDifferenceStep = 1e-6;
/// |h'(z)| at or below this is treated as a vanishing derivative.
inline constexpr double kSingularThreshold = 1e-14;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the disk on which a function is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularDerivativeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition (parameter range, measure normalization, ...) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A theorem's hypotheses fail for the supplied data, so its bound is unusable.
class InapplicableError : public Error {
 public:
  using Error::Error;
};

class InversionError : public Error {
 public:
  InversionError(const std::string& what, Complex target, double best_residual)
      : Error(what), target_(target), best_residual_(best_residual) {}

  Complex target() const { return target_; }
  double best_residual() const { return best_residual_; }

 private:
  Complex target_;
  double best_residual_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// Single-valued analytic function on the disk |z| < domain_radius, carried
/// together with its derivative. Branch choices are fixed by whoever builds
/// the callables.
class AnalyticFunction {
 public:
  using Callable = std::function<Complex(Complex)>;

  AnalyticFunction(Callable value, Callable derivative, double domain_radius = 1.0,
                   std::string description = {}, bool identically_zero = false)
      : value_(std::move(value)),
        derivative_(std::move(derivative)),
        domain_radius_(domain_radius),
        description_(std::move(description)),
        zero_(identically_zero) {
    if (!value_ || !derivative_) throw PreconditionError("AnalyticFunction: empty callable");
    if (!(domain_radius_ > 0.0 && domain_radius_ <= 1.0)) {
      throw PreconditionError("AnalyticFunction: domain radius must lie in (0, 1]");
    }
  }

  Complex value(Complex z) const { return value_(z); }
  Complex derivative(Complex z) const { return derivative_(z); }
  Complex operator()(Complex z) const { return value_(z); }

  double domain_radius() const { return domain_radius_; }
  const std::string& description() const { return description_; }
  bool identically_zero() const { return zero_; }
  bool contains(Complex z) const { return std::abs(z) < domain_radius_; }

  static AnalyticFunction zero() {
    return {[](Complex) { return Complex{}; }, [](Complex) { return Complex{}; }, 1.0, "0",
            true};
  }

  static AnalyticFunction identity() {
    return {[](Complex z) { return z; }, [](Complex) { return Complex{1.0, 0.0}; }, 1.0, "z"};
  }

  /// sum_k coefficients[k] * z^(k+1), evaluated in Horner form.
  static AnalyticFunction series(std::vector<Complex> coefficients, double domain_radius = 1.0,
                                 std::string description = "series") {
    const bool all_zero = std::all_of(coefficients.begin(), coefficients.end(),
                                      [](Complex c) { return c == Complex{}; });
    auto coeffs = std::make_shared<const std::vector<Complex>>(std::move(coefficients));
    auto value = [coeffs](Complex z) {
      Complex acc{};
      for (auto it = coeffs->rbegin(); it != coeffs->rend(); ++it) acc = acc * z + *it;
      return acc * z;
    };
    auto derivative = [coeffs](Complex z) {
      Complex acc{};
      for (std::size_t k = coeffs->size(); k-- > 0;) {
        acc = acc * z + static_cast<double>(k + 1) * (*coeffs)[k];
      }
      return acc;
    };
    return {value, derivative, domain_radius, std::move(description), all_zero};
  }

  /// z -> F(scale * z), defined wherever scale * z stays in F's disk.
  AnalyticFunction rescaled(double scale) const {
    if (!(scale > 0.0)) throw PreconditionError("rescaled: scale must be positive");
    auto v = value_;
    auto d = derivative_;
    const double radius = std::min(1.0, domain_radius_ / scale);
    return {[v, scale](Complex z) { return v(scale * z); },
            [d, scale](Complex z) { return scale * d(scale * z); }, radius,
            description_ + " at " + std::to_string(scale) + "z", zero_};
  }

  /// a * F + b * G + constant.
  static AnalyticFunction combine(Complex a, const AnalyticFunction& f, Complex b,
                                  const AnalyticFunction& g, Complex constant = {},
                                  std::string description = {}) {
    auto fv = f.value_, fd = f.derivative_, gv = g.value_, gd = g.derivative_;
    const bool zero = constant == Complex{} && (a == Complex{} || f.zero_) &&
                      (b == Complex{} || g.zero_);
    return {[=](Complex z) { return a * fv(z) + b * gv(z) + constant; },
            [=](Complex z) { return a * fd(z) + b * gd(z); },
            std::min(f.domain_radius_, g.domain_radius_), std::move(description), zero};
  }

 private:
  Callable value_;
  Callable derivative_;
  double domain_radius_;
  std::string description_;
  bool zero_;
};

/// f = h + conj(g).
class HarmonicMap {
 public:
  HarmonicMap(AnalyticFunction h, AnalyticFunction g, std::string label = {},
              bool normalized = false)
      : h_(std::move(h)), g_(std::move(g)), label_(std::move(label)), normalized_(normalized) {}

  explicit HarmonicMap(AnalyticFunction h, std::string label = {})
      : HarmonicMap(std::move(h), AnalyticFunction::zero(), std::move(label)) {}

  const AnalyticFunction& h() const { return h_; }
  const AnalyticFunction& g() const { return g_; }
  const std::string& label() const { return label_; }
  double domain_radius() const { return std::min(h_.domain_radius(), g_.domain_radius()); }
  bool contains(Complex z) const { return std::abs(z) < domain_radius(); }
  /// True when the co-analytic part is identically zero.
  bool is_analytic() const { return g_.identically_zero(); }
  /// Flagged as belonging to S_H^0: h(0) = g(0) = g'(0) = 0, h'(0) = 1.
  bool normalized() const { return normalized_; }

  Complex operator()(Complex z) const { return h_.value(z) + std::conj(g_.value(z)); }

 private:
  AnalyticFunction h_;
  AnalyticFunction g_;
  std::string label_;
  bool normalized_;
};

/// C^1 function phi(w, conj w) together with its Wirtinger derivatives. The
/// callables receive w; the conjugate is implied.
struct WirtingerFunction {
  using Callable = std::function<Complex(Complex)>;

  Callable eval;
  Callable dw;
  Callable dwbar;
  std::string domain = "C";

  static WirtingerFunction identity() {
    return {[](Complex w) { return w; }, [](Complex) { return Complex{1.0, 0.0}; },
            [](Complex) { return Complex{}; }, "C"};
  }

  /// phi = a w + b conj(w).
  static WirtingerFunction linear(Complex a, Complex b) {
    return {[a, b](Complex w) { return a * w + b * std::conj(w); },
            [a](Complex) { return a; }, [b](Complex) { return b; }, "C"};
  }

  static WirtingerFunction analytic(const AnalyticFunction& phi) {
    return {[phi](Complex w) { return phi.value(w); },
            [phi](Complex w) { return phi.derivative(w); }, [](Complex) { return Complex{}; },
            "|w| < " + std::to_string(phi.domain_radius())};
  }
};

struct WirtingerPair {
  Complex dz;
  Complex dzbar;
};

/// Polar sample grid: z = 0 plus r_max*i/n_radial * exp(2 pi i j / n_angular).
struct GridSpec {
  int n_radial = 40;
  int n_angular = 96;
  double r_max = 0.95;

  void validate() const {
    if (n_radial <= 0 || n_angular <= 0) {
      throw PreconditionError("GridSpec: sample counts must be positive");
    }
    if (!(r_max > 0.0 && r_max < 1.0)) throw PreconditionError("GridSpec: r_max must lie in (0, 1)");
  }

  std::size_t sample_count() const {
    return static_cast<std::size_t>(n_radial) * static_cast<std::size_t>(n_angular) + 1;
  }

  /// Sample index 0 is the origin; the rest run ring by ring outward.
  Complex sample(std::size_t index) const {
    if (index == 0) return {};
    const std::size_t k = index - 1;
    const auto ring = static_cast<int>(k / static_cast<std::size_t>(n_angular)) + 1;
    const auto spoke = static_cast<int>(k % static_cast<std::size_t>(n_angular));
    const double radius = r_max * ring / n_radial;
    return std::polar(radius, kTwoPi * spoke / n_angular);
  }

  std::vector<Complex> samples() const {
    validate();
    std::vector<Complex> out(sample_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sample(i);
    return out;
  }
};

namespace detail {

inline void require_in_domain(const HarmonicMap& f, Complex z) {
  if (!f.contains(z)) {
    throw DomainError("point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                      ") lies outside the domain radius " + std::to_string(f.domain_radius()) +
                      " of " + (f.label().empty() ? std::string("map") : f.label()));
  }
}

}  // namespace detail

inline Complex eval_map(const HarmonicMap& f, Complex z) {
  detail::require_in_domain(f, z);
  return f(z);
}

/// J_f = |h'|^2 - |g'|^2.
inline double jacobian(const HarmonicMap& f, Complex z) {
  detail::require_in_domain(f, z);
  return std::norm(f.h().derivative(z)) - std::norm(f.g().derivative(z));
}

/// omega = g'/h'.
inline Complex dilatation(const HarmonicMap& f, Complex z) {
  detail::require_in_domain(f, z);
  const Complex hp = f.h().derivative(z);
  if (std::abs(hp) <= kSingularThreshold) {
    throw SingularDerivativeError("dilatation: h'(z) vanishes");
  }
  return f.g().derivative(z) / hp;
}

/// Wirtinger derivatives of Psi(z) = phi(f(z), conj f(z)) by the chain rule,
/// using f_z = h' and f_zbar = conj(g').
inline WirtingerPair composed_wirtinger(const HarmonicMap& f, const WirtingerFunction& phi,
                                        Complex z) {
  detail::require_in_domain(f, z);
  const Complex w = f(z);
  const Complex hp = f.h().derivative(z);
  const Complex gp = f.g().derivative(z);
  const Complex pw = phi.dw(w);
  const Complex pwbar = phi.dwbar(w);
  return {pw * hp + pwbar * gp, pw * std::conj(gp) + pwbar * std::conj(hp)};
}

/// Wirtinger derivatives of an arbitrary C^1 function by central differences.
template <class Fn>
WirtingerPair wirtinger_finite_difference(Fn&& fn, Complex z,
                                          double step = kFiniteDifferenceStep) {
  const Complex dx = (fn(z + Complex{step, 0.0}) - fn(z - Complex{step, 0.0})) / (2.0 * step);
  const Complex dy = (fn(z + Complex{0.0, step}) - fn(z - Complex{0.0, step})) / (2.0 * step);
  const Complex i{0.0, 1.0};
  return {0.5 * (dx - i * dy), 0.5 * (dx + i * dy)};
}

/// Largest relative disagreement between F' and a central difference of F
/// over the given points. The scale is max(|F'|, 1) so that near-zeros of F'
/// are judged absolutely.
inline double derivative_mismatch(const AnalyticFunction& fn, std::span<const Complex> points,
                                  double step = kFiniteDifferenceStep) {
  double worst = 0.0;
  for (const Complex z : points) {
    const Complex fd = (fn.value(z + step) - fn.value(z - step)) / (2.0 * step);
    const Complex exact = fn.derivative(z);
    worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1.0));
  }
  return worst;
}

}  // namespace harmap
