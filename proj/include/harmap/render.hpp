#pragma once

// SVG picture of the image of the disk: circles |z| = rho_j and radial rays
// pushed through the map, fitted to a square viewport.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "harmap/core.hpp"

namespace harmap {

struct RenderOptions {
  /// Circles at rho_max * j / n_circles for j = 1..n_circles.
  double rho_max = 11.0 / 12.0;
  int n_circles = 11;
  int n_rays = 24;
  int samples_per_curve = 256;
  int canvas = 800;
  /// Draw the unit circle and the slit (-inf, -1] for comparison.
  bool reference_slit_domain = false;
  /// Fraction of image points trimmed from each end of each axis when fitting
  /// the viewport; 0 fits every point. Trimmed points fall outside the canvas.
  double fit_trim = 0.0;
};

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Viewport {
  double x0, y0, x1, y1;
  int canvas;

  Complex to_canvas(Complex w) const {
    const double scale = canvas / std::max(x1 - x0, y1 - y0);
    return {(w.real() - x0) * scale, (y1 - w.imag()) * scale};
  }
};

/// Path data for a polyline; non-finite points split it into pieces.
inline std::string path_data(const std::vector<Complex>& pts, const Viewport& vp, bool closed) {
  std::string d;
  bool pen_down = false;
  for (const Complex w : pts) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      pen_down = false;
      continue;
    }
    const Complex c = vp.to_canvas(w);
    d += pen_down ? " L " : (d.empty() ? "M " : " M ");
    d += fixed6(c.real()) + " " + fixed6(c.imag());
    pen_down = true;
  }
  if (closed && pen_down) d += " Z";
  return d;
}

}  // namespace detail

/// Byte-for-byte deterministic for fixed inputs.
inline std::string render_svg(const HarmonicMap& f, const RenderOptions& opt = {}) {
  if (!(opt.rho_max > 0.0 && opt.rho_max < f.domain_radius())) {
    throw PreconditionError("render: rho_max must lie inside the domain");
  }
  if (opt.n_circles < 1 || opt.n_rays < 1 || opt.samples_per_curve < 8 || opt.canvas < 16 ||
      !(opt.fit_trim >= 0.0 && opt.fit_trim < 0.5)) {
    throw PreconditionError("render: invalid resolution");
  }
  std::vector<std::vector<Complex>> circles;
  std::vector<std::vector<Complex>> rays;
  for (int j = 1; j <= opt.n_circles; ++j) {
    const double rho = opt.rho_max * j / opt.n_circles;
    std::vector<Complex> c;
    for (int k = 0; k < opt.samples_per_curve; ++k) {
      c.push_back(f(std::polar(rho, kTwoPi * k / opt.samples_per_curve)));
    }
    circles.push_back(std::move(c));
  }
  for (int j = 0; j < opt.n_rays; ++j) {
    std::vector<Complex> ray;
    for (int k = 0; k <= opt.samples_per_curve; ++k) {
      ray.push_back(f(std::polar(opt.rho_max * k / opt.samples_per_curve, kTwoPi * j / opt.n_rays)));
    }
    rays.push_back(std::move(ray));
  }

  std::vector<double> xs, ys;
  auto collect = [&](Complex w) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return;
    xs.push_back(w.real());
    ys.push_back(w.imag());
  };
  for (const auto& c : circles) std::for_each(c.begin(), c.end(), collect);
  for (const auto& r : rays) std::for_each(r.begin(), r.end(), collect);
  if (xs.empty()) throw Error("render: no finite image points");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const auto trim = static_cast<std::size_t>(opt.fit_trim * static_cast<double>(xs.size() - 1));
  double x0 = xs[trim], x1 = xs[xs.size() - 1 - trim];
  double y0 = ys[trim], y1 = ys[ys.size() - 1 - trim];
  if (opt.reference_slit_domain) {
    x0 = std::min(x0, -1.0);
    x1 = std::max(x1, 1.0);
    y0 = std::min(y0, -1.0);
    y1 = std::max(y1, 1.0);
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double pad = 0.05 * span;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double half = 0.5 * span + pad;
  const detail::Viewport vp{cx - half, cy - half, cx + half, cy + half, opt.canvas};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.canvas) +
         "\" height=\"" + std::to_string(opt.canvas) + "\" viewBox=\"0 0 " +
         std::to_string(opt.canvas) + " " + std::to_string(opt.canvas) + "\">\n";
  svg += "<title>Image of the disk under " + f.label() + "</title>\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (opt.reference_slit_domain) {
    std::vector<Complex> unit;
    for (int k = 0; k < opt.samples_per_curve; ++k) {
      unit.push_back(std::polar(1.0, kTwoPi * k / opt.samples_per_curve));
    }
    svg += "<path d=\"" + detail::path_data(unit, vp, true) +
           "\" fill=\"none\" stroke=\"#cc3333\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    const std::vector<Complex> slit = {{vp.x0, 0.0}, {-1.0, 0.0}};
    svg += "<path d=\"" + detail::path_data(slit, vp, false) +
           "\" fill=\"none\" stroke=\"#cc3333\" stroke-width=\"2\"/>\n";
  }
  svg += "<g fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.8\">\n";
  for (const auto& c : circles) svg += "<path d=\"" + detail::path_data(c, vp, true) + "\"/>\n";
  svg += "</g>\n<g fill=\"none\" stroke=\"#2a8c4a\" stroke-width=\"0.8\">\n";
  for (const auto& r : rays) svg += "<path d=\"" + detail::path_data(r, vp, false) + "\"/>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace harmap
