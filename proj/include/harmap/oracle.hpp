#pragma once

// Brute-force evidence of univalence that shares no code path with the
// criteria: pairwise injectivity over disk samples, Jacobian sign, and
// simplicity of the image of a circle.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "harmap/core.hpp"
#include "harmap/parallel.hpp"
#include "harmap/report.hpp"

namespace harmap {

/// Golden-angle spiral filling |z| <= r_max with near-uniform density.
inline std::vector<Complex> sunflower_points(int n, double r_max) {
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double radius = r_max * std::sqrt((k + 0.5) / n);
    out[static_cast<std::size_t>(k)] = std::polar(radius, k * golden_angle);
  }
  return out;
}

/// Violated iff some pair has |f(zi) - f(zj)| <= tol |zi - zj|. The margin is
/// the smallest difference quotient over all pairs.
inline CheckReport injectivity_scan(const HarmonicMap& f, const std::vector<Complex>& points,
                                    double tol = 1e-6) {
  std::vector<Complex> images;
  if (auto fail = detail::parallel_map(points.size(), images,
                                       [&](std::size_t i) { return eval_map(f, points[i]); })) {
    return detail::inconclusive("injectivity", std::nullopt, points[fail->index], fail->message);
  }
  struct Best {
    double ratio = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
  };
  std::vector<Best> per_row(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) {
    Best b;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double dz = std::abs(points[i] - points[j]);
      if (dz == 0.0) continue;
      const double ratio = std::abs(images[i] - images[j]) / dz;
      if (ratio < b.ratio) b = {ratio, i};
    }
    per_row[i] = b;
  });
  Best best;
  for (const auto& b : per_row) {
    if (b.ratio < best.ratio) best = b;
  }

  CheckReport r;
  r.criterion = "injectivity";
  r.margin = best.ratio;
  r.verdict = best.ratio <= tol ? Verdict::Violated : Verdict::HoldsOnSamples;
  r.witness = points.empty() ? Complex{} : points[best.i];
  r.metadata = {{"n_points", static_cast<double>(points.size())}, {"tol", tol}};
  return r;
}

inline CheckReport injectivity_scan(const HarmonicMap& f, int n_points = 400,
                                    double r_max = 0.99, double tol = 1e-6) {
  if (n_points < 50) throw PreconditionError("injectivity_scan: n_points must be at least 50");
  if (!(r_max > 0.0 && r_max < f.domain_radius())) {
    throw PreconditionError("injectivity_scan: r_max must lie inside the domain");
  }
  auto r = injectivity_scan(f, sunflower_points(n_points, r_max), tol);
  r.metadata["r_max"] = r_max;
  return r;
}

/// min over the grid of J_f.
inline CheckReport jacobian_positivity_scan(const HarmonicMap& f, const GridSpec& grid) {
  grid.validate();
  const auto samples = grid.samples();
  const auto found = detail::parallel_argmin(
      samples.size(), [&](std::size_t i) { return jacobian(f, samples[i]); });
  if (found.failure) {
    return detail::inconclusive("jacobian_positivity", grid, samples[found.failure->index],
                                found.failure->message);
  }
  CheckReport r;
  r.criterion = "jacobian_positivity";
  r.margin = found.value;
  r.verdict = detail::strict_verdict(found.value);
  r.witness = samples[found.index];
  r.grid = grid;
  return r;
}

namespace detail {

inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// Sign of the turn a -> b -> c; |value| within slack counts as collinear.
inline int orientation(Complex a, Complex b, Complex c, double slack) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) <= slack) return 0;
  return v > 0.0 ? 1 : -1;
}

inline bool on_segment(Complex a, Complex b, Complex p, double slack) {
  return p.real() >= std::min(a.real(), b.real()) - slack &&
         p.real() <= std::max(a.real(), b.real()) + slack &&
         p.imag() >= std::min(a.imag(), b.imag()) - slack &&
         p.imag() <= std::max(a.imag(), b.imag()) + slack;
}

inline bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2, double slack) {
  const int o1 = orientation(p1, p2, q1, slack);
  const int o2 = orientation(p1, p2, q2, slack);
  const int o3 = orientation(q1, q2, p1, slack);
  const int o4 = orientation(q1, q2, p2, slack);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1, slack)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2, slack)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1, slack)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2, slack)) return true;
  return false;
}

inline double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

/// Distance between two non-intersecting segments.
inline double segment_distance(Complex a, Complex b, Complex c, Complex d) {
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

/// Winding number of the closed polyline about `center`.
inline int winding_number(const std::vector<Complex>& poly, Complex center) {
  double total = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Complex a = poly[k] - center;
    const Complex b = poly[(k + 1) % poly.size()] - center;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace detail

/// Images of n points on |z| = rho joined into a closed polyline; holds iff no
/// two non-adjacent segments meet. The margin is the smallest gap between
/// non-adjacent segments, 0 on a crossing.
inline CheckReport curve_simplicity(const HarmonicMap& f, double rho, int n = 512) {
  if (n < 64) throw PreconditionError("curve_simplicity: n must be at least 64");
  if (!(rho > 0.0 && rho < f.domain_radius())) {
    throw PreconditionError("curve_simplicity: rho must lie inside the domain");
  }
  std::vector<Complex> images;
  std::vector<Complex> preimages;
  double scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex z = std::polar(rho, kTwoPi * k / n);
    const Complex w = eval_map(f, z);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      return detail::inconclusive("curve_simplicity", std::nullopt, z, "non-finite image");
    }
    scale = std::max(scale, std::abs(w));
    if (!images.empty() && std::abs(w - images.back()) <= 1e-14 * std::max(1.0, std::abs(w))) {
      continue;
    }
    images.push_back(w);
    preimages.push_back(z);
  }
  while (images.size() > 1 &&
         std::abs(images.back() - images.front()) <= 1e-14 * std::max(1.0, scale)) {
    images.pop_back();
    preimages.pop_back();
  }

  CheckReport r;
  r.criterion = "curve_simplicity";
  r.metadata = {{"rho", rho}, {"n", n}, {"vertices", static_cast<double>(images.size())}};
  const std::size_t m = images.size();
  if (m < 3) {
    r.verdict = Verdict::Violated;
    r.margin = 0.0;
    r.notes.push_back("image of the circle collapses to fewer than three points");
    return r;
  }
  // orientation products scale with the square of the coordinates
  const double slack = 1e-12 * std::max(1.0, scale * scale);
  struct Row {
    double clearance = std::numeric_limits<double>::infinity();
    std::size_t crossing = 0;
    bool crossed = false;
  };
  std::vector<Row> rows(m);
  detail::parallel_for(m, [&](std::size_t i) {
    const Complex a = images[i];
    const Complex b = images[(i + 1) % m];
    Row row;
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // closing segment is adjacent to the first
      const Complex c = images[j];
      const Complex d = images[(j + 1) % m];
      if (detail::segments_intersect(a, b, c, d, slack)) {
        row = {0.0, j, true};
        break;
      }
      row.clearance = std::min(row.clearance, detail::segment_distance(a, b, c, d));
    }
    rows[i] = row;
  });
  const auto first = std::find_if(rows.begin(), rows.end(), [](const Row& row) { return row.crossed; });

  Complex centroid{};
  for (const Complex w : images) centroid += w;
  centroid /= static_cast<double>(m);
  r.metadata["winding_about_centroid"] = detail::winding_number(images, centroid);
  const Complex center_image = eval_map(f, Complex{});
  r.metadata["winding_about_f0"] = detail::winding_number(images, center_image);

  if (first != rows.end()) {
    const auto i = static_cast<std::size_t>(first - rows.begin());
    r.verdict = Verdict::Violated;
    r.margin = 0.0;
    r.witness = preimages[i];
    r.metadata["crossing_segment"] = static_cast<double>(first->crossing);
  } else {
    // margin: smallest distance between non-adjacent segments
    std::size_t at = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (rows[i].clearance < rows[at].clearance) at = i;
    }
    r.verdict = Verdict::HoldsOnSamples;
    r.margin = rows[at].clearance;
    r.witness = preimages[at];
  }
  return r;
}

}  // namespace harmap
