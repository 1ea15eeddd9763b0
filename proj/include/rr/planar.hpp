/*
 * Copyright 2026 The restricted-range Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "rr/config.hpp"

namespace rr {

using cplx = std::complex<double>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(lo <= hi)) throw DomainError("interval requires lo <= hi");
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
  bool contains(const Interval& o, double tol = 0.0) const {
    return o.lo >= lo - tol && o.hi <= hi + tol;
  }
};

//============================================================================
// Elementary planar geometry
//============================================================================

inline double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

inline double dist_point_segment(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

inline cplx nearest_on_segment(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return a + t * ab;
}

inline double dist_to_polyline(cplx p, const std::vector<cplx>& poly, bool closed) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (poly.size() == 1) return std::abs(p - poly[0]);
  double best = std::numeric_limits<double>::infinity();
  const size_t n = poly.size();
  const size_t edges = closed ? n : n - 1;
  for (size_t i = 0; i < edges; ++i)
    best = std::min(best, dist_point_segment(p, poly[i], poly[(i + 1) % n]));
  return best;
}

// Nonzero winding rule, so boundaries that wind around a region more than
// once (powers of unitary ranges) still describe it. Points on the boundary
// may land on either side.
inline bool point_in_polygon(cplx p, const std::vector<cplx>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  int wind = 0;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const cplx a = poly[j], b = poly[i];
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && cross(a, b, p) > 0.0) ++wind;
    } else if (b.imag() <= p.imag() && cross(a, b, p) < 0.0) {
      --wind;
    }
  }
  return wind != 0;
}

// Andrew's monotone chain; counter-clockwise, no repeated first point.
inline std::vector<cplx> convex_hull(std::vector<cplx> pts, double eps = 0.0) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<cplx> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= eps) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline double directed_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (cplx p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx q : b) best = std::min(best, std::norm(p - q));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

inline double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

// Inserts points so consecutive points are at most `spacing` apart.
inline std::vector<cplx> densify(const std::vector<cplx>& poly, bool closed, double spacing) {
  if (poly.size() < 2 || !(spacing > 0.0)) return poly;
  std::vector<cplx> out;
  const size_t n = poly.size();
  const size_t edges = closed ? n : n - 1;
  for (size_t i = 0; i < edges; ++i) {
    const cplx a = poly[i], b = poly[(i + 1) % n];
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / spacing)));
    for (int k = 0; k < pieces; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
  }
  if (!closed) out.push_back(poly.back());
  return out;
}

//============================================================================
// PlanarSet
//============================================================================

// Compact planar region described by its outer boundary and an optional hole
// boundary. Flat sets (segments, single points) keep the segment as an open
// polyline in `boundary`.
struct PlanarSet {
  std::vector<cplx> boundary;
  std::vector<cplx> inner;
  std::vector<cplx> interior;
  bool closed = true;
  bool flat = false;
  double orientation = 0.0;  // direction of a flat set

  static PlanarSet point(cplx z) {
    PlanarSet s;
    s.boundary = {z};
    s.closed = false;
    s.flat = true;
    return s;
  }

  static PlanarSet segment(cplx a, cplx b, int samples = 2) {
    PlanarSet s;
    s.closed = false;
    s.flat = true;
    s.orientation = std::arg(b - a);
    samples = std::max(samples, 2);
    for (int k = 0; k < samples; ++k)
      s.boundary.push_back(a + (b - a) * (static_cast<double>(k) / (samples - 1)));
    if (a == b) s.boundary = {a};
    return s;
  }

  static PlanarSet polygon(std::vector<cplx> pts) {
    PlanarSet s;
    s.boundary = std::move(pts);
    s.closed = true;
    return s;
  }

  bool empty() const { return boundary.empty(); }
  bool is_point() const { return flat && boundary.size() == 1; }

  std::vector<cplx> all_points() const {
    std::vector<cplx> out = boundary;
    out.insert(out.end(), inner.begin(), inner.end());
    out.insert(out.end(), interior.begin(), interior.end());
    return out;
  }

  std::vector<cplx> boundary_points() const {
    std::vector<cplx> out = boundary;
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
  }

  double boundary_distance(cplx z) const {
    double d = dist_to_polyline(z, boundary, closed && !flat);
    if (!inner.empty()) d = std::min(d, dist_to_polyline(z, inner, true));
    return d;
  }

  bool contains(cplx z, double tol = 1e-9) const {
    if (boundary.empty()) return false;
    if (flat || boundary.size() < 3) return boundary_distance(z) <= tol;
    if (boundary_distance(z) <= tol) return true;
    if (!point_in_polygon(z, boundary)) return false;
    if (inner.size() >= 3 && point_in_polygon(z, inner)) return false;
    return true;
  }

  // Euclidean distance from z to the region (0 inside).
  double distance(cplx z) const {
    if (contains(z, 0.0)) return 0.0;
    return boundary_distance(z);
  }

  double min_modulus() const {
    if (contains(cplx(0.0, 0.0), 0.0)) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    auto scan = [&m](const std::vector<cplx>& poly, bool cl) {
      if (poly.size() == 1) m = std::min(m, std::abs(poly[0]));
      const size_t n = poly.size();
      if (n < 2) return;
      const size_t edges = cl ? n : n - 1;
      for (size_t i = 0; i < edges; ++i)
        m = std::min(m, dist_point_segment(cplx(0.0, 0.0), poly[i], poly[(i + 1) % n]));
    };
    scan(boundary, closed && !flat);
    scan(inner, true);
    for (cplx z : interior) m = std::min(m, std::abs(z));
    return m;
  }

  double max_modulus() const {
    double m = 0.0;
    for (cplx z : boundary) m = std::max(m, std::abs(z));
    return m;
  }

  cplx centroid() const {
    cplx c(0.0, 0.0);
    for (cplx z : boundary) c += z;
    return boundary.empty() ? c : c / static_cast<double>(boundary.size());
  }
};

// Hausdorff distance between two regions, measured from the boundary
// vertices of each to the other region (0 inside).
inline double hausdorff(const PlanarSet& a, const PlanarSet& b) {
  double d = 0.0;
  for (cplx z : a.boundary_points()) d = std::max(d, b.distance(z));
  for (cplx z : b.boundary_points()) d = std::max(d, a.distance(z));
  return d;
}

}  // namespace rr
