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
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "rr/linalg.hpp"
#include "rr/parallel.hpp"
#include "rr/planar.hpp"

namespace rr {

//============================================================================
// Support points
//============================================================================

struct SupportPoint {
  double theta = 0.0;
  cplx value;
  Vec vector;
};

// Hermitian part of e^{-i theta} X.
inline Mat rotated_hermitian_part(const Mat& x, double theta) {
  const cplx ph = std::polar(1.0, -theta);
  return 0.5 * (ph * x + std::conj(ph) * x.adjoint());
}

// Boundary point of the numerical range in direction theta.
inline SupportPoint support_point(const Mat& x, double theta) {
  const auto ed = detail::eigh_unchecked(rotated_hermitian_part(x, theta));
  SupportPoint sp;
  sp.theta = theta;
  sp.vector = ed.vectors.col(ed.vectors.cols() - 1);
  sp.value = expectation(x, sp.vector);
  return sp;
}

inline double support_function(const Mat& x, double theta) {
  const RealVec ev = detail::eigenvalues_unchecked(rotated_hermitian_part(x, theta));
  return ev(ev.size() - 1);
}

//============================================================================
// Flat numerical ranges
//============================================================================

// Numerical range is a segment exactly when X = alpha I + e^{i theta} H with
// H Hermitian.
struct FlatRange {
  cplx alpha;
  double theta = 0.0;
  double lo = 0.0, hi = 0.0;  // spectrum of H
  Vec vec_lo, vec_hi;
  cplx a() const { return alpha + std::polar(lo, theta); }
  cplx b() const { return alpha + std::polar(hi, theta); }
};

inline std::optional<FlatRange> detect_flat(const Mat& x, double tol = 1e-11) {
  const int n = static_cast<int>(x.rows());
  const cplx alpha = x.trace() / static_cast<double>(n);
  const Mat y = x - alpha * Mat::Identity(n, n);
  const double scale = std::max(1.0, max_abs(x));
  const Mat a = hermitian_part(y);
  const Mat b = (y - y.adjoint()) / cplx(0.0, 2.0);
  const double na = a.norm(), nb = b.norm();
  FlatRange fr;
  fr.alpha = alpha;
  if (na <= tol * scale && nb <= tol * scale) {
    fr.vec_lo = fr.vec_hi = Vec::Unit(n, 0);
    return fr;
  }
  const double s = (a.cwiseProduct(b.conjugate())).sum().real() >= 0.0 ? 1.0 : -1.0;
  const double theta = std::atan2(s * nb, na);
  if ((std::cos(theta) * b - std::sin(theta) * a).norm() > tol * scale * std::sqrt(n))
    return std::nullopt;
  const Mat h = hermitian_part(std::polar(1.0, -theta) * y);
  const auto ed = detail::eigh_unchecked(h);
  fr.theta = theta;
  fr.lo = ed.values(0);
  fr.hi = ed.values(n - 1);
  fr.vec_lo = ed.vectors.col(0);
  fr.vec_hi = ed.vectors.col(n - 1);
  return fr;
}

//============================================================================
// Numerical range and radius
//============================================================================

// Convex boundary from support points in `angles` directions. Each angular
// cell is bisected until the boundary arc lies within `sagitta` (relative to
// the diameter) of its chord, then the polygon is densified so consecutive
// points are no farther apart than the angular resolution.
inline PlanarSet numerical_range(const Mat& x, int angles = 720, double sagitta = 1e-7) {
  if (angles < 8) throw DomainError("numerical range needs at least 8 angles");
  if (auto fr = detect_flat(x)) {
    if (fr->lo == fr->hi) return PlanarSet::point(fr->a());
    PlanarSet s = PlanarSet::segment(fr->a(), fr->b(), angles + 1);
    s.orientation = fr->theta;
    return s;
  }
  std::vector<cplx> grid(static_cast<size_t>(angles));
  parallel_for(angles, [&](int k) {
    grid[static_cast<size_t>(k)] = support_point(x, 2.0 * kPi * k / angles).value;
  });
  double diam = 0.0;
  for (cplx z : grid) diam = std::max(diam, std::abs(z - grid.front()));
  const double tol = std::max(diam, 1e-300) * sagitta;
  std::vector<std::vector<cplx>> cells(static_cast<size_t>(angles));
  parallel_for(angles, [&](int k) {
    auto& out = cells[static_cast<size_t>(k)];
    out.push_back(grid[static_cast<size_t>(k)]);
    const double t0 = 2.0 * kPi * k / angles, t1 = 2.0 * kPi * (k + 1) / angles;
    const cplx z1 = grid[static_cast<size_t>((k + 1) % angles)];
    // Depth-first bisection keeps points in angular order.
    auto refine = [&](auto&& self, double a, double b, cplx za, cplx zb, int depth) -> void {
      if (depth > 16 || std::abs(zb - za) <= tol) return;
      const double m = 0.5 * (a + b);
      const cplx zm = support_point(x, m).value;
      if (dist_point_segment(zm, za, zb) <= tol) return;
      self(self, a, m, za, zm, depth + 1);
      out.push_back(zm);
      self(self, m, b, zm, zb, depth + 1);
    };
    refine(refine, t0, t1, grid[static_cast<size_t>(k)], z1, 0);
  });
  std::vector<cplx> uniq;
  for (const auto& c : cells)
    for (cplx z : c)
      if (uniq.empty() || std::abs(z - uniq.back()) > 1e-14) uniq.push_back(z);
  while (uniq.size() > 1 && std::abs(uniq.front() - uniq.back()) <= 1e-14) uniq.pop_back();
  PlanarSet s = PlanarSet::polygon(densify(uniq, true, std::max(diam, 1e-300) * kPi / angles));
  return s;
}

inline PlanarSet numerical_range(const ComplexMatrix& x, int angles = 720) {
  return numerical_range(x.mat(), angles);
}

// Golden-section maximization of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

// r(X) = max over theta of the top eigenvalue of Herm(e^{-i theta} X).
inline double numerical_radius(const Mat& x, int grid = 720) {
  std::vector<double> h(static_cast<size_t>(grid));
  parallel_for(grid, [&](int k) {
    h[static_cast<size_t>(k)] = support_function(x, 2.0 * kPi * k / grid);
  });
  const double step = 2.0 * kPi / grid;
  // Refine the three best grid directions.
  std::vector<int> order(static_cast<size_t>(grid));
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + std::min(3, grid), order.end(),
                    [&](int i, int j) { return h[static_cast<size_t>(i)] > h[static_cast<size_t>(j)]; });
  double best = *std::max_element(h.begin(), h.end());
  auto f = [&x](double t) { return support_function(x, t); };
  for (int r = 0; r < std::min(3, grid); ++r) {
    const double t0 = step * order[static_cast<size_t>(r)];
    const double t = golden_max(f, t0 - step, t0 + step, 1e-13);
    best = std::max(best, f(t));
  }
  return best;
}

inline double numerical_radius(const ComplexMatrix& x, int grid = 720) {
  return numerical_radius(x.mat(), grid);
}

//============================================================================
// Field-of-values inversion
//============================================================================

namespace detail {

// Unit x in C^2 with x^dagger D x = 0, assuming 0 lies in the numerical range
// of the 2x2 matrix D (clamped best effort otherwise).
inline Vec zero_of_2x2(const Mat& d) {
  double best_gap = -1.0, best_alpha = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double alpha = kPi * j / 8.0;
    const Mat r = std::polar(1.0, -alpha) * d;
    const Mat k = (r - r.adjoint()) / cplx(0.0, 2.0);
    const RealVec ev = eigh2(k).values;
    if (ev(1) - ev(0) > best_gap * (1.0 + 1e-12)) {
      best_gap = ev(1) - ev(0);
      best_alpha = alpha;
    }
  }
  const Mat r = std::polar(1.0, -best_alpha) * d;
  const Mat k = (r - r.adjoint()) / cplx(0.0, 2.0);
  const Mat h = hermitian_part(r);
  const auto ek = eigh2(k);
  const double kq = ek.values(0), kp = ek.values(1);
  const Vec q = ek.vectors.col(0), p = ek.vectors.col(1);
  if (kp - kq <= 0.0) return Vec::Unit(2, 0);
  const double c2 = std::clamp(-kq / (kp - kq), 0.0, 1.0);
  const double cs = std::sqrt(c2), sn = std::sqrt(1.0 - c2);
  const double hpp = expectation(h, p).real();
  const double hqq = expectation(h, q).real();
  const cplx hpq = p.dot(h * q);
  const double m = c2 * hpp + (1.0 - c2) * hqq;
  const double rr = 2.0 * cs * sn * std::abs(hpq);
  double gamma = 0.0;
  if (rr > 0.0) gamma = std::acos(std::clamp(-m / rr, -1.0, 1.0)) - std::arg(hpq);
  Vec x = cs * p + sn * std::polar(1.0, gamma) * q;
  return x / x.norm();
}

}  // namespace detail

// Unit vector in span{u1, u2} whose expectation of c equals target, when
// target lies in the numerical range of the compression (e.g. on the segment
// between the two expectation values).
inline Vec fov_solve_2d(const Mat& c, const Vec& u1, const Vec& u2, cplx target) {
  Vec e1 = u1 / u1.norm();
  Vec e2 = u2 - e1 * e1.dot(u2);
  const double n2 = e2.norm();
  if (n2 < 1e-13) return e1;
  e2 /= n2;
  Mat e(c.rows(), 2);
  e.col(0) = e1;
  e.col(1) = e2;
  Mat c2 = e.adjoint() * c * e;
  c2 -= target * Mat::Identity(2, 2);
  const Vec y = detail::zero_of_2x2(c2);
  Vec x = e * y;
  return x / x.norm();
}

struct FovPoint {
  cplx value;     // achieved expectation
  Vec vector;     // unit preimage
  double distance = 0.0;  // |value - target|
};

namespace detail {

struct Support {
  double theta;
  cplx z;
  Vec v;
};

inline Support make_support(const Mat& c, double theta) {
  const auto sp = support_point(c, theta);
  return {theta, sp.value, sp.vector};
}

// Tries to write w as an expectation using a fan triangulation of the
// support polygon (points in counter-clockwise order).
inline std::optional<Vec> triangulate(const Mat& c, const std::vector<Support>& s, cplx w,
                                      double eps) {
  const size_t n = s.size();
  if (n < 3) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (cross(s[i].z, s[(i + 1) % n].z, w) < -eps) return std::nullopt;
  const cplx p0 = s[0].z;
  if (std::abs(w - p0) <= eps) return s[0].v;
  for (size_t i = 1; i + 1 < n; ++i) {
    const cplx a = s[i].z, b = s[i + 1].z;
    if (cross(p0, a, w) >= -eps && cross(p0, b, w) <= eps) {
      // q = intersection of the ray p0 -> w with segment [a, b].
      const cplx d = w - p0, e = b - a;
      const double den = d.real() * e.imag() - d.imag() * e.real();
      cplx q;
      if (std::abs(den) < 1e-300) {
        q = std::abs(a - w) < std::abs(b - w) ? a : b;
      } else {
        const cplx f = a - p0;
        double sp = (f.real() * d.imag() - f.imag() * d.real()) / den;
        sp = std::clamp(sp, 0.0, 1.0);
        q = a + sp * e;
      }
      const Vec y = (std::abs(b - a) < 1e-15) ? s[i].v : fov_solve_2d(c, s[i].v, s[i + 1].v, q);
      return fov_solve_2d(c, s[0].v, y, w);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Point of the numerical range of c nearest to w, with a unit preimage.
// Distance 0 (up to rounding) when w belongs to the range.
inline FovPoint fov_nearest(const Mat& c, cplx w, int grid = 32) {
  const int n = static_cast<int>(c.rows());
  FovPoint out;
  auto finish = [&](const Vec& v) {
    out.vector = v;
    out.value = expectation(c, v);
    out.distance = std::abs(out.value - w);
    return out;
  };
  if (n == 1) return finish(Vec::Ones(1));
  const double scale = std::max(max_abs(c), std::abs(w)) + 1e-300;
  if (auto fr = detect_flat(c)) {
    const cplx a = fr->a(), b = fr->b();
    if (std::abs(b - a) <= 1e-14 * scale) return finish(fr->vec_lo);
    const cplx q = nearest_on_segment(w, a, b);
    return finish(fov_solve_2d(c, fr->vec_lo, fr->vec_hi, q));
  }
  const double eps = 1e-14 * scale * scale;
  std::vector<detail::Support> s;
  for (int k = 0; k < grid; ++k) s.push_back(detail::make_support(c, 2.0 * kPi * k / grid));
  auto compact = [&](std::vector<detail::Support> in) {
    std::vector<detail::Support> r;
    for (auto& p : in)
      if (r.empty() || std::abs(p.z - r.back().z) > 1e-15 * scale) r.push_back(std::move(p));
    while (r.size() > 1 && std::abs(r.front().z - r.back().z) <= 1e-15 * scale) r.pop_back();
    return r;
  };
  // Inside test with adaptive refinement of the edge w lies beyond.
  for (int iter = 0; iter < 60; ++iter) {
    const auto poly = compact(s);
    if (auto v = detail::triangulate(c, poly, w, eps)) return finish(*v);
    // Find the edge with w strictly outside and bisect its angular interval.
    const size_t m = s.size();
    int edge = -1;
    double worst = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double cr = cross(s[i].z, s[(i + 1) % m].z, w);
      if (cr < worst) {
        worst = cr;
        edge = static_cast<int>(i);
      }
    }
    if (edge < 0) break;
    const auto& a = s[static_cast<size_t>(edge)];
    const auto& b = s[(static_cast<size_t>(edge) + 1) % m];
    if (std::abs(a.z - b.z) <= 1e-15 * scale) break;
    double tb = b.theta;
    if (tb <= a.theta) tb += 2.0 * kPi;
    if (tb - a.theta < 1e-13) break;
    auto mid = detail::make_support(c, 0.5 * (a.theta + tb));
    // Flat edge: w lies outside the range across it.
    if (std::abs(mid.z - a.z) <= 1e-13 * scale || std::abs(mid.z - b.z) <= 1e-13 * scale) break;
    s.insert(s.begin() + edge + 1, std::move(mid));
  }
  // Outside (or on a boundary arc within rounding): nearest boundary point.
  auto g = [&](double t) { return (std::polar(1.0, -t) * w).real() - support_function(c, t); };
  double best_t = 0.0, best_g = -std::numeric_limits<double>::infinity();
  const int gg = std::max(grid, 64);
  for (int k = 0; k < gg; ++k) {
    const double t = 2.0 * kPi * k / gg;
    const double v = g(t);
    if (v > best_g) {
      best_g = v;
      best_t = t;
    }
  }
  const double step = 2.0 * kPi / gg;
  best_t = golden_max(g, best_t - step, best_t + step, 1e-12);
  const auto pm = detail::make_support(c, best_t - 1e-7);
  const auto pp = detail::make_support(c, best_t + 1e-7);
  const auto p0 = detail::make_support(c, best_t);
  FovPoint cand0 = out;
  {
    cand0.vector = p0.v;
    cand0.value = p0.z;
    cand0.distance = std::abs(p0.z - w);
  }
  if (std::abs(pp.z - pm.z) > 1e-10 * scale) {
    const cplx q = nearest_on_segment(w, pm.z, pp.z);
    const Vec v = fov_solve_2d(c, pm.v, pp.v, q);
    FovPoint cand1;
    cand1.vector = v;
    cand1.value = expectation(c, v);
    cand1.distance = std::abs(cand1.value - w);
    if (cand1.distance < cand0.distance) return cand1;
  }
  return cand0;
}

// Unit x with <x|c|x> = w within tol, if w belongs to the numerical range.
inline std::optional<Vec> fov_preimage(const Mat& c, cplx w, double tol = kTol.preimage) {
  const auto fp = fov_nearest(c, w);
  const double scale = std::max(1.0, std::max(max_abs(c), std::abs(w)));
  if (fp.distance <= tol * scale) return fp.vector;
  return std::nullopt;
}

//============================================================================
// Minkowski product
//============================================================================

struct MinkowskiOptions {
  int bins = 2048;     // angular bins of the polar sweep about the origin
  int samples = 1024;  // boundary samples per factor
};

namespace detail {

// Boundary samples of a set with roughly `count` points; flat sets also get
// the point nearest to the origin.
inline std::vector<cplx> boundary_samples(const PlanarSet& s, int count) {
  if (s.is_point()) return s.boundary;
  auto perimeter = [](const std::vector<cplx>& p, bool closed) {
    double l = 0.0;
    if (p.size() < 2) return l;
    for (size_t i = 0; i + 1 < p.size(); ++i) l += std::abs(p[i + 1] - p[i]);
    if (closed) l += std::abs(p.front() - p.back());
    return l;
  };
  const bool cl = s.closed && !s.flat;
  const double total = perimeter(s.boundary, cl) + perimeter(s.inner, true);
  const double spacing = total / std::max(count, 2);
  std::vector<cplx> out = densify(s.boundary, cl, spacing);
  if (s.boundary.size() > 1 && spacing > 0.0) {
    // Densify keeps the original vertices; drop near-duplicates when the
    // input is already denser than requested.
    std::vector<cplx> thin;
    for (cplx z : out)
      if (thin.empty() || std::abs(z - thin.back()) >= 0.5 * spacing) thin.push_back(z);
    if (!cl && !out.empty() && thin.back() != out.back()) thin.push_back(out.back());
    out.swap(thin);
  }
  if (!s.inner.empty()) {
    const auto in = densify(s.inner, true, spacing);
    out.insert(out.end(), in.begin(), in.end());
  }
  // Keep the points nearest to the origin so that the smallest modulus of a
  // product is attained by a sample pair.
  auto nearest = [&out](const std::vector<cplx>& poly, bool cl) {
    const size_t n = poly.size();
    if (n < 2) return;
    cplx best = poly[0];
    const size_t edges = cl ? n : n - 1;
    for (size_t i = 0; i < edges; ++i) {
      const cplx z = nearest_on_segment(cplx(0.0, 0.0), poly[i], poly[(i + 1) % n]);
      if (std::abs(z) < std::abs(best)) best = z;
    }
    out.push_back(best);
  };
  if (s.flat && s.boundary.size() >= 2)
    out.push_back(nearest_on_segment(cplx(0.0, 0.0), s.boundary.front(), s.boundary.back()));
  else
    nearest(s.boundary, cl);
  nearest(s.inner, true);
  return out;
}

// Replaces a collinear boundary by the segment between its extreme points.
inline void collapse_if_flat(PlanarSet& s) {
  if (s.boundary.empty()) return;
  cplx a = s.boundary.front(), b = a;
  double far = 0.0;
  for (cplx z : s.boundary)
    if (std::abs(z - a) > far) far = std::abs(z - a), b = z;
  for (cplx z : s.boundary)
    if (std::abs(z - b) > far) far = std::abs(z - b), a = z;
  if (far <= 1e-13 * std::max(1.0, std::abs(a))) {
    s = PlanarSet::point(a);
    return;
  }
  if (s.boundary.size() < 3) {
    s.closed = false;
    s.flat = true;
    s.orientation = std::arg(s.boundary.back() - s.boundary.front());
    return;
  }
  double dev = 0.0;
  for (cplx z : s.boundary) dev = std::max(dev, dist_point_segment(z, a, b));
  for (cplx z : s.inner) dev = std::max(dev, dist_point_segment(z, a, b));
  if (dev <= 1e-12 * std::max(1.0, far)) {
    // Orient the segment by increasing real part (then imaginary).
    if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag())) std::swap(a, b);
    s = PlanarSet::segment(a, b, static_cast<int>(s.boundary.size()));
  }
}

}  // namespace detail

// Z1 (x) Z2 = { z1 z2 }. All pairwise products of boundary samples are swept
// in polar bins about the origin; each bin keeps its largest and smallest
// modulus. When neither factor contains 0 and the products wind all the way
// around, the smallest-modulus curve becomes a hole boundary.
inline PlanarSet minkowski_product(const PlanarSet& a, const PlanarSet& b,
                                   const MinkowskiOptions& opt = {}) {
  if (a.empty() || b.empty()) throw DomainError("Minkowski product of an empty set");
  if (a.is_point() || b.is_point()) {
    // Scaling by a single complex number is exact.
    const cplx w = a.is_point() ? a.boundary[0] : b.boundary[0];
    PlanarSet s = a.is_point() ? b : a;
    for (auto* v : {&s.boundary, &s.inner, &s.interior})
      for (cplx& z : *v) z *= w;
    s.orientation += std::arg(w);
    if (w == cplx(0.0, 0.0)) return PlanarSet::point(w);
    return s;
  }
  const auto sa = detail::boundary_samples(a, opt.samples);
  const auto sb = detail::boundary_samples(b, opt.samples);
  const double scale_a = a.max_modulus(), scale_b = b.max_modulus();
  const double zero_tol = 1e-12 * std::max(1.0, scale_a * scale_b);
  const bool zero_in = a.contains(cplx(0.0, 0.0), 1e-12 * std::max(1.0, scale_a)) ||
                       b.contains(cplx(0.0, 0.0), 1e-12 * std::max(1.0, scale_b));

  // Occupied arguments on a fine histogram to find the angular window.
  const int hist = 8 * opt.bins;
  std::vector<char> occupied(static_cast<size_t>(hist), 0);
  const size_t na = sa.size(), nb = sb.size();
  auto hist_bin = [hist](double t) {
    int k = static_cast<int>(std::floor((t + kPi) / (2.0 * kPi) * hist));
    return std::clamp(k, 0, hist - 1);
  };
  auto visit = [&](auto&& fn) {
    for (size_t i = 0; i < na; ++i)
      for (size_t j = 0; j < nb; ++j) {
        const cplx z = sa[i] * sb[j];
        if (std::abs(z) > zero_tol) fn(z, std::arg(z));
      }
  };
  bool any_nonzero = false;
  visit([&](cplx, double t) {
    occupied[static_cast<size_t>(hist_bin(t))] = 1;
    any_nonzero = true;
  });
  if (!any_nonzero) return PlanarSet::point(cplx(0.0, 0.0));

  // Largest circular run of empty histogram cells.
  int gap_len = 0, gap_end = -1;
  {
    int run = 0;
    for (int k = 0; k < 2 * hist; ++k) {
      if (!occupied[static_cast<size_t>(k % hist)]) {
        ++run;
        if (run > gap_len && run <= hist) {
          gap_len = run;
          gap_end = k % hist;
        }
      } else {
        run = 0;
      }
    }
  }
  const bool full = gap_len <= 1;
  double t0 = -kPi, span = 2.0 * kPi;
  if (!full) {
    t0 = -kPi + 2.0 * kPi * ((gap_end + 1) % hist) / hist;
    span = 2.0 * kPi * (hist - gap_len) / hist;
  }
  const int bins = opt.bins;
  auto bin_of = [&](double arg) {
    double t = arg - t0;
    t = std::fmod(t + 4.0 * kPi, 2.0 * kPi);
    int k = static_cast<int>(std::floor(t / span * bins));
    return std::clamp(k, 0, bins - 1);
  };
  std::vector<double> rmax(static_cast<size_t>(bins), -1.0);
  std::vector<double> rmin(static_cast<size_t>(bins), std::numeric_limits<double>::infinity());
  std::vector<cplx> zmax(static_cast<size_t>(bins)), zmin(static_cast<size_t>(bins));
  // Extreme-argument candidates (farthest on ties): corners at the ends of
  // the angular window that a single point per bin would cut off.
  double rel_lo = std::numeric_limits<double>::infinity(), rel_hi = -1.0;
  cplx z_lo, z_hi;
  visit([&](cplx z, double t) {
    const double r = std::abs(z);
    const auto k = static_cast<size_t>(bin_of(t));
    if (r > rmax[k]) rmax[k] = r, zmax[k] = z;
    if (r < rmin[k]) rmin[k] = r, zmin[k] = z;
    const double rel = std::fmod(t - t0 + 4.0 * kPi, 2.0 * kPi);
    if (rel < rel_lo - 1e-12 || (rel <= rel_lo + 1e-12 && r > std::abs(z_lo))) rel_lo = rel, z_lo = z;
    if (rel > rel_hi + 1e-12 || (rel >= rel_hi - 1e-12 && r > std::abs(z_hi))) rel_hi = rel, z_hi = z;
  });
  // Exact crossings of each bin-center ray with the curves w * dB (w a
  // sample of the other factor). Point pairs alone leave bins empty where a
  // curve runs tangentially.
  const double width = span / bins;
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  auto sweep_curves = [&](const std::vector<cplx>& ws, const std::vector<cplx>& poly, bool cl) {
    const size_t n = poly.size();
    if (n < 2) return;
    const size_t edges = cl ? n : n - 1;
    std::vector<double> ang(n), turn(edges);
    for (size_t i = 0; i < n; ++i) ang[i] = std::arg(poly[i]);
    for (size_t i = 0; i < edges; ++i) turn[i] = std::remainder(ang[(i + 1) % n] - ang[i], 2.0 * kPi);
    for (cplx w : ws) {
      if (std::abs(w) <= zero_tol) continue;
      const double aw = std::arg(w);
      for (size_t i = 0; i < edges; ++i) {
        const cplx p = w * poly[i], d = w * (poly[(i + 1) % n] - poly[i]);
        const double cpd = cross(p, d);
        if (std::abs(d) == 0.0 || cpd == 0.0) continue;
        const double rp = std::fmod(aw + ang[i] - t0 + 8.0 * kPi, 2.0 * kPi);
        const double lo = std::min(rp, rp + turn[i]), hi = std::max(rp, rp + turn[i]);
        for (double shift : {0.0, -2.0 * kPi}) {
          const auto k0 = static_cast<long>(std::ceil((lo + shift) / width - 0.5));
          const auto k1 = static_cast<long>(std::floor((hi + shift) / width - 0.5));
          for (long kk = k0; kk <= k1; ++kk) {
            long k = kk;
            if (full) k = ((k % bins) + bins) % bins;
            if (k < 0 || k >= bins) continue;
            const double t = t0 + (static_cast<double>(k) + 0.5) * width;
            const cplx u(std::cos(t), std::sin(t));
            const double den = cross(u, d);
            if (den == 0.0) continue;
            const double r = cpd / den;
            if (!(r > zero_tol)) continue;
            const auto b = static_cast<size_t>(k);
            if (r > rmax[b]) rmax[b] = r, zmax[b] = r * u;
            if (r < rmin[b]) rmin[b] = r, zmin[b] = r * u;
          }
          if (full) break;
        }
      }
    }
  };
  for (const auto* f : {&a, &b}) {
    const auto& ws = f == &a ? sb : sa;
    sweep_curves(ws, f->boundary, f->closed && !f->flat);
    sweep_curves(ws, f->inner, true);
  }

  std::vector<cplx> outer, inner;
  for (int k = 0; k < bins; ++k) {
    const auto u = static_cast<size_t>(k);
    if (rmax[u] < 0.0) continue;
    outer.push_back(zmax[u]);
    inner.push_back(zmin[u]);
  }
  PlanarSet s;
  s.closed = true;
  if (zero_in) {
    if (!full) s.boundary = {cplx(0.0, 0.0), z_lo};
    s.boundary.insert(s.boundary.end(), outer.begin(), outer.end());
    if (!full) s.boundary.push_back(z_hi);
  } else if (!full) {
    s.boundary = {z_lo};
    s.boundary.insert(s.boundary.end(), outer.begin(), outer.end());
    s.boundary.push_back(z_hi);
    s.boundary.insert(s.boundary.end(), inner.rbegin(), inner.rend());
  } else {
    s.boundary = outer;
    s.inner = inner;
  }
  detail::collapse_if_flat(s);
  return s;
}

// Lambda(A1 (x) ... (x) Am) for a tensor product operator, as the iterated
// Minkowski product of the factor numerical ranges.
inline PlanarSet product_range_of_tensor(const std::vector<Mat>& factors, int angles = 720,
                                         const MinkowskiOptions& opt = {}) {
  if (factors.empty()) throw DimensionError("need at least one factor");
  PlanarSet acc = numerical_range(factors[0], angles);
  for (size_t i = 1; i < factors.size(); ++i)
    acc = minkowski_product(acc, numerical_range(factors[i], angles), opt);
  return acc;
}

inline PlanarSet product_range_of_tensor(const std::vector<ComplexMatrix>& factors,
                                         int angles = 720, const MinkowskiOptions& opt = {}) {
  std::vector<Mat> m;
  for (const auto& f : factors) m.push_back(f.mat());
  return product_range_of_tensor(m, angles, opt);
}

inline PlanarSet minkowski_power(const PlanarSet& s, int n, const MinkowskiOptions& opt = {}) {
  if (n < 1) throw DomainError("power must be >= 1");
  PlanarSet acc = s;
  for (int i = 1; i < n; ++i) acc = minkowski_product(acc, s, opt);
  return acc;
}

}  // namespace rr
