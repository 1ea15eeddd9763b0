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

// Worked operator families with closed-form restricted ranges. These serve
// as ground truth for the optimizers.

#include <algorithm>
#include <cmath>
#include <vector>

#include "rr/linalg.hpp"
#include "rr/planar.hpp"
#include "rr/product.hpp"
#include "rr/random.hpp"

namespace rr {

namespace detail {
inline void require_nonneg(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be >= 0");
}
inline void require_in(double v, double lo, double hi, const char* what) {
  if (!(v >= lo - 1e-15 && v <= hi + 1e-15))
    throw DomainError(std::string(what) + " out of range");
}
inline const TensorSpace& qubit_pair() {
  static const TensorSpace sp({2, 2});
  return sp;
}
}  // namespace detail

//----------------------------------------------------------------------------
// Constructors
//----------------------------------------------------------------------------

inline HermitianMatrix yts(double a, double b, double c, double d, double t, double s) {
  detail::require_nonneg(t, "t");
  detail::require_nonneg(s, "s");
  Mat y = Mat::Zero(4, 4);
  y(0, 0) = a;
  y(1, 1) = b;
  y(2, 2) = c;
  y(3, 3) = d;
  y(0, 3) = y(3, 0) = t;
  y(1, 2) = y(2, 1) = s;
  return HermitianMatrix(y, detail::qubit_pair());
}

inline HermitianMatrix xts(double t, double s) { return yts(2.0, 1.0, -1.0, -2.0, t, s); }

// Tridiagonal block-positivity family; c = x a.
inline HermitianMatrix dfam(cplx a, cplx b, double x) {
  const cplx c = x * a;
  Mat d = Mat::Identity(4, 4) * 0.5;
  d(0, 1) = a;
  d(1, 0) = std::conj(a);
  d(1, 2) = b;
  d(2, 1) = std::conj(b);
  d(2, 3) = c;
  d(3, 2) = std::conj(c);
  return HermitianMatrix(d, detail::qubit_pair());
}

inline Mat pauli(int k) {
  Mat s = Mat::Zero(2, 2);
  switch (k) {
    case 0: s = Mat::Identity(2, 2); break;
    case 1: s(0, 1) = s(1, 0) = 1.0; break;
    case 2: s(0, 1) = cplx(0, -1); s(1, 0) = cplx(0, 1); break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw DomainError("Pauli index must be 0..3");
  }
  return s;
}

// exp(i sum_k alpha_k sigma_k (x) sigma_k), alpha_k in [0, pi/4].
inline ComplexMatrix ud(double a1, double a2, double a3) {
  const double al[3] = {a1, a2, a3};
  Mat h = Mat::Zero(4, 4);
  for (int k = 0; k < 3; ++k) {
    detail::require_in(al[k], 0.0, kPi / 4, "alpha");
    h += al[k] * kron(pauli(k + 1), pauli(k + 1));
  }
  return ComplexMatrix(expi_hermitian(h), detail::qubit_pair());
}

// U_d E U_d^dagger with E = diag(x1, x2, x3, 1 - x1 - x2 - x3), alpha_2 = alpha_3 = 0.
inline DensityMatrix rho_alpha(double a1, double x1, double x2, double x3) {
  const double x4 = 1.0 - x1 - x2 - x3;
  for (double v : {x1, x2, x3, x4}) detail::require_in(v, 0.0, 1.0, "diagonal weight");
  Mat e = Mat::Zero(4, 4);
  e.diagonal() << x1, x2, x3, x4;
  const Mat u = ud(a1, 0.0, 0.0).mat();
  return DensityMatrix(hermitian_part(u * e * u.adjoint()), detail::qubit_pair());
}

// Normal matrix with spectrum {i, -1, -i, 1} rotated by U_d(alpha, 0, 0).
inline ComplexMatrix x_alpha(double alpha) {
  Mat d = Mat::Zero(4, 4);
  d.diagonal() << cplx(0, 1), -1.0, cplx(0, -1), 1.0;
  const Mat u = ud(alpha, 0.0, 0.0).mat();
  return ComplexMatrix(u * d * u.adjoint(), detail::qubit_pair());
}

inline ComplexMatrix u1qubit(double phi) {
  Mat u = Mat::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, phi);
  return ComplexMatrix(u, TensorSpace({2}));
}

// U^{(x) n} on n qubits.
inline ComplexMatrix u_tensor(double phi, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const Mat u = u1qubit(phi).mat();
  Mat out = u;
  for (int i = 1; i < n; ++i) out = kron(out, u);
  return ComplexMatrix(out, TensorSpace(std::vector<int>(static_cast<size_t>(n), 2)));
}

// diag(1, e^{i phi}, e^{i psi}, 1), phi, psi in [0, 2 pi].
inline ComplexMatrix vfam(double phi, double psi) {
  detail::require_in(phi, 0.0, 2 * kPi, "phi");
  detail::require_in(psi, 0.0, 2 * kPi, "psi");
  Mat v = Mat::Zero(4, 4);
  v.diagonal() << 1.0, std::polar(1.0, phi), std::polar(1.0, psi), 1.0;
  return ComplexMatrix(v, detail::qubit_pair());
}

//----------------------------------------------------------------------------
// Closed forms
//----------------------------------------------------------------------------

inline double xts_edge(double t) {
  if (t < std::sqrt(3.0)) return 2.0;
  return std::sqrt(t * t * t * t + 10 * t * t + 9) / (2 * t);
}

inline Interval xts_exact_pnr(double t, double s) {
  detail::require_nonneg(t, "t");
  detail::require_nonneg(s, "s");
  const double f = xts_edge(t + s);
  return {-f, f};
}

// One-sided: the returned interval is contained in the product range.
inline Interval yts_inner_bound(double a, double b, double c, double d, double t, double s) {
  detail::require_nonneg(t, "t");
  detail::require_nonneg(s, "s");
  const double q = 0.25 * (a + b + c + d);
  const double u = t + s;
  const double f = std::min(std::min({a, b, c, d}), q - 0.5 * u);
  const double g = std::max(std::max({a, b, c, d}), q + 0.5 * u);
  return {f, g};
}

inline double d_family_g(cplx a, cplx b, double x) {
  const cplx c = x * a;
  return 0.25 * (std::abs(a + c) + std::sqrt(std::norm(a - c) + std::norm(b)));
}

inline Interval d_exact_pnr(cplx a, cplx b, double x) {
  const double g = d_family_g(a, b, x);
  return {0.5 - g, 0.5 + g};
}

// Product range of the displayed tridiagonal matrix as found by direct
// optimization and brute force: the half-width is 2G, not G. E.g. a = 1/2,
// b = c = 0 gives D = I/2 + |0><0| (x) sigma_x / 2 and <0,+|D|0,+> = 1.
inline Interval d_observed_pnr(cplx a, cplx b, double x) {
  const double g = 2.0 * d_family_g(a, b, x);
  return {0.5 - g, 0.5 + g};
}

// Boundary of the product range of U^{(x) n}: the outer polyline through
// 1, e^{i phi}, ..., e^{i n phi}, closed by the inner curve
// e^{i n alpha} (cos(phi/2) / cos(alpha - phi/2))^n traversed backwards.
inline PlanarSet u_tensor_boundary(double phi, int n, int resolution = 721) {
  if (n < 1) throw DomainError("n must be >= 1");
  detail::require_in(phi, 0.0, 2 * kPi, "phi");
  if (phi == 0.0 || phi == 2 * kPi) return PlanarSet::point(1.0);
  if (std::abs(phi - kPi) < 1e-15) return PlanarSet::segment(-1.0, 1.0, resolution);
  const bool mirrored = phi > kPi;  // conjugate of the 2 pi - phi case
  const double p = mirrored ? 2 * kPi - phi : phi;
  resolution = std::max(resolution | 1, 9);
  if (n == 1) {
    auto s = PlanarSet::segment(1.0, std::polar(1.0, phi), resolution);
    return s;
  }
  std::vector<cplx> pts;
  for (int k = 1; k <= n; ++k) {
    const cplx a = std::polar(1.0, (k - 1) * p), b = std::polar(1.0, k * p);
    for (int j = 0; j < resolution - 1; ++j)
      pts.push_back(a + (b - a) * (static_cast<double>(j) / (resolution - 1)));
  }
  // Inner curve, sampled uniformly but graded geometrically towards
  // alpha = phi/2 so the chords next to the closest point stay outside the
  // disk of radius cos(phi/2)^n.
  const double c = std::cos(p / 2);
  const double h = p / (resolution - 1);
  const double ratio = 1.0 + 0.5 / std::sqrt(static_cast<double>(n));
  std::vector<double> off{0.0};
  while (off.back() < p / 2) {
    const double step = std::min(h, std::max(1e-7, (ratio - 1.0) * off.back()));
    off.push_back(std::min(p / 2, off.back() + step));
  }
  std::vector<double> alphas;
  for (size_t j = off.size(); j-- > 1;) alphas.push_back(p / 2 + off[j]);
  for (double o : off) alphas.push_back(p / 2 - o);
  for (double al : alphas) pts.push_back(std::polar(std::pow(c / std::cos(al - p / 2), n), n * al));
  pts.pop_back();  // alpha = 0 repeats the first point
  if (mirrored)
    for (auto& z : pts) z = std::conj(z);
  return PlanarSet::polygon(std::move(pts));
}

// Boundary of the product range of V(phi, psi): segments e^{i phi} -> 1 ->
// e^{i psi} and the curve gamma(t) = t^2 e^{i phi} + (1-t)^2 e^{i psi} + 2t(1-t).
inline cplx v_gamma(double phi, double psi, double t) {
  return t * t * std::polar(1.0, phi) + (1 - t) * (1 - t) * std::polar(1.0, psi) + 2 * t * (1 - t);
}

inline PlanarSet v_exact_pnr_border(double phi, double psi, int resolution = 721) {
  detail::require_in(phi, 0.0, 2 * kPi, "phi");
  detail::require_in(psi, 0.0, 2 * kPi, "psi");
  const cplx ep = std::polar(1.0, phi), es = std::polar(1.0, psi);
  if (std::abs(ep - 1.0) < 1e-15 && std::abs(es - 1.0) < 1e-15) return PlanarSet::point(1.0);
  resolution = std::max(resolution, 9);
  std::vector<cplx> pts;
  for (int j = 0; j < resolution - 1; ++j)
    pts.push_back(ep + (1.0 - ep) * (static_cast<double>(j) / (resolution - 1)));
  for (int j = 0; j < resolution - 1; ++j)
    pts.push_back(1.0 + (es - 1.0) * (static_cast<double>(j) / (resolution - 1)));
  for (int j = 0; j < resolution - 1; ++j)
    pts.push_back(v_gamma(phi, psi, static_cast<double>(j) / (resolution - 1)));
  return PlanarSet::polygon(std::move(pts));
}

//----------------------------------------------------------------------------
// HS-random two-qubit ensemble
//----------------------------------------------------------------------------

// Density of the smallest eigenvalue of an HS-random 4 x 4 state and its CDF.
inline double hs_lambda1_density(double x) {
  if (x < 0.0 || x > 0.25) return 0.0;
  return 60.0 * std::pow(1.0 - 4.0 * x, 14);
}

inline double hs_lambda1_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 0.25) return 1.0;
  return 1.0 - std::pow(1.0 - 4.0 * x, 15);
}

struct HsSample {
  RealVec spectrum;  // ascending
  double pmin = 0.0, pmax = 0.0;
};

// Sample i uses the stream (seed, i), so the ensemble does not depend on the
// worker count. Set edges = false to skip the product-range search.
inline std::vector<HsSample> hs_ensemble(int count, std::uint64_t seed, const SeesawConfig& cfg = {},
                                         bool edges = true) {
  if (count < 1) throw DomainError("sample count must be >= 1");
  const TensorSpace sp({2, 2});
  return parallel_map<HsSample>(count, [&](int i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const HermitianMatrix rho(hs_density_mat(4, rng), sp);
    HsSample s;
    s.spectrum = eigenvalues(rho);
    if (edges) {
      SeesawConfig c = cfg;
      c.seed = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1));
      const auto r = pnr_hermitian(rho, c);
      s.pmin = r.lo;
      s.pmax = r.hi;
    }
    return s;
  });
}

}  // namespace rr
