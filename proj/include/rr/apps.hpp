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

// Decision problems answered with restricted ranges: map positivity,
// distillability probes, minimum output entropy, local discrimination of
// unitaries, fidelity bounds and compression (dark subspace / code) checks.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rr/channels.hpp"
#include "rr/families.hpp"
#include "rr/kentangled.hpp"
#include "rr/lp.hpp"
#include "rr/product.hpp"
#include "rr/ranges.hpp"

namespace rr {

//============================================================================
// Verdicts
//============================================================================

enum class Status { violated, certified, no_violation_found };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::violated: return "violated";
    case Status::certified: return "certified";
    case Status::no_violation_found: return "no-violation-found";
  }
  return "unknown";
}

struct Certificate {
  Vec state;                   // flattened witness
  std::vector<Vec> factors;    // product witnesses only
  TensorSpace space{std::vector<int>{1}};
  cplx value;                  // <state|X|state>
};

struct Verdict {
  Status status = Status::no_violation_found;
  std::optional<Certificate> certificate;
  int restarts = 0;
  std::string method;
};

namespace detail {
inline Certificate make_certificate(const Mat& x, const Vec& psi, const TensorSpace& sp,
                                    std::vector<Vec> factors = {}) {
  Certificate c;
  c.state = psi;
  c.factors = std::move(factors);
  c.space = sp;
  c.value = expectation(x, psi);
  return c;
}

inline double psd_floor(const Mat& d) {
  return std::max(1.0, max_abs(d)) * kTol.violation;
}
}  // namespace detail

//============================================================================
// Positivity hierarchy
//============================================================================

// k = 1 tests positivity, k = min(K, M) complete positivity (exact).
inline Verdict is_k_positive(const ChoiMatrix& d, int k, const SeesawConfig& cfg = {}) {
  const int kcap = std::min(d.out_dim(), d.in_dim());
  if (k < 1 || k > kcap) throw DimensionError("k must lie in [1, min(K, M)]");
  const auto ed = eigh(d.hermitian());
  Verdict v;
  if (ed.values(0) >= -kTol.violation) {
    v.status = Status::certified;
    v.method = "positive semidefinite";
    return v;
  }
  if (k == kcap) {
    v.status = Status::violated;
    v.method = "spectrum";
    v.certificate = detail::make_certificate(d.mat(), ed.vectors.col(0), d.space());
    return v;
  }
  const auto r = k_entangled_range(d.hermitian(), k, cfg);
  v.restarts = r.restarts_converged;
  v.method = "k-entangled see-saw";
  if (r.lo < -kTol.violation) {
    const Vec psi = r.witness_lo.flatten();
    auto c = detail::make_certificate(d.mat(), psi, d.space());
    if (c.value.real() < -kTol.violation) {
      v.status = Status::violated;
      v.certificate = std::move(c);
    }
  }
  return v;
}

struct WitnessProfile {
  RealVec spectrum;
  int negatives = 0;
  int bound = 0;  // (K - 1)(M - 1)
  double product_min = 0.0;
  bool block_positive = false;
  bool within_bound = true;
};

// Negative eigenvalues of a block-positive operator are at most (K-1)(M-1).
inline WitnessProfile witness_profile(const HermitianMatrix& w, const SeesawConfig& cfg = {}) {
  if (!w.has_space() || !w.space().is_bipartite())
    throw DimensionError("witness profile needs a bipartite space");
  WitnessProfile p;
  p.spectrum = eigenvalues(w);
  const double tol = detail::psd_floor(w.mat());
  for (Eigen::Index i = 0; i < p.spectrum.size(); ++i)
    if (p.spectrum(i) < -tol) ++p.negatives;
  p.bound = (w.space().dim(0) - 1) * (w.space().dim(1) - 1);
  p.product_min = pnr_hermitian(w, cfg).lo;
  p.block_positive = p.product_min >= -tol;
  p.within_bound = p.negatives <= p.bound;
  return p;
}

//============================================================================
// Distillability
//============================================================================

// rho^{(x) n} regrouped as H_K^{(x) n} (x) H_M^{(x) n}.
inline HermitianMatrix regrouped_power(const HermitianMatrix& rho, int n) {
  const TensorSpace& sp = rho.space();
  const int k = sp.dim(0), m = sp.dim(1);
  Mat p = rho.mat();
  std::vector<int> dims{k, m};
  for (int i = 1; i < n; ++i) {
    p = kron(p, rho.mat());
    dims.push_back(k);
    dims.push_back(m);
  }
  const TensorSpace inter(dims);
  int kn = 1, mn = 1;
  for (int i = 0; i < n; ++i) kn *= k, mn *= m;
  const TensorSpace grouped({kn, mn});
  const int total = inter.total();
  std::vector<int> perm(static_cast<size_t>(total));
  for (int idx = 0; idx < total; ++idx) {
    const auto multi = inter.unflatten(idx);
    int a = 0, b = 0;
    for (int i = 0; i < n; ++i) {
      a = a * k + multi[static_cast<size_t>(2 * i)];
      b = b * m + multi[static_cast<size_t>(2 * i + 1)];
    }
    perm[static_cast<size_t>(idx)] = a * mn + b;
  }
  Mat out(total, total);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c) out(perm[static_cast<size_t>(r)], perm[static_cast<size_t>(c)]) = p(r, c);
  return HermitianMatrix(out, grouped);
}

// Negative Schmidt-rank-2 value of the partially transposed n-fold power
// certifies n-copy distillability. PPT states are certified nonnegative.
inline Verdict n_copy_distillable_probe(const DensityMatrix& rho, int n, const SeesawConfig& cfg = {}) {
  if (n < 1) throw DomainError("n must be >= 1");
  const HermitianMatrix& h = rho.hermitian();
  if (!h.has_space() || !h.space().is_bipartite())
    throw DimensionError("distillability probe needs a bipartite state");
  double size = 1.0;
  for (int i = 0; i < n; ++i) size *= h.space().total();
  if (size > 64.0) throw GuardError("K^n M^n exceeds 64");
  const auto grouped = regrouped_power(h, n);
  const HermitianMatrix pt(partial_transpose(grouped.mat(), grouped.space(), Side::second),
                           grouped.space());
  const auto ed = eigh(pt);
  Verdict v;
  if (ed.values(0) >= -kTol.violation) {
    v.status = Status::certified;
    v.method = "positive partial transpose";
    return v;
  }
  const int kcap = std::min(grouped.space().dim(0), grouped.space().dim(1));
  if (kcap <= 2) {
    v.status = Status::violated;
    v.method = "spectrum";
    v.certificate = detail::make_certificate(pt.mat(), ed.vectors.col(0), grouped.space());
    return v;
  }
  const auto r = k_entangled_range(pt, 2, cfg);
  v.restarts = r.restarts_converged;
  v.method = "schmidt-rank-2 see-saw";
  if (r.lo < -kTol.violation) {
    auto c = detail::make_certificate(pt.mat(), r.witness_lo.flatten(), grouped.space());
    if (c.value.real() < -kTol.violation) {
      v.status = Status::violated;
      v.certificate = std::move(c);
    }
  }
  return v;
}

//============================================================================
// Minimum output entropy
//============================================================================

inline double binary_entropy(double x) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  x = std::clamp(x, 0.0, 1.0);
  return term(x) + term(1.0 - x);
}

struct MoeResult {
  double value = 0.0;   // bits
  double lambda = 0.0;  // product minimum of the unnormalized Choi matrix
  ProductState witness;
};

inline MoeResult moe_qubit(const QuantumChannel& ch, const SeesawConfig& cfg = {}) {
  if (ch.in_dim() != 2 || ch.out_dim() != 2) throw DimensionError("moe_qubit needs a qubit channel");
  const auto r = pnr_hermitian(choi(ch).unnormalized(), cfg);
  MoeResult out;
  out.lambda = std::clamp(r.lo, 0.0, 1.0);
  out.value = binary_entropy(out.lambda);
  out.witness = r.witness_lo;
  return out;
}

// Closed form for the Werner-Holevo channel; p = -1 is the limit 0.
inline double werner_holevo_moe(double p) {
  if (std::abs(p) >= 1.0) return 0.0;
  return -(std::log(0.25 - p * p / 4.0) + 2.0 * p * std::atanh(p)) / std::log(4.0);
}

// Zero output entropy iff 1 is a product value of the unnormalized Choi matrix.
inline Verdict moe_is_zero(const QuantumChannel& ch, const SeesawConfig& cfg = {}) {
  const auto j = choi(ch).unnormalized();
  const auto r = pnr_hermitian(j, cfg);
  Verdict v;
  v.restarts = r.restarts;
  v.method = "product range of the Choi matrix";
  if (r.hi >= 1.0 - kTol.violation) {
    v.status = Status::certified;
    v.certificate = detail::make_certificate(j.mat(), r.witness_hi.flatten(), j.space(),
                                             r.witness_hi.factors());
  }
  return v;
}

//============================================================================
// Local discrimination of unitaries
//============================================================================

// Closed-form region: g1 <= 0, g2 <= 0, (phi, psi) not in {(0,0), (2pi,2pi)}.
inline std::pair<double, double> discrimination_g(double phi, double psi) {
  const double sp = std::sin(phi), ss = std::sin(psi);
  const double g1 = std::abs(ss) * std::cos(phi) + std::abs(sp) * std::cos(psi) + 2.0 * std::sqrt(std::abs(sp * ss));
  return {g1, sp * ss};
}

inline bool distinguishable_closed_form(double phi, double psi) {
  if ((phi == 0.0 && psi == 0.0) || (phi == 2 * kPi && psi == 2 * kPi)) return false;
  // Rounding slack: at phi = psi = pi both g vanish only up to ~1e-16.
  const auto [g1, g2] = discrimination_g(phi, psi);
  return g1 <= 1e-12 && g2 <= 1e-12;
}

namespace detail {

// Zero of t s v00 + t(1-s) v01 + (1-t) s v10 + (1-t)(1-s) v11 over [0,1]^2.
inline std::optional<std::pair<double, double>> diagonal_zero(cplx v00, cplx v01, cplx v10, cplx v11,
                                                              double tol = 1e-12) {
  const cplx a = v11, b = v01 - v11, c = v10 - v11, d = v00 - v01 - v10 + v11;
  auto value = [&](double t, double s) { return a + b * t + s * (c + d * t); };
  auto try_t = [&](double t) -> std::optional<std::pair<double, double>> {
    if (!(t >= -1e-12 && t <= 1 + 1e-12)) return std::nullopt;
    t = std::clamp(t, 0.0, 1.0);
    const cplx p = a + b * t, q = c + d * t;
    double s = 0.0;
    if (std::norm(q) > 1e-28) s = std::clamp((-p * std::conj(q)).real() / std::norm(q), 0.0, 1.0);
    if (std::abs(value(t, s)) <= tol) return std::make_pair(t, s);
    return std::nullopt;
  };
  // Im(P conj(Q)) = q0 + q1 t + q2 t^2 must vanish.
  const double q0 = (a * std::conj(c)).imag();
  const double q1 = (a * std::conj(d) + b * std::conj(c)).imag();
  const double q2 = (b * std::conj(d)).imag();
  std::vector<double> ts;
  const double qs = std::max({std::abs(q0), std::abs(q1), std::abs(q2)});
  if (qs <= 1e-14) {
    // Degenerate: the condition holds for every t.
    ts = {0.0, 1.0};
    if (std::abs(b) > 1e-15) ts.push_back((-a / b).real());
    if (std::abs(b + d) > 1e-15) ts.push_back((-(a + c) / (b + d)).real());
    for (int i = 0; i <= 200; ++i) ts.push_back(i / 200.0);
  } else if (std::abs(q2) <= 1e-14 * qs) {
    if (std::abs(q1) > 1e-14 * qs) ts.push_back(-q0 / q1);
  } else {
    const double disc = q1 * q1 - 4 * q2 * q0;
    if (disc >= -1e-14 * qs * qs) {
      const double sq = std::sqrt(std::max(disc, 0.0));
      // Stable roots.
      const double qq = -0.5 * (q1 + (q1 >= 0 ? sq : -sq));
      if (qq != 0.0) {
        ts.push_back(qq / q2);
        ts.push_back(q0 / qq);
      } else {
        ts.push_back(0.0);
      }
    }
  }
  ts.push_back(0.0);
  ts.push_back(1.0);
  for (double t : ts)
    if (auto r = try_t(t)) return r;
  return std::nullopt;
}

// Tensor factors of V when its realignment has rank one.
inline std::optional<std::pair<Mat, Mat>> tensor_factors(const Mat& v, int k, int m, double tol = 1e-10) {
  Mat r(k * k, m * m);
  for (int i = 0; i < k; ++i)
    for (int ip = 0; ip < k; ++ip)
      for (int j = 0; j < m; ++j)
        for (int jp = 0; jp < m; ++jp) r(i * k + ip, j * m + jp) = v(i * m + j, ip * m + jp);
  Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() > 1 && sv(1) > tol * sv(0)) return std::nullopt;
  const double s = std::sqrt(sv(0));
  Mat a(k, k), b(m, m);
  for (int i = 0; i < k; ++i)
    for (int ip = 0; ip < k; ++ip) a(i, ip) = s * svd.matrixU()(i * k + ip, 0);
  for (int j = 0; j < m; ++j)
    for (int jp = 0; jp < m; ++jp) b(j, jp) = s * std::conj(svd.matrixV()(j * m + jp, 0));
  return std::make_pair(a, b);
}

// 0 in the convex hull of points of equal modulus: largest angular gap <= pi.
inline bool hull_of_circle_points_has_zero(const Eigen::VectorXcd& ev) {
  std::vector<double> ang;
  for (Eigen::Index i = 0; i < ev.size(); ++i) ang.push_back(std::arg(ev(i)));
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2 * kPi - ang.back();
  for (size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
  return gap <= kPi + 1e-12;
}

inline bool is_diagonal(const Mat& v, double tol = 1e-14) {
  Mat off = v;
  off.diagonal().setZero();
  return max_abs(off) <= tol;
}

}  // namespace detail

// Distinguishable (status violated, with the product input as certificate)
// iff 0 lies in the product range of V = U1^dagger U2. Exact paths report
// certified when no such product input exists.
inline Verdict locally_distinguishable(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                       const SeesawConfig& cfg = {}) {
  if (u1.order() != u2.order()) throw DimensionError("unitaries must have equal order");
  if (!is_unitary(u1.mat()) || !is_unitary(u2.mat())) throw DomainError("inputs must be unitary");
  const TensorSpace sp = u1.has_space() ? u1.space() : u2.space();
  if (!sp.is_bipartite()) throw DimensionError("discrimination needs a bipartite space");
  const Mat v = u1.mat().adjoint() * u2.mat();
  const int k = sp.dim(0), m = sp.dim(1);
  Verdict out;
  auto distinguishable = [&](std::vector<Vec> f, const std::string& method) {
    out.status = Status::violated;
    out.method = method;
    const Vec psi = flatten_factors(f);
    out.certificate = detail::make_certificate(v, psi, sp, std::move(f));
    return out;
  };

  if (auto tf = detail::tensor_factors(v, k, m)) {
    const auto& [a, b] = *tf;
    out.method = "tensor factorization";
    const Eigen::VectorXcd ea = Eigen::ComplexEigenSolver<Mat>(a).eigenvalues();
    const Eigen::VectorXcd eb = Eigen::ComplexEigenSolver<Mat>(b).eigenvalues();
    const bool za = detail::hull_of_circle_points_has_zero(ea);
    const bool zb = detail::hull_of_circle_points_has_zero(eb);
    if (!za && !zb) {
      out.status = Status::certified;
      return out;
    }
    const Mat& z = za ? a : b;
    const Mat& other = za ? b : a;
    if (auto w = fov_preimage(z, 0.0, 1e-12)) {
      Vec o = Vec::Unit(other.rows(), 0);
      std::vector<Vec> f = za ? std::vector<Vec>{*w, o} : std::vector<Vec>{o, *w};
      return distinguishable(std::move(f), out.method);
    }
  }

  if (k == 2 && m == 2 && detail::is_diagonal(v)) {
    out.method = "exact diagonal solve";
    if (auto ts = detail::diagonal_zero(v(0, 0), v(1, 1), v(2, 2), v(3, 3))) {
      const auto [t, s] = *ts;
      Vec x(2), y(2);
      x << std::sqrt(t), std::sqrt(1 - t);
      y << std::sqrt(s), std::sqrt(1 - s);
      return distinguishable({x, y}, out.method);
    }
    out.status = Status::certified;
    return out;
  }

  const auto r = pnr_distance(ComplexMatrix(v, sp), 0.0, cfg);
  out.method = "distance see-saw";
  out.restarts = cfg.restarts;
  if (std::abs(r.value) <= kTol.violation) return distinguishable(r.factors, out.method);
  out.status = Status::no_violation_found;
  return out;
}

struct DiscriminationVector {
  double t = 0.0, s = 0.0;
  ProductState state;
  double residual = 0.0;
};

// Product input annihilating <V(phi, psi)>: first factor weights (t, 1 - t),
// second factor (s, 1 - s), with optional phases kappa / delta.
inline DiscriminationVector discrimination_vector(double phi, double psi, double kappa0 = 0.0,
                                                  double kappa1 = 0.0, double delta0 = 0.0,
                                                  double delta1 = 0.0) {
  detail::require_in(phi, 0.0, 2 * kPi, "phi");
  detail::require_in(psi, 0.0, 2 * kPi, "psi");
  if (!distinguishable_closed_form(phi, psi))
    throw NoCertificateError("not distinguishable: no product vector annihilates <V>");
  const cplx ep = std::polar(1.0, phi), es = std::polar(1.0, psi);
  auto residual = [&](double t, double s) {
    return std::abs(t * s + (1 - t) * (1 - s) + ep * t * (1 - s) + es * (1 - t) * s);
  };
  auto weight = [](double a, double b) {
    const double sa = std::sin(a), sb = std::sin(b), sab = std::sin(a - b);
    const double den = 2.0 * (std::abs(sa) + std::abs(sab) + std::abs(sb));
    if (den < 1e-300) return -1.0;
    const double disc = std::max(0.0, sab * sab + 4.0 * sa * sb);
    return (std::sqrt(disc) + std::abs(sab) + 2.0 * std::abs(sb)) / den;
  };
  DiscriminationVector out;
  double t = weight(phi, psi), s = weight(psi, phi);
  bool ok = t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0 && residual(t, s) <= 1e-10;
  if (!ok) {
    // Degenerate phases: direct solve of the bilinear equation.
    const auto z = detail::diagonal_zero(1.0, ep, es, 1.0, 1e-10);
    if (!z) throw NoCertificateError("no annihilating product vector found");
    t = z->first;
    s = z->second;
  }
  out.t = t;
  out.s = s;
  Vec x(2), y(2);
  x << std::polar(std::sqrt(t), kappa0), std::polar(std::sqrt(1 - t), kappa1);
  y << std::polar(std::sqrt(s), delta0), std::polar(std::sqrt(1 - s), delta1);
  out.state = ProductState({x, y}, 1e-12);
  out.residual = std::abs(product_expectation(vfam(phi, psi), out.state));
  return out;
}

//============================================================================
// Fidelity bounds and geometric entanglement
//============================================================================

inline RealVec sorted_desc(const RealVec& v) {
  RealVec s = v;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

// (sum_j sqrt(lambda_j mu_j))^2 with both vectors sorted decreasingly.
inline double pure_fidelity_bound(const RealVec& mu, const RealVec& lambda) {
  validate_probability(mu, "mu");
  validate_probability(lambda, "lambda");
  const RealVec a = sorted_desc(mu), b = sorted_desc(lambda);
  double s = 0.0;
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i)
    s += std::sqrt(std::max(0.0, a(i)) * std::max(0.0, b(i)));
  return std::min(1.0, s * s);
}

struct GeometricResult {
  double value = 0.0;    // bits
  double overlap = 0.0;  // max product fidelity
  ProductState witness;
};

// -log2 of the product numerical radius of the projector onto psi.
inline GeometricResult geometric_entanglement(const PureState& psi, const TensorSpace& sp,
                                              const SeesawConfig& cfg = {}) {
  if (sp.total() != psi.size()) throw DimensionError("state length does not match the space");
  const Vec& a = psi.amplitudes();
  const HermitianMatrix p(Mat(a * a.adjoint()), sp);
  const auto r = pnr_hermitian(p, cfg);
  GeometricResult g;
  g.overlap = std::clamp(r.hi, 0.0, 1.0);
  g.value = g.overlap >= 1.0 ? 0.0 : -std::log2(g.overlap);
  g.witness = r.witness_hi;
  return g;
}

//============================================================================
// Compressions of channels: dark subspaces and error-correcting codes
//============================================================================

struct CompressionEntry {
  int i = 0, j = 0;
  cplx lambda;
  double residual = 0.0;
  bool scalar = false;
};

struct CompressionReport {
  std::vector<CompressionEntry> entries;
  bool ok = true;
};

// P X_m P = lambda_m P for X_m = Y_m^dagger Y_m.
inline CompressionReport dark_subspace_check(const QuantumChannel& ch, const TensorSpace& in_space, int l,
                                             std::vector<std::vector<int>> map = {}) {
  if (in_space.total() != ch.in_dim()) throw DimensionError("input space does not match the channel");
  if (map.empty()) map = diagonal_basis_map(in_space, l);
  if (static_cast<int>(map.size()) != l) throw DimensionError("basis map size must equal l");
  const Mat e = basis_isometry(in_space, map);
  CompressionReport rep;
  for (size_t a = 0; a < ch.kraus().size(); ++a) {
    const Mat& y = ch.kraus()[a];
    const auto c = compression(y.adjoint() * y, e);
    rep.entries.push_back({static_cast<int>(a), static_cast<int>(a), c.lambda, c.residual, c.scalar});
    rep.ok = rep.ok && c.scalar;
  }
  return rep;
}

// Knill-Laflamme: P Y_i^dagger Y_j P = lambda_ij P for all pairs.
inline CompressionReport ecc_check(const QuantumChannel& ch, const TensorSpace& in_space, int l,
                                   std::vector<std::vector<int>> map = {}) {
  if (in_space.total() != ch.in_dim()) throw DimensionError("input space does not match the channel");
  if (map.empty()) map = diagonal_basis_map(in_space, l);
  if (static_cast<int>(map.size()) != l) throw DimensionError("basis map size must equal l");
  const Mat e = basis_isometry(in_space, map);
  CompressionReport rep;
  const auto& ks = ch.kraus();
  for (size_t i = 0; i < ks.size(); ++i)
    for (size_t j = 0; j < ks.size(); ++j) {
      const auto c = compression(ks[i].adjoint() * ks[j], e);
      rep.entries.push_back({static_cast<int>(i), static_cast<int>(j), c.lambda, c.residual, c.scalar});
      rep.ok = rep.ok && c.scalar;
    }
  return rep;
}

}  // namespace rr
