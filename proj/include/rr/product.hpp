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
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "rr/linalg.hpp"
#include "rr/parallel.hpp"
#include "rr/planar.hpp"
#include "rr/random.hpp"
#include "rr/ranges.hpp"

namespace rr {

struct SeesawConfig {
  int restarts = 50;
  int max_iter = 500;
  double tol = 1e-11;
  std::uint64_t seed = 0;

  void validate() const {
    if (restarts < 1) throw DomainError("restarts must be >= 1");
    if (!(tol > 0.0)) throw DomainError("see-saw tolerance must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  }
};

// Stream namespaces keep generator sequences of different consumers apart.
namespace stream {
inline constexpr std::uint64_t haar_start = 0;
inline constexpr std::uint64_t cloud_sample = 1ULL << 40;
inline constexpr std::uint64_t directional = 2ULL << 40;
inline constexpr std::uint64_t distance = 3ULL << 40;
inline constexpr std::uint64_t kentangled = 4ULL << 40;
inline constexpr std::uint64_t unitary = 5ULL << 40;
}  // namespace stream

//============================================================================
// Contractions
//============================================================================

// W_j = psi_1 (x) ... (x) I_{n_j} (x) ... (x) psi_m, an N x n_j isometry.
inline Mat embedding(const std::vector<Vec>& factors, int j) {
  Mat w = Mat::Ones(1, 1);
  for (size_t i = 0; i < factors.size(); ++i) {
    if (static_cast<int>(i) == j) {
      const auto n = factors[i].size();
      w = kron(w, Mat(Mat::Identity(n, n)));
    } else {
      w = kron(w, Mat(factors[i]));
    }
  }
  return w;
}

// C_j = W_j^dagger X W_j: the operator seen by factor j when the others are fixed.
inline Mat contract(const Mat& x, const std::vector<Vec>& factors, int j) {
  const Mat w = embedding(factors, j);
  return w.adjoint() * (x * w);
}

inline Vec flatten_factors(const std::vector<Vec>& factors) {
  Vec out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

inline cplx product_expectation(const Mat& x, const std::vector<Vec>& factors) {
  const Vec v = flatten_factors(factors);
  if (v.size() != x.rows()) throw DimensionError("product state does not match operator order");
  return expectation(x, v);
}

inline cplx product_expectation(const ComplexMatrix& x, const ProductState& s) {
  if (x.has_space() && !(x.space() == s.space()))
    throw DimensionError("product state factors do not match the tensor space");
  return product_expectation(x.mat(), s.factors());
}

//============================================================================
// See-saw engine
//============================================================================

struct SeesawResult {
  std::vector<Vec> factors;
  cplx value;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // objective after each sweep, starting point first

  ProductState state() const { return ProductState(factors, 1e-9); }
};

// Local update: given the contracted operator and the current factor, return
// a new unit factor. Objective is maximized; updates that do not improve it
// are rejected, so history is nondecreasing.
using LocalStep = std::function<Vec(const Mat& c, const Vec& prev)>;
using ObjectiveFn = std::function<double(cplx value)>;

// A run also stops once the objective reaches `enough` (a known optimum).
inline SeesawResult seesaw_run(const Mat& x, std::vector<Vec> factors, const LocalStep& step,
                               const ObjectiveFn& objective, const SeesawConfig& cfg,
                               double enough = std::numeric_limits<double>::infinity()) {
  SeesawResult r;
  cplx val = product_expectation(x, factors);
  double obj = objective(val);
  r.history.push_back(obj);
  const int m = static_cast<int>(factors.size());
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double before = obj;
    for (int j = 0; j < m; ++j) {
      const Mat c = contract(x, factors, j);
      Vec v = step(c, factors[static_cast<size_t>(j)]);
      const double nv = v.norm();
      if (!(nv > 0.0)) continue;
      v /= nv;
      std::swap(factors[static_cast<size_t>(j)], v);
      const cplx nval = product_expectation(x, factors);
      const double nobj = objective(nval);
      if (nobj >= obj) {
        obj = nobj;
        val = nval;
      } else {
        std::swap(factors[static_cast<size_t>(j)], v);
      }
    }
    r.history.push_back(obj);
    r.iterations = it + 1;
    if (obj >= enough || obj - before <= cfg.tol * std::max(1.0, std::abs(obj))) {
      r.converged = true;
      break;
    }
  }
  r.factors = std::move(factors);
  r.value = val;
  r.objective = obj;
  return r;
}

namespace detail {

// Top eigenvector of a Hermitian matrix; inside a degenerate top eigenspace the
// vector with the largest overlap with `prev` is chosen.
inline Vec top_eigvec(const Mat& h, const Vec& prev) {
  const auto ed = eigh_unchecked(hermitian_part(h));
  const int n = static_cast<int>(ed.values.size());
  const double top = ed.values(n - 1);
  const double scale = std::max(1.0, std::abs(top));
  int first = n - 1;
  while (first > 0 && top - ed.values(first - 1) <= kTol.degeneracy * 1e3 * scale) --first;
  if (first == n - 1 || prev.size() != n) return ed.vectors.col(n - 1);
  const Mat sub = ed.vectors.rightCols(n - first);
  Vec proj = sub * (sub.adjoint() * prev);
  const double pn = proj.norm();
  if (pn < 1e-8) return ed.vectors.col(n - 1);
  return proj / pn;
}

}  // namespace detail

inline LocalStep hermitian_max_step() {
  return [](const Mat& c, const Vec& prev) { return detail::top_eigvec(c, prev); };
}

inline LocalStep hermitian_min_step() {
  return [](const Mat& c, const Vec& prev) { return detail::top_eigvec(-c, prev); };
}

// Factor maximizing |<v|C|v>|: a support vector in the best direction.
inline LocalStep modulus_step() {
  return [](const Mat& c, const Vec&) {
    const int grid = 48;
    double best = -1.0, bt = 0.0;
    for (int k = 0; k < grid; ++k) {
      const double t = 2.0 * kPi * k / grid;
      const double h = support_function(c, t);
      if (h > best) best = h, bt = t;
    }
    const double step = 2.0 * kPi / grid;
    bt = golden_max([&c](double t) { return support_function(c, t); }, bt - step, bt + step, 1e-12);
    return support_point(c, bt).vector;
  };
}

// Factor whose expectation is the point of Lambda(C) nearest to the target.
inline LocalStep distance_step(cplx target) {
  return [target](const Mat& c, const Vec&) { return fov_nearest(c, target).vector; };
}

//============================================================================
// Start states
//============================================================================

inline std::vector<Vec> basis_factors(const TensorSpace& sp, int index) {
  const auto multi = sp.unflatten(index);
  std::vector<Vec> f;
  for (int i = 0; i < sp.parties(); ++i) f.push_back(Vec::Unit(sp.dim(i), multi[static_cast<size_t>(i)]));
  return f;
}

inline std::vector<Vec> haar_factors(const TensorSpace& sp, std::uint64_t seed, std::uint64_t stream_id) {
  Rng rng(seed, stream_id);
  std::vector<Vec> f;
  for (int d : sp.dims()) f.push_back(haar_vector(d, rng));
  return f;
}

// Computational basis indices ordered by diagonal entry of x (descending when
// `largest`), ties by index; at most `count` of them.
inline std::vector<int> diagonal_order(const Mat& x, bool largest, int count) {
  std::vector<int> idx(static_cast<size_t>(x.rows()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double da = x(a, a).real(), db = x(b, b).real();
    return largest ? da > db : da < db;
  });
  idx.resize(static_cast<size_t>(std::min<int>(count, static_cast<int>(idx.size()))));
  return idx;
}

// Runs one see-saw per start and keeps the best objective (lowest start index
// on ties). Starts are independent so the fan is thread-count invariant.
struct FanResult {
  SeesawResult best;
  int best_index = -1;
  int converged = 0;
  int runs = 0;
};

inline FanResult seesaw_fan(const Mat& x, const std::vector<std::vector<Vec>>& starts,
                            const LocalStep& step, const ObjectiveFn& objective,
                            const SeesawConfig& cfg,
                            double enough = std::numeric_limits<double>::infinity()) {
  auto results = parallel_map<SeesawResult>(static_cast<int>(starts.size()), [&](int i) {
    return seesaw_run(x, starts[static_cast<size_t>(i)], step, objective, cfg, enough);
  });
  FanResult fr;
  fr.runs = static_cast<int>(results.size());
  for (size_t i = 0; i < results.size(); ++i) {
    if (results[i].converged) ++fr.converged;
    if (fr.best_index < 0 || results[i].objective > fr.best.objective) {
      fr.best = results[i];
      fr.best_index = static_cast<int>(i);
    }
  }
  return fr;
}

//============================================================================
// Hermitian product numerical range
//============================================================================

struct HermitianPNR {
  double lo = 0.0, hi = 0.0;
  ProductState witness_lo, witness_hi;
  int restarts = 0;            // see-saw runs per edge
  int restarts_converged = 0;  // over both edges
  bool interlacing_ok = true;
  int escalations = 0;

  Interval interval() const { return Interval(lo, hi); }
};

// Eigenvalue indices (0-based, ascending) of the dimension bounds: any
// subspace of dimension > N - 1 - sum(n_i - 1) holds a product vector.
inline std::pair<int, int> interlacing_indices(const TensorSpace& sp) {
  int d = 0;
  for (int n : sp.dims()) d += n - 1;
  const int n = sp.total();
  return {n - d - 1, d};  // lo <= lambda[first], hi >= lambda[second]
}

inline HermitianPNR pnr_hermitian(const HermitianMatrix& xh, const SeesawConfig& cfg = {}) {
  cfg.validate();
  if (!xh.has_space()) throw DimensionError("product range needs a declared tensor space");
  const TensorSpace& sp = xh.space();
  const Mat& x = xh.mat();
  const RealVec ev = eigenvalues(xh);
  const auto [ilo, ihi] = interlacing_indices(sp);
  int basis_count = 0;
  for (int n : sp.dims()) basis_count += n;

  HermitianPNR out;
  int haar = cfg.restarts;
  std::uint64_t haar_offset = 0;
  std::vector<std::vector<Vec>> haar_starts;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int round = 0; round < 3; ++round) {
    for (int i = static_cast<int>(haar_offset); i < haar; ++i)
      haar_starts.push_back(haar_factors(sp, cfg.seed, stream::haar_start + static_cast<std::uint64_t>(i)));
    std::vector<std::vector<Vec>> smax, smin;
    if (round == 0) {
      for (int i : diagonal_order(x, true, basis_count)) smax.push_back(basis_factors(sp, i));
      for (int i : diagonal_order(x, false, basis_count)) smin.push_back(basis_factors(sp, i));
    }
    for (size_t i = haar_offset; i < haar_starts.size(); ++i) {
      smax.push_back(haar_starts[i]);
      smin.push_back(haar_starts[i]);
    }
    const auto fmax = seesaw_fan(x, smax, hermitian_max_step(),
                                 [](cplx v) { return v.real(); }, cfg);
    const auto fmin = seesaw_fan(x, smin, hermitian_min_step(),
                                 [](cplx v) { return -v.real(); }, cfg);
    out.restarts += fmax.runs;
    out.restarts_converged += fmax.converged + fmin.converged;
    if (fmax.best.value.real() > hi) {
      hi = fmax.best.value.real();
      out.witness_hi = fmax.best.state();
    }
    if (fmin.best.value.real() < lo) {
      lo = fmin.best.value.real();
      out.witness_lo = fmin.best.state();
    }
    const double slack = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    out.interlacing_ok = lo <= ev(ilo) + slack && hi >= ev(ihi) - slack;
    if (out.interlacing_ok) break;
    if (round < 2) {
      ++out.escalations;
      haar_offset = static_cast<std::uint64_t>(haar);
      haar *= 4;
    }
  }
  out.lo = std::min(lo, hi);
  out.hi = std::max(lo, hi);
  return out;
}

//============================================================================
// Distance, modulus and directional searches
//============================================================================

// Basis starts are all of them for small spaces, at most 2 sum(n_i) otherwise.
inline int basis_start_cap(const TensorSpace& sp) {
  int s = 0;
  for (int n : sp.dims()) s += n;
  return std::min(sp.total(), 2 * s);
}

// Standard start set: computational basis product states then Haar starts.
inline std::vector<std::vector<Vec>> standard_starts(const TensorSpace& sp, const SeesawConfig& cfg,
                                                     int basis_cap, std::uint64_t stream_base) {
  std::vector<std::vector<Vec>> s;
  for (int i = 0; i < std::min(basis_cap, sp.total()); ++i) s.push_back(basis_factors(sp, i));
  for (int i = 0; i < cfg.restarts; ++i)
    s.push_back(haar_factors(sp, cfg.seed, stream_base + static_cast<std::uint64_t>(i)));
  return s;
}

namespace detail {

// Levenberg-Marquardt on <X> - w over all factors at once, moving each factor
// in its tangent space. Alternating steps crawl along folds of the range;
// the joint step does not. Only improving steps are accepted.
inline void polish_distance(const Mat& x, cplx w, SeesawResult& r, double hit, int max_steps = 200) {
  const size_t m = r.factors.size();
  auto residual = [&](const std::vector<Vec>& f) { return product_expectation(x, f) - w; };
  cplx res = r.value - w;
  double mu = -1.0;
  for (int it = 0; it < max_steps && std::abs(res) > hit; ++it) {
    const Vec psi = flatten_factors(r.factors);
    const Vec xpsi = x * psi, xhpsi = x.adjoint() * psi;
    std::vector<Vec> dirs;     // tangent directions, one per real parameter
    std::vector<size_t> owner;
    std::vector<double> jre, jim;
    for (size_t j = 0; j < m; ++j) {
      const Mat e = embedding(r.factors, static_cast<int>(j));
      const Vec g = e.adjoint() * xpsi, h = e.adjoint() * xhpsi;
      const Vec& v = r.factors[j];
      const Eigen::HouseholderQR<Mat> qr{Mat(v)};
      const Mat q = qr.householderQ();
      for (Eigen::Index k = 1; k < q.cols(); ++k) {
        const Vec t = q.col(k);
        for (const cplx c : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
          const Vec d = c * t;
          const cplx df = h.dot(d) + d.dot(g);  // h^dagger d + d^dagger g
          dirs.push_back(d);
          owner.push_back(j);
          jre.push_back(df.real());
          jim.push_back(df.imag());
        }
      }
    }
    const auto np = static_cast<Eigen::Index>(dirs.size());
    Eigen::MatrixXd jac(2, np);
    for (Eigen::Index k = 0; k < np; ++k) jac(0, k) = jre[static_cast<size_t>(k)], jac(1, k) = jim[static_cast<size_t>(k)];
    const Eigen::Matrix2d jjt = jac * jac.transpose();
    if (mu < 0.0) mu = 1e-3 * std::max(jjt.trace(), 1e-300);
    const Eigen::Vector2d rv(res.real(), res.imag());
    bool accepted = false;
    while (!accepted && mu < 1e12 * std::max(jjt.trace(), 1e-300)) {
      const Eigen::Vector2d y = (jjt + mu * Eigen::Matrix2d::Identity()).ldlt().solve(rv);
      const Eigen::VectorXd step = -jac.transpose() * y;
      std::vector<Vec> trial = r.factors;
      for (Eigen::Index k = 0; k < np; ++k) trial[owner[static_cast<size_t>(k)]] += step(k) * dirs[static_cast<size_t>(k)];
      for (auto& f : trial) f.normalize();
      const cplx tres = residual(trial);
      if (std::abs(tres) < std::abs(res)) {
        r.factors = std::move(trial);
        res = tres;
        mu = std::max(mu * 0.3, 1e-15 * jjt.trace());
        accepted = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
    r.history.push_back(-std::abs(res));
  }
  r.value = res + w;
  r.objective = -std::abs(res);
}

}  // namespace detail

// Product state minimizing |<X> - w|.
inline SeesawResult pnr_distance(const ComplexMatrix& x, cplx w, const SeesawConfig& cfg = {}) {
  cfg.validate();
  const double hit = 1e-14 * std::max({1.0, std::abs(w), max_abs(x.mat())});
  const auto objective = [w](cplx v) { return -std::abs(v - w); };
  // Uniform superpositions first: they reach tr X / N whenever X is diagonal.
  std::vector<Vec> uniform;
  for (int d : x.space().dims()) uniform.push_back(Vec::Constant(d, 1.0 / std::sqrt(double(d))));
  auto quick = seesaw_run(x.mat(), uniform, distance_step(w), objective, cfg, -hit);
  if (quick.objective >= -hit) return quick;
  // Haar starts: the restarts nearest to w out of a pool 16 times larger.
  // Plain Haar starts stall in local minima of non-convex ranges.
  const TensorSpace& sp = x.space();
  const int pool = 16 * cfg.restarts;
  std::vector<std::vector<Vec>> cand(static_cast<size_t>(pool));
  std::vector<double> gap(static_cast<size_t>(pool));
  parallel_for(pool, [&](int i) {
    const auto u = static_cast<size_t>(i);
    cand[u] = haar_factors(sp, cfg.seed, stream::distance + static_cast<std::uint64_t>(i));
    gap[u] = std::abs(product_expectation(x.mat(), cand[u]) - w);
  });
  std::vector<int> order(static_cast<size_t>(pool));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&gap](int i, int j) { return gap[static_cast<size_t>(i)] < gap[static_cast<size_t>(j)]; });
  std::vector<std::vector<Vec>> starts;
  for (int i = 0; i < std::min(basis_start_cap(sp), sp.total()); ++i) starts.push_back(basis_factors(sp, i));
  for (int i = 0; i < cfg.restarts; ++i) starts.push_back(std::move(cand[static_cast<size_t>(order[static_cast<size_t>(i)])]));
  auto fr = seesaw_fan(x.mat(), starts, distance_step(w), objective, cfg, -hit);
  SeesawResult best = quick.objective > fr.best.objective ? std::move(quick) : std::move(fr.best);
  detail::polish_distance(x.mat(), w, best, hit);
  return best;
}

// Product numerical radius r(X) = max |<X>| over product states.
struct RadiusResult {
  double radius = 0.0;
  ProductState witness;
  cplx value;
};

inline RadiusResult product_numerical_radius(const ComplexMatrix& x, const SeesawConfig& cfg = {}) {
  cfg.validate();
  const auto starts = standard_starts(x.space(), cfg, basis_start_cap(x.space()), stream::haar_start);
  auto fr = seesaw_fan(x.mat(), starts, modulus_step(), [](cplx v) { return std::abs(v); }, cfg);
  RadiusResult r;
  r.radius = std::abs(fr.best.value);
  r.witness = fr.best.state();
  r.value = fr.best.value;
  return r;
}

// Directional extreme: maximize Re(e^{-i theta} <X>).
inline SeesawResult pnr_directional(const ComplexMatrix& x, double theta, const SeesawConfig& cfg,
                                    int haar_starts, int basis_cap, std::uint64_t stream_id = 0) {
  SeesawConfig c = cfg;
  c.restarts = std::max(1, haar_starts);
  // The see-saw runs on the Hermitian part; values are reported for X.
  const Mat h = rotated_hermitian_part(x.mat(), theta);
  auto starts = standard_starts(x.space(), c, 0, stream::directional + 4096ULL * stream_id);
  const auto top = diagonal_order(h, true, basis_cap);
  for (auto it = top.rbegin(); it != top.rend(); ++it)
    starts.insert(starts.begin(), basis_factors(x.space(), *it));
  auto fr = seesaw_fan(h, starts, hermitian_max_step(), [](cplx v) { return v.real(); }, c);
  SeesawResult r = fr.best;
  r.value = product_expectation(x.mat(), r.factors);
  return r;
}

//============================================================================
// Point clouds
//============================================================================

struct PnrCloud {
  PlanarSet set;                     // boundary: hull of achieved points
  std::vector<cplx> points;          // every achieved value
  std::vector<ProductState> witnesses;  // parallel to points
};

struct CloudOptions {
  int samples = 2000;
  int directions = 72;
  int directional_starts = 4;
  int distance_starts = 8;
};

inline PnrCloud pnr_cloud(const ComplexMatrix& x, const CloudOptions& opt = {},
                          const SeesawConfig& cfg = {}) {
  cfg.validate();
  const TensorSpace& sp = x.space();
  PnrCloud out;
  const auto samples = parallel_map<std::vector<Vec>>(opt.samples, [&](int i) {
    return haar_factors(sp, cfg.seed, stream::cloud_sample + static_cast<std::uint64_t>(i));
  });
  for (const auto& f : samples) {
    out.points.push_back(product_expectation(x.mat(), f));
    out.witnesses.emplace_back(f, 1e-9);
  }
  const auto dirs = parallel_map<SeesawResult>(opt.directions, [&](int k) {
    return pnr_directional(x, 2.0 * kPi * k / opt.directions, cfg, opt.directional_starts, 2,
                           static_cast<std::uint64_t>(k));
  });
  for (const auto& r : dirs) {
    out.points.push_back(r.value);
    out.witnesses.push_back(r.state());
  }
  SeesawConfig dc = cfg;
  dc.restarts = opt.distance_starts;
  const int n = x.order();
  const cplx bary = x.mat().trace() / static_cast<double>(n);
  for (cplx w : {cplx(0.0, 0.0), bary}) {
    const auto r = pnr_distance(x, w, dc);
    out.points.push_back(r.value);
    out.witnesses.push_back(r.state());
  }
  PlanarSet s;
  s.boundary = convex_hull(out.points);
  s.closed = true;
  s.interior = out.points;
  detail::collapse_if_flat(s);
  if (s.flat) s.interior = out.points;
  out.set = s;
  return out;
}

// Separable numerical range: convex hull of the product numerical range.
inline PlanarSet separable_range(const ComplexMatrix& x, const SeesawConfig& cfg = {},
                                 const CloudOptions& opt = {}) {
  if (is_hermitian(x.mat())) {
    const auto r = pnr_hermitian(HermitianMatrix(x), cfg);
    if (r.hi - r.lo <= 1e-13 * std::max(1.0, std::abs(r.lo))) return PlanarSet::point(r.lo);
    return PlanarSet::segment(r.lo, r.hi);
  }
  auto c = pnr_cloud(x, opt, cfg);
  PlanarSet s;
  s.boundary = convex_hull(c.points);
  detail::collapse_if_flat(s);
  return s;
}

//============================================================================
// Product C-numerical radius
//============================================================================

// r_C(X) = max over local unitaries U = U_1 (x) ... (x) U_m of
// |tr(U X U^dagger C)|, by Riemannian gradient ascent on each U_j.
struct CRadiusResult {
  double radius = 0.0;
  std::vector<Mat> unitaries;
};

inline CRadiusResult product_c_radius(const ComplexMatrix& x, const ComplexMatrix& c,
                                      const SeesawConfig& cfg = {}) {
  cfg.validate();
  const TensorSpace& sp = x.space();
  if (c.order() != x.order()) throw DimensionError("C and X must share the tensor space");
  const int m = sp.parties();
  auto full = [&](const std::vector<Mat>& us) {
    Mat u = us[0];
    for (int i = 1; i < m; ++i) u = kron(u, us[static_cast<size_t>(i)]);
    return u;
  };
  auto value = [&](const std::vector<Mat>& us) {
    const Mat u = full(us);
    return (u * x.mat() * u.adjoint() * c.mat()).trace();
  };
  auto run = [&](int r) {
    std::vector<Mat> us;
    Rng rng(cfg.seed, stream::unitary + static_cast<std::uint64_t>(r));
    for (int d : sp.dims())
      us.push_back(r == 0 ? Mat(Mat::Identity(d, d)) : haar_unitary(d, rng));
    double f = std::abs(value(us));
    double eta = 0.5;
    for (int it = 0; it < cfg.max_iter; ++it) {
      const double before = f;
      for (int j = 0; j < m; ++j) {
        const Mat u = full(us);
        const Mat y = u * x.mat() * u.adjoint();
        const cplx z = (y * c.mat()).trace();
        const Mat comm = y * c.mat() - c.mat() * y;
        const Mat b = std::conj(z) * partial_trace_keep(comm, sp, j);
        const Mat a = 0.5 * (b.adjoint() - b);
        if (max_abs(a) < 1e-15) continue;
        // exp(eta a) = exp(i eta h) with h = -i a Hermitian.
        const Mat h = cplx(0.0, -1.0) * a;
        for (int bt = 0; bt < 40; ++bt) {
          std::vector<Mat> trial = us;
          trial[static_cast<size_t>(j)] = expi_hermitian(eta * h) * us[static_cast<size_t>(j)];
          const double nf = std::abs(value(trial));
          if (nf > f) {
            us = std::move(trial);
            f = nf;
            eta = std::min(eta * 1.5, 10.0);
            break;
          }
          eta *= 0.5;
          if (eta < 1e-14) break;
        }
        if (eta < 1e-14) eta = 1e-3;
      }
      if (f - before <= cfg.tol * std::max(1.0, f)) break;
    }
    return std::make_pair(f, us);
  };
  auto results = parallel_map<std::pair<double, std::vector<Mat>>>(cfg.restarts, run);
  CRadiusResult out;
  out.radius = -1.0;
  for (auto& r : results)
    if (r.first > out.radius) {
      out.radius = r.first;
      out.unitaries = r.second;
    }
  return out;
}

//============================================================================
// Higher-rank product numerical range (verification)
//============================================================================

// Basis vectors spanning the rank-l projector; the default map sends i to
// the product vector |i>|i>...|i>.
inline std::vector<std::vector<int>> diagonal_basis_map(const TensorSpace& sp, int l) {
  int cap = sp.dim(0);
  for (int d : sp.dims()) cap = std::min(cap, d);
  if (l < 1 || l > cap) throw DimensionError("rank l exceeds the smallest factor dimension");
  std::vector<std::vector<int>> map;
  for (int i = 0; i < l; ++i) map.emplace_back(static_cast<size_t>(sp.parties()), i);
  return map;
}

inline Mat basis_isometry(const TensorSpace& sp, const std::vector<std::vector<int>>& map) {
  Mat e = Mat::Zero(sp.total(), static_cast<Eigen::Index>(map.size()));
  for (size_t i = 0; i < map.size(); ++i) e(sp.flatten(map[i]), static_cast<Eigen::Index>(i)) = 1.0;
  return e;
}

struct CompressionResult {
  cplx lambda;
  double residual = 0.0;
  bool scalar = false;
};

inline CompressionResult compression(const Mat& x, const Mat& e, double tol = kTol.compression) {
  const Mat m = e.adjoint() * x * e;
  const auto l = m.rows();
  CompressionResult r;
  r.lambda = m.trace() / static_cast<double>(l);
  r.residual = max_abs(m - r.lambda * Mat::Identity(l, l));
  r.scalar = r.residual <= tol;
  return r;
}

inline std::optional<cplx> higher_rank_product_check(const ComplexMatrix& x, int l,
                                                     std::vector<std::vector<int>> map = {}) {
  const TensorSpace& sp = x.space();
  if (map.empty()) map = diagonal_basis_map(sp, l);
  if (static_cast<int>(map.size()) != l) throw DimensionError("basis map size must equal l");
  const auto r = compression(x.mat(), basis_isometry(sp, map));
  if (r.scalar) return r.lambda;
  return std::nullopt;
}

}  // namespace rr
