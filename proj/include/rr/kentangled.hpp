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
#include <vector>

#include "rr/linalg.hpp"
#include "rr/parallel.hpp"
#include "rr/product.hpp"
#include "rr/random.hpp"

namespace rr {

// Range over states of Schmidt number at most k (inner approximation).
struct KRangeResult {
  int k = 1;
  double lo = 0.0, hi = 0.0;
  SchmidtState witness_lo, witness_hi;
  int restarts_converged = 0;
  bool exact = false;  // k >= min(K, M): full spectrum

  Interval interval() const { return Interval(lo, hi); }
};

namespace detail {

inline SchmidtState schmidt_of(const Vec& psi, const TensorSpace& sp) {
  return schmidt(PureState::normalized(psi), sp);
}

// Orthonormal K x k frame: the given columns completed with vectors drawn
// from rng and orthogonalized.
inline Mat complete_frame(const Mat& cols, int k, Rng& rng) {
  const auto n = cols.rows();
  Mat out(n, k);
  int have = 0;
  auto push = [&](Vec v) {
    for (int i = 0; i < have; ++i) v -= out.col(i) * out.col(i).dot(v);
    for (int i = 0; i < have; ++i) v -= out.col(i) * out.col(i).dot(v);
    const double nv = v.norm();
    if (nv < 1e-10) return;
    out.col(have++) = v / nv;
  };
  for (Eigen::Index c = 0; c < cols.cols() && have < k; ++c) push(cols.col(c));
  int guard = 0;
  while (have < k && guard++ < 100) push(haar_vector(static_cast<int>(n), rng));
  return out;
}

// Extreme eigenvector of the compression W^dagger X W, continuing `prev`
// inside a degenerate eigenspace.
inline Vec compressed_step(const Mat& x, const Mat& w, const Vec& psi, bool maximize) {
  Mat h = w.adjoint() * x * w;
  if (!maximize) h = -h;
  const Vec prev = w.adjoint() * psi;
  return w * top_eigvec(h, prev);
}

struct KRun {
  Vec psi;
  double value = 0.0;
  bool converged = false;
};

// Alternates between H_K (x) span(F) and span(E) (x) H_M where E, F are the
// current Schmidt frames padded to k columns.
inline KRun k_seesaw(const Mat& x, int kdim, int mdim, int k, Vec psi, bool maximize,
                     const SeesawConfig& cfg, Rng& rng) {
  psi.normalize();
  auto val = [&](const Vec& v) { return expectation(x, v).real(); };
  double obj = maximize ? val(psi) : -val(psi);
  KRun run;
  const Mat ik = Mat::Identity(kdim, kdim), im = Mat::Identity(mdim, mdim);
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double before = obj;
    for (int side = 0; side < 2; ++side) {
      const Mat a = reshape_bipartite(psi, kdim, mdim);
      Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
      int rank = 0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > kTol.schmidt_cutoff) ++rank;
      rank = std::min(std::max(rank, 1), k);
      Mat w;
      if (side == 0) {
        const Mat f = complete_frame(svd.matrixV().leftCols(rank).conjugate(), k, rng);
        w = kron(ik, f);
      } else {
        const Mat e = complete_frame(svd.matrixU().leftCols(rank), k, rng);
        w = kron(e, im);
      }
      Vec cand = compressed_step(x, w, psi, maximize);
      cand.normalize();
      const double nobj = maximize ? val(cand) : -val(cand);
      if (nobj >= obj) {
        obj = nobj;
        psi = cand;
      }
    }
    if (obj - before <= cfg.tol * std::max(1.0, std::abs(obj))) {
      run.converged = true;
      break;
    }
  }
  run.psi = psi;
  run.value = maximize ? obj : -obj;
  return run;
}

// Random state of Schmidt rank at most k.
inline Vec random_rank_k(int kdim, int mdim, int k, Rng& rng) {
  const Mat g1 = ginibre(kdim, k, rng), g2 = ginibre(mdim, k, rng);
  Vec v = unreshape_bipartite(g1 * g2.transpose());
  return v / v.norm();
}

// Best Schmidt-rank-k approximation of psi.
inline Vec truncate_rank(const Vec& psi, int kdim, int mdim, int k) {
  const Mat a = reshape_bipartite(psi, kdim, mdim);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int r = std::min<int>(k, static_cast<int>(svd.singularValues().size()));
  Mat t = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal() *
          svd.matrixV().leftCols(r).adjoint();
  Vec v = unreshape_bipartite(t);
  return v / v.norm();
}

}  // namespace detail

// Levels 1..kmax computed in order; level j starts from the level j-1
// witnesses, so lo is nonincreasing and hi nondecreasing in j.
inline std::vector<KRangeResult> k_entangled_ladder(const HermitianMatrix& xh, int kmax,
                                                    const SeesawConfig& cfg = {}) {
  cfg.validate();
  if (!xh.has_space() || !xh.space().is_bipartite())
    throw DimensionError("k-entangled range needs a bipartite tensor space");
  const TensorSpace& sp = xh.space();
  const int kdim = sp.dim(0), mdim = sp.dim(1);
  const int kcap = std::min(kdim, mdim);
  if (kmax < 1 || kmax > kcap) throw DimensionError("k must lie in [1, min(K, M)]");
  const Mat& x = xh.mat();
  std::vector<KRangeResult> out;

  const auto ed = eigh(xh);
  const int n = sp.total();
  Vec prev_lo, prev_hi;
  for (int k = 1; k <= kmax; ++k) {
    KRangeResult r;
    r.k = k;
    if (k == kcap) {
      r.exact = true;
      r.lo = ed.values(0);
      r.hi = ed.values(n - 1);
      r.witness_lo = detail::schmidt_of(ed.vectors.col(0), sp);
      r.witness_hi = detail::schmidt_of(ed.vectors.col(n - 1), sp);
    } else if (k == 1) {
      const auto p = pnr_hermitian(xh, cfg);
      r.lo = p.lo;
      r.hi = p.hi;
      r.restarts_converged = p.restarts_converged;
      prev_lo = p.witness_lo.flatten();
      prev_hi = p.witness_hi.flatten();
      r.witness_lo = detail::schmidt_of(prev_lo, sp);
      r.witness_hi = detail::schmidt_of(prev_hi, sp);
    } else {
      // Starts: warm start, truncated extreme eigenvector, random rank-k states.
      const int count = 2 + cfg.restarts;
      auto solve = [&](bool maximize) {
        const Vec& warm = maximize ? prev_hi : prev_lo;
        const Vec eig = maximize ? Vec(ed.vectors.col(n - 1)) : Vec(ed.vectors.col(0));
        auto runs = parallel_map<detail::KRun>(count, [&](int i) {
          Rng rng(cfg.seed, stream::kentangled + 1000003ULL * static_cast<std::uint64_t>(k) +
                                2ULL * static_cast<std::uint64_t>(i) + (maximize ? 1ULL : 0ULL));
          Vec start;
          if (i == 0)
            start = warm;
          else if (i == 1)
            start = detail::truncate_rank(eig, kdim, mdim, k);
          else
            start = detail::random_rank_k(kdim, mdim, k, rng);
          return detail::k_seesaw(x, kdim, mdim, k, start, maximize, cfg, rng);
        });
        int best = 0, conv = 0;
        for (int i = 0; i < count; ++i) {
          if (runs[static_cast<size_t>(i)].converged) ++conv;
          const double v = runs[static_cast<size_t>(i)].value;
          const double b = runs[static_cast<size_t>(best)].value;
          if (maximize ? v > b : v < b) best = i;
        }
        return std::make_pair(runs[static_cast<size_t>(best)], conv);
      };
      const auto [rhi, chi] = solve(true);
      const auto [rlo, clo] = solve(false);
      r.hi = std::max(rhi.value, out.back().hi);
      r.lo = std::min(rlo.value, out.back().lo);
      prev_hi = rhi.value >= out.back().hi ? rhi.psi : prev_hi;
      prev_lo = rlo.value <= out.back().lo ? rlo.psi : prev_lo;
      r.witness_hi = detail::schmidt_of(prev_hi, sp);
      r.witness_lo = detail::schmidt_of(prev_lo, sp);
      r.restarts_converged = chi + clo;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline KRangeResult k_entangled_range(const HermitianMatrix& xh, int k, const SeesawConfig& cfg = {}) {
  if (!xh.has_space() || !xh.space().is_bipartite())
    throw DimensionError("k-entangled range needs a bipartite tensor space");
  const int kcap = std::min(xh.space().dim(0), xh.space().dim(1));
  if (k < 1 || k > kcap) throw DimensionError("k must lie in [1, min(K, M)]");
  return k_entangled_ladder(xh, k, cfg).back();
}

}  // namespace rr
