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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rr/config.hpp"

namespace rr {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

//============================================================================
// Tensor spaces
//============================================================================

// Ordered tensor decomposition H_N = H_{n_1} (x) ... (x) H_{n_m}.
class TensorSpace {
 public:
  TensorSpace() : dims_{1}, total_(1) {}

  explicit TensorSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty())
      throw DimensionError("tensor space needs at least one factor");
    total_ = 1;
    for (int d : dims_) {
      if (d < 1) throw DimensionError("tensor factor dimension must be >= 1");
      total_ *= d;
    }
  }

  static TensorSpace single(int n) { return TensorSpace({n}); }
  static TensorSpace bipartite(int k, int m) { return TensorSpace({k, m}); }

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_.at(static_cast<size_t>(i)); }
  int total() const { return total_; }
  bool is_bipartite() const { return dims_.size() == 2; }

  // Row-major multi-index of a flat basis index (first factor most significant).
  std::vector<int> unflatten(int index) const {
    std::vector<int> out(dims_.size());
    for (int i = parties() - 1; i >= 0; --i) {
      out[static_cast<size_t>(i)] = index % dims_[static_cast<size_t>(i)];
      index /= dims_[static_cast<size_t>(i)];
    }
    return out;
  }

  int flatten(const std::vector<int>& multi) const {
    if (multi.size() != dims_.size())
      throw DimensionError("multi-index has wrong number of factors");
    int index = 0;
    for (size_t i = 0; i < dims_.size(); ++i) {
      if (multi[i] < 0 || multi[i] >= dims_[i])
        throw DimensionError("multi-index component out of range");
      index = index * dims_[i] + multi[i];
    }
    return index;
  }

  bool operator==(const TensorSpace& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  int total_;
};

//============================================================================
// Operators
//============================================================================

// Square complex operator with an optional declared tensor factorization.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(Mat m, std::optional<TensorSpace> space = std::nullopt)
      : m_(std::move(m)), space_(std::move(space)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
      throw DimensionError("operator must be square and non-empty");
    if (space_ && space_->total() != m_.rows())
      throw DimensionError("tensor space total does not match operator order");
  }

  const Mat& mat() const { return m_; }
  int order() const { return static_cast<int>(m_.rows()); }
  bool has_space() const { return space_.has_value(); }
  const std::optional<TensorSpace>& space_opt() const { return space_; }

  const TensorSpace& space() const {
    if (!space_) throw DimensionError("operator has no declared tensor space");
    return *space_;
  }

  ComplexMatrix with_space(TensorSpace s) const {
    return ComplexMatrix(m_, std::move(s));
  }

 private:
  Mat m_;
  std::optional<TensorSpace> space_;
};

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Mat& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const Mat& m, double rel_tol = kTol.hermiticity) {
  if (m.rows() != m.cols()) return false;
  return hermiticity_defect(m) <= rel_tol * std::max(1.0, max_abs(m));
}

inline bool is_unitary(const Mat& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Mat::Identity(m.rows(), m.cols())) <= tol;
}

inline Mat hermitian_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

// Hermitian operator. Construction validates and then stores the exactly
// symmetrized matrix so downstream eigensolvers see no rounding asymmetry.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const ComplexMatrix& x) {
    if (!is_hermitian(x.mat()))
      throw DomainError("operator is not Hermitian within tolerance");
    x_ = ComplexMatrix(hermitian_part(x.mat()), x.space_opt());
  }

  explicit HermitianMatrix(const Mat& m,
                           std::optional<TensorSpace> space = std::nullopt)
      : HermitianMatrix(ComplexMatrix(m, std::move(space))) {}

  const ComplexMatrix& op() const { return x_; }
  const Mat& mat() const { return x_.mat(); }
  int order() const { return x_.order(); }
  bool has_space() const { return x_.has_space(); }
  const TensorSpace& space() const { return x_.space(); }

 private:
  ComplexMatrix x_;
};

//============================================================================
// Kronecker product
//============================================================================

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  std::vector<int> dims;
  auto append = [&dims](const ComplexMatrix& x) {
    if (x.has_space())
      dims.insert(dims.end(), x.space().dims().begin(), x.space().dims().end());
    else
      dims.push_back(x.order());
  };
  append(a);
  append(b);
  return ComplexMatrix(kron(a.mat(), b.mat()), TensorSpace(std::move(dims)));
}

//============================================================================
// Hermitian eigendecomposition
//============================================================================

struct EigenDecomposition {
  RealVec values;  // ascending
  Mat vectors;     // columns, orthonormal
};

// Makes the largest-modulus component of v real and positive.
inline void fix_phase(Eigen::Ref<Vec> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    // Strictly-larger with a small slack keeps the choice stable when two
    // components tie up to rounding.
    if (a > best * (1.0 + 1e-12) + 1e-300) {
      best = a;
      arg = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(arg)) / best;
}

namespace detail {

// Closed-form eigensystem of a 2x2 Hermitian matrix [[a, b], [conj(b), d]].
inline EigenDecomposition eigh2(const Mat& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double rad = std::hypot(half, std::abs(b));
  EigenDecomposition out;
  out.values.resize(2);
  out.values << mean - rad, mean + rad;
  out.vectors.resize(2, 2);
  if (rad == 0.0) {
    out.vectors.setIdentity();
    return out;
  }
  // Top eigenvector: (b, lambda_max - a) or (lambda_max - d, conj b),
  // whichever is numerically larger.
  Vec top(2), bot(2);
  if (half >= 0.0) {
    top << rad + half, std::conj(b);
  } else {
    top << b, rad - half;
  }
  top.normalize();
  bot << -std::conj(top(1)), std::conj(top(0));
  out.vectors.col(0) = bot;
  out.vectors.col(1) = top;
  return out;
}

// Unvalidated eigensolver used on hot paths; input must already be Hermitian.
inline EigenDecomposition eigh_unchecked(const Mat& h, bool fix_phases = true) {
  EigenDecomposition out;
  if (h.rows() == 1) {
    out.values.resize(1);
    out.values(0) = h(0, 0).real();
    out.vectors = Mat::Identity(1, 1);
    return out;
  }
  if (h.rows() == 2) {
    out = eigh2(h);
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  if (fix_phases)
    for (Eigen::Index j = 0; j < out.vectors.cols(); ++j)
      fix_phase(out.vectors.col(j));
  return out;
}

inline RealVec eigenvalues_unchecked(const Mat& h) {
  if (h.rows() <= 2) return eigh_unchecked(h, false).values;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace detail

// Ascending eigenvalues with orthonormal eigenvectors; each eigenvector has its
// largest-modulus component real positive. Within a degenerate eigenspace the
// basis is whatever the solver returns.
inline EigenDecomposition eigh(const HermitianMatrix& x) {
  return detail::eigh_unchecked(x.mat());
}

inline RealVec eigenvalues(const HermitianMatrix& x) {
  return detail::eigenvalues_unchecked(x.mat());
}

//============================================================================
// States
//============================================================================

class PureState {
 public:
  PureState() = default;

  explicit PureState(Vec amplitudes, double tol = kTol.normalization)
      : amp_(std::move(amplitudes)) {
    if (amp_.size() < 1) throw DimensionError("state must be non-empty");
    if (std::abs(amp_.squaredNorm() - 1.0) > tol)
      throw DomainError("state is not normalized");
  }

  static PureState normalized(const Vec& v) {
    const double n = v.norm();
    if (n == 0.0) throw DomainError("cannot normalize the zero vector");
    return PureState(v / n);
  }

  static PureState basis(int n, int index) {
    Vec v = Vec::Zero(n);
    v(index) = 1.0;
    return PureState(std::move(v));
  }

  const Vec& amplitudes() const { return amp_; }
  int size() const { return static_cast<int>(amp_.size()); }

 private:
  Vec amp_;
};

// Tensor product of normalized factors, one per tensor factor.
class ProductState {
 public:
  ProductState() = default;

  explicit ProductState(std::vector<Vec> factors, double tol = kTol.normalization)
      : factors_(std::move(factors)) {
    if (factors_.empty()) throw DimensionError("product state needs factors");
    for (const Vec& f : factors_) {
      if (f.size() < 1) throw DimensionError("empty product-state factor");
      if (std::abs(f.squaredNorm() - 1.0) > tol)
        throw DomainError("product-state factor is not normalized");
    }
  }

  const std::vector<Vec>& factors() const { return factors_; }
  const Vec& factor(int i) const { return factors_.at(static_cast<size_t>(i)); }
  int parties() const { return static_cast<int>(factors_.size()); }

  TensorSpace space() const {
    std::vector<int> dims;
    for (const Vec& f : factors_) dims.push_back(static_cast<int>(f.size()));
    return TensorSpace(std::move(dims));
  }

  Vec flatten() const {
    Vec out = factors_.front();
    for (size_t i = 1; i < factors_.size(); ++i) out = kron(out, factors_[i]);
    return out;
  }

  PureState pure() const { return PureState(flatten(), 1e-10); }

  static ProductState basis(const TensorSpace& sp, const std::vector<int>& multi) {
    std::vector<Vec> f;
    for (int i = 0; i < sp.parties(); ++i) {
      Vec v = Vec::Zero(sp.dim(i));
      v(multi.at(static_cast<size_t>(i))) = 1.0;
      f.push_back(std::move(v));
    }
    return ProductState(std::move(f));
  }

 private:
  std::vector<Vec> factors_;
};

// Schmidt form sum_i xi_i |l_i> (x) |r_i> with rank k = coefficients.size().
class SchmidtState {
 public:
  SchmidtState() = default;

  SchmidtState(RealVec coefficients, Mat left, Mat right)
      : xi_(std::move(coefficients)), left_(std::move(left)), right_(std::move(right)) {
    const Eigen::Index k = xi_.size();
    if (k < 1) throw DimensionError("Schmidt rank must be >= 1");
    if (left_.cols() != k || right_.cols() != k)
      throw DimensionError("Schmidt frames must have k columns");
    if (k > std::min(left_.rows(), right_.rows()))
      throw DimensionError("Schmidt rank exceeds min(K, M)");
    if ((xi_.array() < 0.0).any())
      throw DomainError("Schmidt coefficients must be nonnegative");
    if (std::abs(xi_.squaredNorm() - 1.0) > kTol.schmidt_sum * 1e2)
      throw DomainError("Schmidt coefficients are not normalized");
    const Mat id = Mat::Identity(k, k);
    if (max_abs(left_.adjoint() * left_ - id) > kTol.frame_orthonormality ||
        max_abs(right_.adjoint() * right_ - id) > kTol.frame_orthonormality)
      throw DomainError("Schmidt frames are not orthonormal");
  }

  int rank() const { return static_cast<int>(xi_.size()); }
  const RealVec& coefficients() const { return xi_; }
  RealVec probabilities() const { return xi_.array().square(); }
  const Mat& left() const { return left_; }
  const Mat& right() const { return right_; }
  TensorSpace space() const {
    return TensorSpace({static_cast<int>(left_.rows()), static_cast<int>(right_.rows())});
  }

  Vec flatten() const {
    Vec out = Vec::Zero(left_.rows() * right_.rows());
    for (int i = 0; i < rank(); ++i)
      out += xi_(i) * kron(Vec(left_.col(i)), Vec(right_.col(i)));
    return out;
  }

 private:
  RealVec xi_;
  Mat left_;
  Mat right_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;

  explicit DensityMatrix(const HermitianMatrix& h) : h_(h) {
    const RealVec ev = eigenvalues(h_);
    if (ev.minCoeff() < -kTol.density_eigenvalue)
      throw DomainError("density matrix has a negative eigenvalue");
    if (std::abs(h_.mat().trace().real() - 1.0) > kTol.density_trace)
      throw DomainError("density matrix trace differs from 1");
  }

  explicit DensityMatrix(const Mat& m, std::optional<TensorSpace> space = std::nullopt)
      : DensityMatrix(HermitianMatrix(m, std::move(space))) {}

  const HermitianMatrix& hermitian() const { return h_; }
  const Mat& mat() const { return h_.mat(); }
  int order() const { return h_.order(); }

 private:
  HermitianMatrix h_;
};

//============================================================================
// Schmidt decomposition and partial transpose
//============================================================================

// Coefficient matrix A with psi = sum_ij A_ij |i>|j>.
inline Mat reshape_bipartite(const Vec& psi, int k, int m) {
  Mat a(k, m);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = psi(i * m + j);
  return a;
}

inline Vec unreshape_bipartite(const Mat& a) {
  Vec psi(a.rows() * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) psi(i * a.cols() + j) = a(i, j);
  return psi;
}

// Schmidt decomposition over a bipartite space. Coefficients are sorted
// descending; those below the cutoff are dropped. For degenerate coefficients
// the frames inside the degenerate block are not unique.
inline SchmidtState schmidt(const PureState& psi, const TensorSpace& space) {
  if (!space.is_bipartite())
    throw DimensionError("Schmidt decomposition needs a bipartite space");
  if (space.total() != psi.size())
    throw DimensionError("state size does not match tensor space");
  const int k = space.dim(0), m = space.dim(1);
  const Mat a = reshape_bipartite(psi.amplitudes(), k, m);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVec& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kTol.schmidt_cutoff) ++rank;
  rank = std::max(rank, 1);
  RealVec xi = sv.head(rank);
  xi /= xi.norm();
  Mat left = svd.matrixU().leftCols(rank);
  Mat right = svd.matrixV().leftCols(rank).conjugate();
  // Phase convention: largest component of each left vector real positive,
  // compensated on the right vector so the product is unchanged.
  for (int i = 0; i < rank; ++i) {
    Vec l = left.col(i);
    const Vec before = l;
    fix_phase(l);
    Eigen::Index arg;
    before.cwiseAbs().maxCoeff(&arg);
    const cplx ph = (std::abs(before(arg)) > 0) ? l(arg) / before(arg) : cplx(1.0);
    left.col(i) = l;
    right.col(i) *= std::conj(ph);
  }
  return SchmidtState(std::move(xi), std::move(left), std::move(right));
}

enum class Side { first, second };

// (T (x) 1) or (1 (x) T) on a bipartite operator. Pure entry permutation.
inline Mat partial_transpose(const Mat& rho, const TensorSpace& space,
                             Side side = Side::second) {
  if (!space.is_bipartite())
    throw DimensionError("partial transpose needs a bipartite space");
  if (space.total() != rho.rows() || rho.rows() != rho.cols())
    throw DimensionError("operator order does not match tensor space");
  const int k = space.dim(0), m = space.dim(1);
  Mat out(rho.rows(), rho.cols());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < m; ++b) {
          const int r = i * m + j, c = a * m + b;
          if (side == Side::second)
            out(i * m + b, a * m + j) = rho(r, c);
          else
            out(a * m + j, i * m + b) = rho(r, c);
        }
  return out;
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, Side side = Side::second) {
  return ComplexMatrix(partial_transpose(rho.mat(), rho.space(), side), rho.space());
}

//============================================================================
// Small helpers
//============================================================================

inline cplx expectation(const Mat& x, const Vec& v) { return v.dot(x * v); }

// Keeps factor `keep` and traces out every other factor.
inline Mat partial_trace_keep(const Mat& m, const TensorSpace& sp, int keep) {
  const int n = sp.dim(keep);
  Mat out = Mat::Zero(n, n);
  const int total = sp.total();
  for (int r = 0; r < total; ++r) {
    const auto mr = sp.unflatten(r);
    for (int c = 0; c < total; ++c) {
      const auto mc = sp.unflatten(c);
      bool same = true;
      for (int i = 0; i < sp.parties() && same; ++i)
        if (i != keep && mr[static_cast<size_t>(i)] != mc[static_cast<size_t>(i)]) same = false;
      if (same) out(mr[static_cast<size_t>(keep)], mc[static_cast<size_t>(keep)]) += m(r, c);
    }
  }
  return out;
}

// exp(i * h) for Hermitian h.
inline Mat expi_hermitian(const Mat& h) {
  const auto ed = detail::eigh_unchecked(hermitian_part(h), false);
  Vec phases(ed.values.size());
  for (Eigen::Index i = 0; i < ed.values.size(); ++i)
    phases(i) = std::polar(1.0, ed.values(i));
  return ed.vectors * phases.asDiagonal() * ed.vectors.adjoint();
}

}  // namespace rr
