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

#include <cmath>
#include <vector>

#include "rr/families.hpp"
#include "rr/linalg.hpp"

namespace rr {

// Kraus form Phi(rho) = sum_a Y_a rho Y_a^dagger; each Y_a is out x in.
class QuantumChannel {
 public:
  QuantumChannel() = default;

  explicit QuantumChannel(std::vector<Mat> kraus, double tol = kTol.kraus_identity)
      : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw DimensionError("channel needs at least one Kraus operator");
    const auto out = kraus_[0].rows(), in = kraus_[0].cols();
    if (out < 1 || in < 1) throw DimensionError("empty Kraus operator");
    Mat sum = Mat::Zero(in, in);
    for (const Mat& y : kraus_) {
      if (y.rows() != out || y.cols() != in) throw DimensionError("Kraus operators differ in shape");
      sum += y.adjoint() * y;
    }
    if (max_abs(sum - Mat::Identity(in, in)) > tol)
      throw DomainError("Kraus operators do not resolve the identity (not trace preserving)");
  }

  const std::vector<Mat>& kraus() const { return kraus_; }
  int in_dim() const { return static_cast<int>(kraus_.at(0).cols()); }
  int out_dim() const { return static_cast<int>(kraus_.at(0).rows()); }

  Mat apply(const Mat& rho) const {
    if (rho.rows() != in_dim() || rho.cols() != in_dim())
      throw DimensionError("input does not match channel input dimension");
    Mat out = Mat::Zero(out_dim(), out_dim());
    for (const Mat& y : kraus_) out += y * rho * y.adjoint();
    return out;
  }

 private:
  std::vector<Mat> kraus_;
};

// Normalized dynamical matrix D = (1/K) sum_ij Phi(|i><j|) (x) |i><j| on
// H_out (x) H_in, trace one for trace-preserving maps. The unnormalized
// variant K D satisfies <k|Phi(|i><j|)|l> = <k i|KD|l j>.
class ChoiMatrix {
 public:
  ChoiMatrix() = default;

  ChoiMatrix(const Mat& d, int out_dim, int in_dim) {
    if (out_dim < 1 || in_dim < 1 || d.rows() != static_cast<Eigen::Index>(out_dim) * in_dim)
      throw DimensionError("Choi matrix order must equal out_dim * in_dim");
    h_ = HermitianMatrix(d, TensorSpace({out_dim, in_dim}));
    if (std::abs(h_.mat().trace().real() - 1.0) > kTol.density_trace)
      throw DomainError("normalized Choi matrix must have unit trace");
  }

  static ChoiMatrix from_unnormalized(const Mat& j, int out_dim, int in_dim) {
    return ChoiMatrix(j / static_cast<double>(in_dim), out_dim, in_dim);
  }

  // Rescales any Hermitian block operator with positive trace; positivity
  // questions are invariant under this.
  static ChoiMatrix rescaled(const Mat& d, int out_dim, int in_dim) {
    const double tr = d.trace().real();
    if (!(tr > 0.0)) throw DomainError("Choi matrix needs a positive trace");
    return ChoiMatrix(d / tr, out_dim, in_dim);
  }

  const HermitianMatrix& hermitian() const { return h_; }
  const Mat& mat() const { return h_.mat(); }
  int out_dim() const { return h_.space().dim(0); }
  int in_dim() const { return h_.space().dim(1); }
  const TensorSpace& space() const { return h_.space(); }

  HermitianMatrix unnormalized() const {
    return HermitianMatrix(Mat(mat() * static_cast<double>(in_dim())), space());
  }

 private:
  HermitianMatrix h_;
};

inline ChoiMatrix choi(const QuantumChannel& ch) {
  const int out = ch.out_dim(), in = ch.in_dim();
  Mat j = Mat::Zero(out * in, out * in);
  for (const Mat& y : ch.kraus()) {
    Vec v(out * in);
    for (int k = 0; k < out; ++k)
      for (int i = 0; i < in; ++i) v(k * in + i) = y(k, i);
    j += v * v.adjoint();
  }
  return ChoiMatrix::from_unnormalized(j, out, in);
}

// Kraus operators from the spectral decomposition of K D; D must be PSD.
inline QuantumChannel kraus_from_choi(const ChoiMatrix& d) {
  const int out = d.out_dim(), in = d.in_dim();
  const auto ed = eigh(d.unnormalized());
  std::vector<Mat> ks;
  const double scale = std::max(1.0, ed.values.cwiseAbs().maxCoeff());
  for (Eigen::Index a = ed.values.size() - 1; a >= 0; --a) {
    const double lam = ed.values(a);
    if (lam < -kTol.density_eigenvalue * scale)
      throw DomainError("Choi matrix is not positive semidefinite (map not CP)");
    if (lam <= 1e-14 * scale) continue;
    Mat y(out, in);
    for (int k = 0; k < out; ++k)
      for (int i = 0; i < in; ++i) y(k, i) = std::sqrt(lam) * ed.vectors(k * in + i, a);
    ks.push_back(std::move(y));
  }
  return QuantumChannel(std::move(ks), 1e-9);
}

//----------------------------------------------------------------------------
// Standard channels
//----------------------------------------------------------------------------

namespace channels {

inline QuantumChannel identity(int n) { return QuantumChannel({Mat::Identity(n, n)}); }

inline QuantumChannel unitary(const Mat& u) {
  if (!is_unitary(u)) throw DomainError("unitary channel needs a unitary operator");
  return QuantumChannel({u});
}

// Qubit depolarizing (1 - p) rho + p I/2; p = 1 is completely depolarizing.
inline QuantumChannel depolarizing(double p) {
  detail::require_in(p, 0.0, 1.0, "p");
  std::vector<Mat> ks{std::sqrt(1.0 - 0.75 * p) * pauli(0)};
  for (int k = 1; k <= 3; ++k) ks.push_back(std::sqrt(p / 4.0) * pauli(k));
  return QuantumChannel(std::move(ks));
}

inline QuantumChannel amplitude_damping(double gamma) {
  detail::require_in(gamma, 0.0, 1.0, "gamma");
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::sqrt(1.0 - gamma);
  b(0, 1) = std::sqrt(gamma);
  return QuantumChannel({a, b});
}

inline QuantumChannel phase_damping(double gamma) {
  detail::require_in(gamma, 0.0, 1.0, "gamma");
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::sqrt(1.0 - gamma);
  b(1, 1) = std::sqrt(gamma);
  return QuantumChannel({a, b});
}

inline QuantumChannel bit_flip(double p) {
  detail::require_in(p, 0.0, 1.0, "p");
  return QuantumChannel({std::sqrt(1.0 - p) * pauli(0), std::sqrt(p) * pauli(1)});
}

// Unnormalized (trace 2) dynamical matrix p SWAP + (1 - p) I / 2.
inline Mat werner_holevo_unnormalized(double p) {
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  return p * swap + 0.5 * (1.0 - p) * Mat::Identity(4, 4);
}

// Phi(rho) = p rho^T + (1 - p) tr(rho) I / 2, CP for p in [-1, 1/3].
inline QuantumChannel werner_holevo(double p) {
  detail::require_in(p, -1.0, 1.0 / 3.0, "p");
  return kraus_from_choi(ChoiMatrix::from_unnormalized(werner_holevo_unnormalized(p), 2, 2));
}

// Transposition on C^n: D = SWAP / n. Positive but not completely positive.
inline ChoiMatrix transposition(int n) {
  Mat swap = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) swap(i * n + j, j * n + i) = 1.0;
  return ChoiMatrix(swap / static_cast<double>(n), n, n);
}

}  // namespace channels

}  // namespace rr
