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

#include <cstdint>
#include <random>

#include "rr/linalg.hpp"

namespace rr {

// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Explicitly seeded generator. A (seed, stream) pair identifies an
// independent sequence, so restart i of a fan always sees the same numbers
// regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng_); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Vec ginibre_vector(int n, Rng& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

inline Mat ginibre(int rows, int cols, Rng& rng) {
  Mat g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

// Uniform (Fubini-Study) random unit vector.
inline Vec haar_vector(int n, Rng& rng) {
  if (n < 1) throw DimensionError("state dimension must be >= 1");
  Vec v = ginibre_vector(n, rng);
  double norm = v.norm();
  while (norm == 0.0) {
    v = ginibre_vector(n, rng);
    norm = v.norm();
  }
  return v / norm;
}

// Haar unitary: QR of a Ginibre matrix with R's diagonal phases removed.
inline Mat haar_unitary(int n, Rng& rng) {
  if (n < 1) throw DimensionError("unitary dimension must be >= 1");
  const Mat g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

inline PureState sample_haar_state(int n, std::uint64_t seed, std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  return PureState(haar_vector(n, rng), 1e-12);
}

inline ComplexMatrix sample_haar_unitary(int n, std::uint64_t seed, std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  return ComplexMatrix(haar_unitary(n, rng));
}

// rho = G G^dagger / tr(G G^dagger) with square Ginibre G (Hilbert-Schmidt measure).
inline Mat hs_density_mat(int n, Rng& rng) {
  if (n < 1) throw DimensionError("density dimension must be >= 1");
  const Mat g = ginibre(n, n, rng);
  Mat rho = g * g.adjoint();
  rho = hermitian_part(rho);
  rho /= rho.trace().real();
  return rho;
}

inline DensityMatrix sample_hs_density(int n, std::uint64_t seed, std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  return DensityMatrix(hs_density_mat(n, rng));
}

// Random Hermitian matrix from the Gaussian unitary ensemble (unit scale).
inline Mat random_hermitian(int n, Rng& rng) {
  const Mat g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ProductState haar_product_state(const TensorSpace& sp, Rng& rng) {
  std::vector<Vec> f;
  f.reserve(static_cast<size_t>(sp.parties()));
  for (int d : sp.dims()) f.push_back(haar_vector(d, rng));
  return ProductState(std::move(f), 1e-10);
}

}  // namespace rr
