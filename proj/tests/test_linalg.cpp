// Copyright 2026 The restricted-range Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "rr/rr.hpp"

using namespace rr;

namespace {

// Characteristic polynomial by Faddeev-LeVerrier, roots from the companion
// matrix. Independent of the Hermitian eigensolver.
std::vector<double> charpoly_roots(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<cplx> c(static_cast<size_t>(n + 1));
  c[static_cast<size_t>(n)] = 1.0;
  Mat m = Mat::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<size_t>(n - k + 1)] * Mat::Identity(n, n);
    c[static_cast<size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<size_t>(i)].real();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i).real());
  std::sort(r.begin(), r.end());
  return r;
}

Mat pauli_x() {
  Mat s = Mat::Zero(2, 2);
  s(0, 1) = s(1, 0) = 1.0;
  return s;
}

}  // namespace

TEST(TensorSpace, RejectsBadDims) {
  EXPECT_THROW(TensorSpace(std::vector<int>{}), DimensionError);
  EXPECT_THROW(TensorSpace({2, 0}), DimensionError);
  const TensorSpace sp({2, 3, 4});
  EXPECT_EQ(sp.total(), 24);
  for (int i = 0; i < 24; ++i) EXPECT_EQ(sp.flatten(sp.unflatten(i)), i);
}

TEST(ComplexMatrix, ValidatesShape) {
  EXPECT_THROW(ComplexMatrix(Mat::Zero(2, 3)), DimensionError);
  EXPECT_THROW(ComplexMatrix(Mat::Zero(4, 4), TensorSpace({2, 3})), DimensionError);
  EXPECT_THROW(HermitianMatrix(Mat::Zero(2, 2) + Mat::Identity(2, 2) * cplx(0, 1)), DomainError);
}

TEST(Kron, IdentityAndDiagonal) {
  const Mat i2 = Mat::Identity(2, 2);
  EXPECT_LT(max_abs(kron(i2, i2) - Mat::Identity(4, 4)), 1e-15);
  const double phi = 0.7;
  const Mat u = u1qubit(phi).mat();
  const Mat k = kron(u, u);
  Mat want = Mat::Zero(4, 4);
  want.diagonal() << 1.0, std::polar(1.0, phi), std::polar(1.0, phi), std::polar(1.0, 2 * phi);
  EXPECT_LT(max_abs(k - want), 1e-15);
}

TEST(Kron, PauliGeneratorByHand) {
  // sigma_x (x) sigma_x is the anti-diagonal of ones.
  Mat want = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) want(i, 3 - i) = 1.0;
  EXPECT_LT(max_abs(kron(pauli_x(), pauli_x()) - want), 1e-15);
  const auto c = kron(ComplexMatrix(pauli_x(), TensorSpace({2})), ComplexMatrix(pauli_x(), TensorSpace({2})));
  EXPECT_EQ(c.space().dims(), (std::vector<int>{2, 2}));
}

TEST(Eigh, XtsSpectrum) {
  const auto ev = eigenvalues(xts(1.0, 1.0));
  const double want[4] = {-std::sqrt(5.0), -std::sqrt(2.0), std::sqrt(2.0), std::sqrt(5.0)};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev(i), want[i], 1e-12);
}

TEST(Eigh, DiagonalSorted) {
  Mat d = Mat::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  const auto ev = eigenvalues(HermitianMatrix(d));
  EXPECT_DOUBLE_EQ(ev(0), 1.0);
  EXPECT_DOUBLE_EQ(ev(1), 2.0);
  EXPECT_DOUBLE_EQ(ev(2), 3.0);
}

TEST(Eigh, MatchesCharacteristicPolynomial) {
  Rng rng(0, 11);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat h = random_hermitian(6, rng);
    const auto ed = eigh(HermitianMatrix(h));
    const auto roots = charpoly_roots(h);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(ed.values(i), roots[static_cast<size_t>(i)], 1e-8);
    const Mat rec = ed.vectors * ed.values.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
    EXPECT_LT(max_abs(rec - h), 1e-10 * std::max(1.0, max_abs(h)));
  }
}

TEST(Eigh, RejectsNonHermitian) {
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(HermitianMatrix{a}, DomainError);
}

TEST(Eigh, SpectrumInvariantUnderUnitaryConjugation) {
  Rng rng(0, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat h = random_hermitian(5, rng);
    const Mat u = haar_unitary(5, rng);
    const auto a = eigenvalues(HermitianMatrix(h));
    const auto b = eigenvalues(HermitianMatrix(hermitian_part(u * h * u.adjoint())));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Schmidt, ProductAndBell) {
  const TensorSpace sp({2, 2});
  const auto s0 = schmidt(PureState::basis(4, 0), sp);
  EXPECT_EQ(s0.rank(), 1);
  EXPECT_NEAR(s0.coefficients()(0), 1.0, 1e-15);
  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const auto sb = schmidt(PureState(bell), sp);
  ASSERT_EQ(sb.rank(), 2);
  EXPECT_NEAR(sb.coefficients()(0), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(sb.coefficients()(1), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_LT((sb.flatten() - bell).norm(), 1e-10);
}

TEST(Schmidt, MatchesReshapeEigenvalues) {
  const TensorSpace sp({3, 4});
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = sample_haar_state(12, 7, static_cast<std::uint64_t>(trial));
    const auto s = schmidt(psi, sp);
    const Mat a = reshape_bipartite(psi.amplitudes(), 3, 4);
    const auto ev = eigenvalues(HermitianMatrix(hermitian_part(a * a.adjoint())));
    const RealVec mu = s.probabilities();
    EXPECT_NEAR(mu.sum(), 1.0, 1e-12);
    for (int i = 0; i < s.rank(); ++i) EXPECT_NEAR(mu(i), ev(2 - i), 1e-12);
    EXPECT_LT((s.flatten() - psi.amplitudes()).norm(), 1e-10);
  }
}

TEST(Schmidt, InvariantUnderLocalUnitaries) {
  const TensorSpace sp({3, 3});
  Rng rng(0, 13);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec psi = haar_vector(9, rng);
    const Mat u = kron(haar_unitary(3, rng), haar_unitary(3, rng));
    const auto a = schmidt(PureState(psi, 1e-10), sp).coefficients();
    const auto b = schmidt(PureState::normalized(u * psi), sp).coefficients();
    ASSERT_EQ(a.size(), b.size());
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Schmidt, RejectsNonBipartite) {
  EXPECT_THROW(schmidt(PureState::basis(8, 0), TensorSpace({2, 2, 2})), DimensionError);
}

TEST(PartialTranspose, DiagonalUnchangedAndBellNegative) {
  const TensorSpace sp({2, 2});
  Mat d = Mat::Zero(4, 4);
  d.diagonal() << 0.1, 0.2, 0.3, 0.4;
  EXPECT_LT(max_abs(partial_transpose(d, sp, Side::second) - d), 1e-16);
  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const Mat pt = partial_transpose(Mat(bell * bell.adjoint()), sp, Side::second);
  EXPECT_NEAR(eigenvalues(HermitianMatrix(pt))(0), -0.5, 1e-12);
  EXPECT_THROW(partial_transpose(Mat::Identity(5, 5), sp, Side::first), DimensionError);
}

TEST(PartialTranspose, InvolutionHermiticityTrace) {
  const TensorSpace sp({3, 3});
  Rng rng(0, 14);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat rho = hs_density_mat(9, rng);
    for (Side side : {Side::first, Side::second}) {
      const Mat pt = partial_transpose(rho, sp, side);
      EXPECT_EQ(max_abs(partial_transpose(pt, sp, side) - rho), 0.0);
      EXPECT_EQ(hermiticity_defect(pt), hermiticity_defect(rho));
      EXPECT_EQ(pt.trace(), rho.trace());
    }
  }
}

TEST(HsDensity, TrivialAndValid) {
  const auto one = sample_hs_density(1, 0);
  EXPECT_NEAR(one.mat()(0, 0).real(), 1.0, 1e-15);
  Rng rng(3, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const Mat rho = hs_density_mat(4, rng);
    EXPECT_LE(std::abs(rho.trace().real() - 1.0), 1e-12);
    const auto ev = eigenvalues(HermitianMatrix(rho));
    EXPECT_GE(ev.minCoeff(), -1e-14);
    EXPECT_LE(ev.maxCoeff(), 1.0 + 1e-14);
  }
}

TEST(HsDensity, SmallestEigenvalueMean) {
  // E[lambda_1] = 1/64 for the density 60 (1 - 4x)^14 on [0, 1/4]; its
  // variance is 1/4 * (2/(16*17) ...) computed here by quadrature.
  const int n = 20000;
  Rng rng(0, 21);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += eigenvalues(HermitianMatrix(hs_density_mat(4, rng)))(0);
  const double mean = sum / n;
  double m2 = 0.0;
  const int q = 20000;
  for (int i = 0; i < q; ++i) {
    const double x = 0.25 * (i + 0.5) / q;
    m2 += x * x * 60.0 * std::pow(1 - 4 * x, 14) * 0.25 / q;
  }
  const double sigma = std::sqrt((m2 - 1.0 / 4096.0) / n);
  EXPECT_NEAR(mean, 1.0 / 64.0, 3 * sigma);
}

TEST(Haar, PhaseOnlyAndUnitary) {
  const auto s = sample_haar_state(1, 5);
  EXPECT_NEAR(std::abs(s.amplitudes()(0)), 1.0, 1e-15);
  for (int i = 0; i < 100; ++i) {
    const auto u = sample_haar_unitary(4, 9, static_cast<std::uint64_t>(i));
    EXPECT_LT(max_abs(u.mat().adjoint() * u.mat() - Mat::Identity(4, 4)), 1e-12);
  }
}

TEST(Haar, QubitMoment) {
  const int n = 10000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(sample_haar_state(2, 0, static_cast<std::uint64_t>(i)).amplitudes()(0));
    sum += p;
    sq += p * p;
  }
  // |<0|psi>|^2 is uniform on [0,1]: variance 1/12.
  EXPECT_NEAR(sum / n, 0.5, 3 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, StreamsAreIndependentOfOrder) {
  const auto a = sample_haar_state(3, 1, 5).amplitudes();
  (void)sample_haar_state(3, 1, 4);
  const auto b = sample_haar_state(3, 1, 5).amplitudes();
  EXPECT_EQ((a - b).norm(), 0.0);
}

TEST(Density, Validation) {
  EXPECT_THROW(DensityMatrix(Mat(Mat::Identity(2, 2))), DomainError);
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, DomainError);
  EXPECT_NO_THROW(DensityMatrix(Mat(Mat::Identity(2, 2) * 0.5)));
}

TEST(Parallel, ThreadCountFromEnvironment) {
  ::setenv("RR_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3);
  ::setenv("RR_THREADS", "bogus", 1);
  EXPECT_EQ(thread_count(), 1);
  ::unsetenv("RR_THREADS");
  EXPECT_GE(thread_count(), 1);
  std::vector<int> out(100);
  ::setenv("RR_THREADS", "4", 1);
  parallel_for(100, [&](int i) { out[static_cast<size_t>(i)] = i * i; });
  ::unsetenv("RR_THREADS");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[static_cast<size_t>(i)], i * i);
}
