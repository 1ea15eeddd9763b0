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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rr/rr.hpp"

using namespace rr;

namespace {

const TensorSpace kQQ({2, 2});

Mat bell_projector() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

Mat basis_op(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// <k|Phi(|i><j|)|l> = K <k i|D|l j> on every basis element.
void expect_element_identity(const QuantumChannel& ch) {
  const auto d = choi(ch);
  const int out = ch.out_dim(), in = ch.in_dim();
  for (int i = 0; i < in; ++i)
    for (int j = 0; j < in; ++j) {
      const Mat img = ch.apply(basis_op(in, i, j));
      for (int k = 0; k < out; ++k)
        for (int l = 0; l < out; ++l)
          EXPECT_LT(std::abs(img(k, l) - static_cast<double>(in) * d.mat()(k * in + i, l * in + j)), 1e-12);
    }
}

SeesawConfig fast_cfg(int restarts = 20) {
  SeesawConfig c;
  c.restarts = restarts;
  return c;
}

}  // namespace

//----------------------------------------------------------------------------
// Choi matrices
//----------------------------------------------------------------------------

TEST(Choi, IdentityIsBellProjector) {
  const auto d = choi(channels::identity(2));
  EXPECT_LT(max_abs(d.mat() - bell_projector()), 1e-14);
  EXPECT_NEAR(d.mat().trace().real(), 1.0, 1e-14);
}

TEST(Choi, CompletelyDepolarizingIsMaximallyMixed) {
  // Average of the four Pauli conjugations.
  Mat avg = Mat::Zero(4, 4);
  const Mat b = bell_projector();
  for (int k = 0; k < 4; ++k) {
    const Mat u = kron(pauli(k), Mat::Identity(2, 2));
    avg += 0.25 * u * b * u.adjoint();
  }
  const auto d = choi(channels::depolarizing(1.0));
  EXPECT_LT(max_abs(d.mat() - avg), 1e-14);
  EXPECT_LT(max_abs(d.mat() - Mat::Identity(4, 4) / 4.0), 1e-14);
}

TEST(Choi, WernerHolevoDisplayedMatrix) {
  const double p = 1.0 / 3.0;
  const auto ch = channels::werner_holevo(p);
  // Channel action p rho^T + (1 - p) tr(rho) I / 2 on a random state.
  Rng rng(3);
  const Mat rho = hs_density_mat(2, rng);
  const Mat want = p * rho.transpose() + (1 - p) * rho.trace() * Mat::Identity(2, 2) / 2.0;
  EXPECT_LT(max_abs(ch.apply(rho) - want), 1e-12);
  Mat displayed(4, 4);
  displayed << 2.0 / 3, 0, 0, 0,
               0, 1.0 / 3, 1.0 / 3, 0,
               0, 1.0 / 3, 1.0 / 3, 0,
               0, 0, 0, 2.0 / 3;
  EXPECT_LT(max_abs(choi(ch).unnormalized().mat() - displayed), 1e-12);
}

TEST(Choi, ElementIdentity) {
  expect_element_identity(channels::amplitude_damping(0.3));
  expect_element_identity(channels::depolarizing(0.4));
  expect_element_identity(channels::werner_holevo(-0.5));
  Rng rng(8);
  // Random channel 3 -> 2 from an isometry.
  const Mat u = haar_unitary(6, rng);
  std::vector<Mat> ks;
  for (int a = 0; a < 3; ++a) ks.push_back(u.block(2 * a, 0, 2, 3));
  expect_element_identity(QuantumChannel(ks));
}

TEST(Choi, KrausRoundTrip) {
  const auto ch = channels::amplitude_damping(0.6);
  const auto back = kraus_from_choi(choi(ch));
  EXPECT_LT(max_abs(choi(back).mat() - choi(ch).mat()), 1e-12);
  Rng rng(1);
  const Mat rho = hs_density_mat(2, rng);
  EXPECT_LT(max_abs(back.apply(rho) - ch.apply(rho)), 1e-12);
}

TEST(Choi, Errors) {
  EXPECT_THROW(QuantumChannel({Mat::Identity(2, 2) * 0.5}), DomainError);
  EXPECT_THROW(QuantumChannel({Mat::Identity(2, 2), Mat::Identity(3, 3)}), DimensionError);
  EXPECT_THROW(kraus_from_choi(channels::transposition(2)), DomainError);
  EXPECT_THROW(ChoiMatrix(Mat::Identity(4, 4), 2, 2), DomainError);
  EXPECT_THROW(ChoiMatrix(Mat::Identity(4, 4) / 4.0, 3, 2), DimensionError);
}

//----------------------------------------------------------------------------
// Positivity hierarchy
//----------------------------------------------------------------------------

TEST(Positivity, PsdCertifiedAtEveryK) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat d = hs_density_mat(9, rng);
    const auto c = ChoiMatrix(d, 3, 3);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(is_k_positive(c, k, fast_cfg()).status, Status::certified);
  }
}

TEST(Positivity, TranspositionQubit) {
  const auto t = channels::transposition(2);
  const auto v2 = is_k_positive(t, 2);
  ASSERT_EQ(v2.status, Status::violated);
  ASSERT_TRUE(v2.certificate);
  EXPECT_LT(v2.certificate->value.real(), -1e-9);
  // Reevaluation reproduces the certificate.
  EXPECT_NEAR(expectation(t.mat(), v2.certificate->state).real(), v2.certificate->value.real(), 1e-10);
  EXPECT_NEAR(v2.certificate->value.real(), -0.5, 1e-12);
  EXPECT_EQ(is_k_positive(t, 1).status, Status::no_violation_found);
}

TEST(Positivity, TranspositionQutrit) {
  const auto t = channels::transposition(3);
  EXPECT_EQ(is_k_positive(t, 1, fast_cfg()).status, Status::no_violation_found);
  const auto v2 = is_k_positive(t, 2, fast_cfg());
  ASSERT_EQ(v2.status, Status::violated);
  EXPECT_NEAR(v2.certificate->value.real(), -1.0 / 3.0, 1e-8);
  EXPECT_EQ(is_k_positive(t, 3).status, Status::violated);
}

TEST(Positivity, DFamilyNotBlockPositive) {
  const auto h = dfam(1.2, 0.0, 0.0);
  ASSERT_GT(d_family_g(1.2, 0.0, 0.0), 0.5);
  const auto c = ChoiMatrix::rescaled(h.mat(), 2, 2);
  const auto v = is_k_positive(c, 1);
  ASSERT_EQ(v.status, Status::violated);
  ASSERT_TRUE(v.certificate);
  EXPECT_EQ(v.certificate->space.total(), 4);
  EXPECT_NEAR(expectation(c.mat(), v.certificate->state).real(), v.certificate->value.real(), 1e-10);
}

TEST(Positivity, CompleteLevelMatchesSpectrum) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Mat h = random_hermitian(4, rng);
    h += (0.6 - h.trace().real() / 4.0) * Mat::Identity(4, 4);  // positive trace, mixed signs
    const auto c = ChoiMatrix::rescaled(h, 2, 2);
    const double lmin = detail::eigenvalues_unchecked(c.mat())(0);
    const auto v = is_k_positive(c, 2);
    if (lmin < -1e-9)
      EXPECT_EQ(v.status, Status::violated);
    else
      EXPECT_EQ(v.status, Status::certified);
  }
}

TEST(Positivity, MonotoneInK) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    Mat h = random_hermitian(9, rng);
    h += (1.5 - h.trace().real() / 9.0) * Mat::Identity(9, 9);
    const auto c = ChoiMatrix::rescaled(h, 3, 3);
    bool seen = false;
    for (int k = 1; k <= 3; ++k) {
      const bool viol = is_k_positive(c, k, fast_cfg(10)).status == Status::violated;
      if (seen) {
        EXPECT_TRUE(viol) << "trial " << trial << " k " << k;
      }
      seen = seen || viol;
    }
  }
}

TEST(Positivity, Errors) {
  EXPECT_THROW(is_k_positive(channels::transposition(2), 0), DimensionError);
  EXPECT_THROW(is_k_positive(channels::transposition(2), 3), DimensionError);
}

TEST(WitnessProfile, PsdHasNoNegatives) {
  Rng rng(2);
  const auto p = witness_profile(HermitianMatrix(hs_density_mat(4, rng), kQQ), fast_cfg());
  EXPECT_EQ(p.negatives, 0);
  EXPECT_TRUE(p.block_positive);
}

TEST(WitnessProfile, PartialTransposeOfBellQutrits) {
  Vec v = Vec::Zero(9);
  for (int i = 0; i < 3; ++i) v(4 * i) = 1.0 / std::sqrt(3.0);
  const TensorSpace sp({3, 3});
  const Mat pt = partial_transpose(Mat(v * v.adjoint()), sp, Side::second);
  const auto p = witness_profile(HermitianMatrix(pt, sp), fast_cfg());
  EXPECT_EQ(p.negatives, 3);
  EXPECT_EQ(p.bound, 4);
  EXPECT_TRUE(p.within_bound);
  EXPECT_TRUE(p.block_positive);
}

TEST(WitnessProfile, ShiftedEntangledRangeOperator) {
  // Hermitian part of X_alpha at alpha = pi/4, shifted to its product minimum.
  const Mat xa = hermitian_part(x_alpha(kPi / 4).mat());
  const HermitianMatrix h(xa, kQQ);
  const double lo = pnr_hermitian(h).lo;
  const HermitianMatrix w(Mat(xa - lo * Mat::Identity(4, 4)), kQQ);
  const auto p = witness_profile(w);
  EXPECT_TRUE(p.block_positive);
  EXPECT_LE(p.negatives, 1);
  EXPECT_EQ(p.bound, 1);
}

//----------------------------------------------------------------------------
// Distillability
//----------------------------------------------------------------------------

TEST(Distill, BellStateOneCopy) {
  const DensityMatrix rho(bell_projector(), kQQ);
  const auto v = n_copy_distillable_probe(rho, 1);
  ASSERT_EQ(v.status, Status::violated);
  EXPECT_NEAR(v.certificate->value.real(), -0.5, 1e-12);
}

TEST(Distill, BellStateTwoCopies) {
  const DensityMatrix rho(bell_projector(), kQQ);
  const auto v = n_copy_distillable_probe(rho, 2, fast_cfg());
  ASSERT_EQ(v.status, Status::violated);
  EXPECT_LT(v.certificate->value.real(), -1e-9);
  EXPECT_EQ(v.certificate->space.dim(0), 4);
}

TEST(Distill, PptStatesCertified) {
  const DensityMatrix sep(Mat(Mat::Identity(4, 4) / 4.0), kQQ);
  EXPECT_EQ(n_copy_distillable_probe(sep, 1).status, Status::certified);
  EXPECT_EQ(n_copy_distillable_probe(sep, 2).status, Status::certified);
  // Werner state below the entanglement threshold.
  const Mat w = 0.3 * bell_projector() + 0.7 * Mat::Identity(4, 4) / 4.0;
  EXPECT_EQ(n_copy_distillable_probe(DensityMatrix(w, kQQ), 1).status, Status::certified);
}

TEST(Distill, RegroupedPowerIsPermutedKron) {
  Rng rng(4);
  const HermitianMatrix rho(hs_density_mat(4, rng), kQQ);
  const auto g = regrouped_power(rho, 2);
  EXPECT_EQ(g.space().dim(0), 4);
  const auto a = detail::eigenvalues_unchecked(g.mat());
  const auto b = detail::eigenvalues_unchecked(kron(rho.mat(), rho.mat()));
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  // Product of local matrices A (x) B maps to (A (x) A') (x) (B (x) B').
  const Mat a1 = random_hermitian(2, rng), b1 = random_hermitian(2, rng);
  const HermitianMatrix ab(kron(a1, b1), kQQ);
  EXPECT_LT(max_abs(regrouped_power(ab, 2).mat() - kron(kron(a1, a1), kron(b1, b1))), 1e-12);
}

TEST(Distill, Guard) {
  const DensityMatrix rho(bell_projector(), kQQ);
  EXPECT_THROW(n_copy_distillable_probe(rho, 4), GuardError);
  EXPECT_THROW(n_copy_distillable_probe(rho, 0), DomainError);
}

//----------------------------------------------------------------------------
// Minimum output entropy
//----------------------------------------------------------------------------

TEST(Moe, WernerHolevoClosedForm) {
  for (double p : {-1.0, -0.5, 0.0, 0.2, 1.0 / 3.0}) {
    const auto r = moe_qubit(channels::werner_holevo(p));
    EXPECT_NEAR(r.lambda, (1 - std::abs(p)) / 2, 1e-9) << p;
    EXPECT_NEAR(r.value, werner_holevo_moe(p), 1e-8) << p;
  }
  EXPECT_NEAR(werner_holevo_moe(0.0), 1.0, 1e-15);
}

TEST(Moe, ZeroFamilies) {
  for (double g : {0.0, 0.3, 0.8, 1.0}) {
    EXPECT_NEAR(moe_qubit(channels::amplitude_damping(g)).value, 0.0, 1e-9) << g;
    EXPECT_NEAR(moe_qubit(channels::phase_damping(g)).value, 0.0, 1e-9) << g;
    EXPECT_NEAR(moe_qubit(channels::bit_flip(g)).value, 0.0, 1e-9) << g;
  }
}

TEST(Moe, UnitaryAndDepolarizing) {
  Rng rng(6);
  EXPECT_NEAR(moe_qubit(channels::unitary(haar_unitary(2, rng))).value, 0.0, 1e-9);
  EXPECT_NEAR(moe_qubit(channels::depolarizing(1.0)).value, 1.0, 1e-12);
  // Depolarizing p: output eigenvalue p/2.
  EXPECT_NEAR(moe_qubit(channels::depolarizing(0.4)).value, binary_entropy(0.2), 1e-9);
}

TEST(Moe, MatchesOutputSpectrumScan) {
  // Direct minimization of output entropy over a Bloch grid.
  const auto ch = channels::werner_holevo(-0.5);
  double best = 1.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j < 80; ++j) {
      const double th = kPi * i / 40, ph = 2 * kPi * j / 80;
      Vec v(2);
      v << std::cos(th / 2), std::polar(std::sin(th / 2), ph);
      const auto ev = detail::eigenvalues_unchecked(ch.apply(v * v.adjoint()));
      best = std::min(best, binary_entropy(ev(0)));
    }
  EXPECT_NEAR(moe_qubit(ch).value, best, 1e-6);
}

TEST(Moe, ZeroVerdicts) {
  const auto id = moe_is_zero(channels::identity(2));
  ASSERT_EQ(id.status, Status::certified);
  ASSERT_TRUE(id.certificate);
  EXPECT_NEAR(id.certificate->value.real(), 1.0, 1e-9);
  EXPECT_EQ(moe_is_zero(channels::amplitude_damping(0.5)).status, Status::certified);
  EXPECT_EQ(moe_is_zero(channels::depolarizing(1.0)).status, Status::no_violation_found);
  EXPECT_EQ(moe_is_zero(channels::werner_holevo(0.2)).status, Status::no_violation_found);
}

TEST(Moe, Errors) {
  EXPECT_THROW(moe_qubit(channels::identity(3)), DimensionError);
  EXPECT_THROW(channels::werner_holevo(0.5), DomainError);
}

//----------------------------------------------------------------------------
// Local discrimination
//----------------------------------------------------------------------------

TEST(Discrimination, EqualUnitariesNotDistinguishable) {
  const ComplexMatrix u = ud(0.3, 0.2, 0.1);
  const auto v = locally_distinguishable(u, u);
  EXPECT_EQ(v.status, Status::certified);
  EXPECT_FALSE(v.certificate);
}

TEST(Discrimination, TensorShortCircuit) {
  const ComplexMatrix u1(Mat::Identity(4, 4), kQQ);
  const ComplexMatrix u2(kron(pauli(3), Mat::Identity(2, 2)), kQQ);
  const auto v = locally_distinguishable(u1, u2);
  ASSERT_EQ(v.status, Status::violated);
  EXPECT_EQ(v.method, "tensor factorization");
  ASSERT_TRUE(v.certificate);
  EXPECT_LT(std::abs(v.certificate->value), 1e-9);
  // Local phases with a small spread stay apart.
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::polar(1.0, 0.5);
  const ComplexMatrix u3(kron(a, a), kQQ);
  EXPECT_EQ(locally_distinguishable(u1, u3).status, Status::certified);
}

TEST(Discrimination, VFamilyPoints) {
  const ComplexMatrix id(Mat::Identity(4, 4), kQQ);
  // Outside the region: product range stays ~0.3039 away from the origin.
  const auto far = locally_distinguishable(id, vfam(2 * kPi / 3, 10 * kPi / 7));
  EXPECT_EQ(far.status, Status::certified);
  EXPECT_FALSE(distinguishable_closed_form(2 * kPi / 3, 10 * kPi / 7));
  const auto in = locally_distinguishable(id, vfam(3.0, 3.5));
  ASSERT_EQ(in.status, Status::violated);
  EXPECT_LT(std::abs(in.certificate->value), 1e-10);
  EXPECT_TRUE(distinguishable_closed_form(3.0, 3.5));
}

TEST(Discrimination, GridAgreesWithPredicate) {
  const ComplexMatrix id(Mat::Identity(4, 4), kQQ);
  int checked = 0;
  for (int i = 0; i <= 24; ++i)
    for (int j = 0; j <= 24; ++j) {
      const double phi = 2 * kPi * i / 24, psi = 2 * kPi * j / 24;
      const auto [g1, g2] = discrimination_g(phi, psi);
      const bool band = std::abs(g1) < 1e-6 || std::abs(g2) < 1e-6;
      const bool want = distinguishable_closed_form(phi, psi);
      const bool got = locally_distinguishable(id, vfam(phi, psi)).status == Status::violated;
      if (band && want != got) continue;
      EXPECT_EQ(got, want) << phi << " " << psi;
      ++checked;
    }
  EXPECT_GT(checked, 400);
}

TEST(Discrimination, SeesawPathFindsCnotZero) {
  // <CNOT> = |a0|^2 + |a1|^2 <sigma_x>_b vanishes for a = |+>, b = |->.
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = 1.0;
  cnot(2, 3) = cnot(3, 2) = 1.0;
  const ComplexMatrix id(Mat::Identity(4, 4), kQQ);
  const auto v = locally_distinguishable(id, ComplexMatrix(cnot, kQQ), fast_cfg());
  ASSERT_EQ(v.status, Status::violated);
  EXPECT_EQ(v.method, "distance see-saw");
  EXPECT_LT(std::abs(v.certificate->value), 1e-9);
  EXPECT_EQ(v.certificate->factors.size(), 2u);
}

TEST(Discrimination, SeesawPathNoZero) {
  // exp(i pi/4 sigma_x sigma_x): <V> = (1 + i <x><x>) / sqrt 2 never vanishes.
  const ComplexMatrix id(Mat::Identity(4, 4), kQQ);
  const auto v = locally_distinguishable(id, ud(kPi / 4, 0, 0), fast_cfg());
  EXPECT_EQ(v.status, Status::no_violation_found);
}

TEST(Discrimination, VectorInRegion) {
  const auto d = discrimination_vector(3.0, 3.5);
  EXPECT_LE(d.residual, 1e-10);
  EXPECT_GE(d.t, 0.0);
  EXPECT_LE(d.t, 1.0);
  EXPECT_GE(d.s, 0.0);
  EXPECT_LE(d.s, 1.0);
  // Free phases do not matter on a diagonal V.
  EXPECT_LE(discrimination_vector(3.0, 3.5, 0.4, -1.1, 2.0, 0.3).residual, 1e-10);
}

TEST(Discrimination, VectorRandomInRegion) {
  Rng rng(17);
  int hits = 0;
  while (hits < 200) {
    const double phi = rng.uniform(0, 2 * kPi), psi = rng.uniform(0, 2 * kPi);
    if (!distinguishable_closed_form(phi, psi)) continue;
    ++hits;
    EXPECT_LE(discrimination_vector(phi, psi).residual, 1e-10) << phi << " " << psi;
  }
}

TEST(Discrimination, DegeneratePhases) {
  const auto d = discrimination_vector(kPi, kPi);
  EXPECT_LE(d.residual, 1e-10);
  EXPECT_NEAR((2 * d.t - 1) * (2 * d.s - 1), 0.0, 1e-10);
}

TEST(Discrimination, Errors) {
  EXPECT_THROW(discrimination_vector(0.0, 0.0), NoCertificateError);
  EXPECT_THROW(discrimination_vector(2 * kPi / 3, 10 * kPi / 7), NoCertificateError);
  EXPECT_THROW(discrimination_vector(-0.1, 1.0), DomainError);
  const ComplexMatrix id(Mat::Identity(4, 4), kQQ);
  EXPECT_THROW(locally_distinguishable(id, ComplexMatrix(Mat::Identity(4, 4) * 2.0, kQQ)), DomainError);
  EXPECT_THROW(locally_distinguishable(id, ComplexMatrix(Mat::Identity(2, 2), TensorSpace({2}))),
               DimensionError);
}

//----------------------------------------------------------------------------
// Fidelity bounds and geometric entanglement
//----------------------------------------------------------------------------

TEST(FidelityBound, Examples) {
  RealVec mu(2), lam(2);
  mu << 0.7, 0.3;
  lam << 0.6, 0.4;
  const double b = pure_fidelity_bound(mu, lam);
  EXPECT_NEAR(b, std::pow(std::sqrt(0.42) + std::sqrt(0.12), 2), 1e-14);
  EXPECT_NEAR(pure_fidelity_bound(mu, mu), 1.0, 1e-14);
  RealVec e(3), m3(3);
  e << 0.0, 1.0, 0.0;
  m3 << 0.2, 0.5, 0.3;
  EXPECT_NEAR(pure_fidelity_bound(m3, e), 0.5, 1e-14);
  RealVec bad(2);
  bad << 0.7, 0.7;
  EXPECT_THROW(pure_fidelity_bound(bad, lam), DomainError);
}

TEST(FidelityBound, RandomLocalUnitariesNeverExceed) {
  RealVec mu(2), lam(2);
  mu << 0.7, 0.3;
  lam << 0.6, 0.4;
  const double bound = pure_fidelity_bound(mu, lam);
  Vec psi = Vec::Zero(4), phi = Vec::Zero(4);
  psi(0) = std::sqrt(0.7);
  psi(3) = std::sqrt(0.3);
  phi(0) = std::sqrt(0.6);
  phi(3) = std::sqrt(0.4);
  Rng rng(9);
  double best = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const Mat u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
    best = std::max(best, std::norm(phi.dot(u * psi)));
  }
  EXPECT_LE(best, bound + 1e-12);
  EXPECT_GT(best, bound - 0.05);
}

TEST(GeometricEntanglement, Examples) {
  // Product state.
  Rng rng(12);
  const auto prod = haar_product_state(kQQ, rng);
  EXPECT_NEAR(geometric_entanglement(prod.pure(), kQQ).value, 0.0, 1e-9);
  // Schmidt weights (0.8, 0.2) -> -log2 0.8.
  Vec s = Vec::Zero(4);
  s(0) = std::sqrt(0.8);
  s(3) = std::sqrt(0.2);
  const Mat u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
  EXPECT_NEAR(geometric_entanglement(PureState(Vec(u * s)), kQQ).value, -std::log2(0.8), 1e-8);
  // GHZ on three qubits: max product overlap 1/2.
  Vec g = Vec::Zero(8);
  g(0) = g(7) = 1.0 / std::sqrt(2.0);
  const auto ghz = geometric_entanglement(PureState(g), TensorSpace({2, 2, 2}));
  EXPECT_NEAR(ghz.overlap, 0.5, 1e-9);
  EXPECT_NEAR(ghz.value, 1.0, 1e-8);
  EXPECT_THROW(geometric_entanglement(PureState(g), kQQ), DimensionError);
}

TEST(GeometricEntanglement, GhzGridOracle) {
  // Brute force over real-amplitude-plus-phase product states on a grid.
  double best = 0.0;
  const int n = 24;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= n; ++c) {
        const double ta = kPi / 2 * a / n, tb = kPi / 2 * b / n, tc = kPi / 2 * c / n;
        const double v = std::cos(ta) * std::cos(tb) * std::cos(tc) + std::sin(ta) * std::sin(tb) * std::sin(tc);
        best = std::max(best, v * v / 2);
      }
  Vec g = Vec::Zero(8);
  g(0) = g(7) = 1.0 / std::sqrt(2.0);
  const auto r = geometric_entanglement(PureState(g), TensorSpace({2, 2, 2}));
  EXPECT_GE(r.overlap, best - 1e-12);
  EXPECT_NEAR(best, 0.5, 1e-12);
}

//----------------------------------------------------------------------------
// Dark subspaces and codes
//----------------------------------------------------------------------------

TEST(Compression, IdentityChannelIsCode) {
  const auto ch = channels::identity(4);
  const auto r = ecc_check(ch, kQQ, 2);
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_NEAR(std::abs(r.entries[0].lambda - 1.0), 0.0, 1e-14);
}

TEST(Compression, PhaseKrausPairOnFirstBlock) {
  const double h = 1.0 / std::sqrt(2.0);
  const QuantumChannel ch({h * Mat::Identity(4, 4), h * kron(pauli(3), Mat::Identity(2, 2))});
  const std::vector<std::vector<int>> map{{0, 0}, {0, 1}};
  const auto dark = dark_subspace_check(ch, kQQ, 2, map);
  EXPECT_TRUE(dark.ok);
  ASSERT_EQ(dark.entries.size(), 2u);
  for (const auto& e : dark.entries) EXPECT_NEAR(e.lambda.real(), 0.5, 1e-14);
  const auto code = ecc_check(ch, kQQ, 2, map);
  EXPECT_TRUE(code.ok);
  EXPECT_EQ(code.entries.size(), 4u);
  for (const auto& e : code.entries) EXPECT_LE(e.residual, 1e-9);
}

TEST(Compression, DepolarizingFailsCode) {
  const auto ch = channels::depolarizing(1.0);
  const TensorSpace q({2});
  const auto code = ecc_check(ch, q, 2);
  EXPECT_FALSE(code.ok);
  EXPECT_EQ(code.entries.size(), 16u);
  EXPECT_TRUE(dark_subspace_check(ch, q, 2).ok);
  EXPECT_THROW(ecc_check(ch, q, 3), DimensionError);
  EXPECT_THROW(ecc_check(ch, kQQ, 2), DimensionError);
}

TEST(Verdict, StatusNames) {
  EXPECT_EQ(to_string(Status::violated), "violated");
  EXPECT_EQ(to_string(Status::certified), "certified");
  EXPECT_EQ(to_string(Status::no_violation_found), "no-violation-found");
}
