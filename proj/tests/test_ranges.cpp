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

Mat nilpotent() {
  Mat n = Mat::Zero(2, 2);
  n(0, 1) = 1.0;
  return n;
}

Mat diag(std::vector<cplx> d) {
  Mat m = Mat::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

// Region distance both ways between two sampled boundaries.
double region_gap(const PlanarSet& a, const PlanarSet& b) {
  double d = 0.0;
  for (cplx z : a.boundary) d = std::max(d, b.distance(z));
  for (cplx z : b.boundary) d = std::max(d, a.distance(z));
  return d;
}

}  // namespace

TEST(NumericalRange, HermitianIsSegment) {
  Rng rng(3);
  const Mat h = random_hermitian(4, rng);
  const RealVec ev = detail::eigenvalues_unchecked(h);
  const PlanarSet s = numerical_range(h);
  ASSERT_TRUE(s.flat);
  EXPECT_NEAR(s.boundary.front().real(), ev(0), 1e-10);
  EXPECT_NEAR(s.boundary.back().real(), ev(3), 1e-10);
  for (cplx z : s.boundary) EXPECT_NEAR(z.imag(), 0.0, 1e-12);
}

TEST(NumericalRange, IdentityIsPoint) {
  const PlanarSet s = numerical_range(Mat(Mat::Identity(3, 3)));
  ASSERT_TRUE(s.is_point());
  EXPECT_NEAR(std::abs(s.boundary[0] - 1.0), 0.0, 1e-14);
}

TEST(NumericalRange, NormalMatrixIsPolygon) {
  const Mat d = diag({1.0, cplx(0, 1), -1.0, cplx(0, -1)});
  const PlanarSet s = numerical_range(d);
  // Square with vertices at the eigenvalues.
  for (cplx z : s.boundary) EXPECT_NEAR(std::abs(z.real()) + std::abs(z.imag()), 1.0, 1e-9);
  for (cplx e : {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)})
    EXPECT_LT(s.boundary_distance(e), 1e-9);
}

TEST(NumericalRange, NilpotentIsDisk) {
  const PlanarSet s = numerical_range(nilpotent());
  ASSERT_FALSE(s.flat);
  double worst_vertex = 0.0, worst_edge = 0.0;
  const size_t n = s.boundary.size();
  for (size_t i = 0; i < n; ++i) {
    worst_vertex = std::max(worst_vertex, std::abs(std::abs(s.boundary[i]) - 0.5));
    const double dmid = 0.5 - std::abs(0.5 * (s.boundary[i] + s.boundary[(i + 1) % n]));
    worst_edge = std::max(worst_edge, dmid);
  }
  // Inscribed polygon: vertices on the circle, chords within 1e-6 of it.
  EXPECT_LT(worst_vertex, 1e-12);
  EXPECT_LT(worst_edge, 1e-6);
  // Expectations of random states land inside.
  Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const Vec v = haar_vector(2, rng);
    EXPECT_TRUE(s.contains(expectation(nilpotent(), v), 1e-6));
  }
}

TEST(NumericalRange, ConvexAndContainsSpectrum) {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat x = ginibre(4, 4, rng);
    const PlanarSet s = numerical_range(x);
    const size_t n = s.boundary.size();
    for (size_t i = 0; i < n; ++i) {
      const double c = cross(s.boundary[i], s.boundary[(i + 1) % n], s.boundary[(i + 2) % n]);
      EXPECT_GE(c, -1e-10);
    }
    Eigen::ComplexEigenSolver<Mat> es(x);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(s.contains(es.eigenvalues()(i), 1e-8));
    for (int k = 0; k < 100; ++k)
      EXPECT_TRUE(s.contains(expectation(x, haar_vector(4, rng)), 1e-6));
  }
}

TEST(NumericalRange, TranslationCovariance) {
  Rng rng(7);
  const Mat x = ginibre(3, 3, rng);
  const cplx alpha(0.7, -1.3);
  const PlanarSet a = numerical_range(x);
  const PlanarSet b = numerical_range(Mat(x + alpha * Mat::Identity(3, 3)));
  ASSERT_EQ(a.boundary.size(), b.boundary.size());
  for (size_t i = 0; i < a.boundary.size(); ++i)
    EXPECT_LT(std::abs(a.boundary[i] + alpha - b.boundary[i]), 1e-9);
}

TEST(NumericalRange, ScalarCovariance) {
  Rng rng(8);
  const Mat x = ginibre(3, 3, rng);
  // Positive scaling keeps the angular grid.
  const PlanarSet a = numerical_range(x);
  const PlanarSet b = numerical_range(Mat(2.5 * x));
  ASSERT_EQ(a.boundary.size(), b.boundary.size());
  for (size_t i = 0; i < a.boundary.size(); ++i)
    EXPECT_LT(std::abs(2.5 * a.boundary[i] - b.boundary[i]), 1e-9);
  // A complex scalar rotates the support directions.
  const cplx alpha = std::polar(1.7, 0.9);
  for (int k = 0; k < 72; ++k) {
    const double t = 2 * kPi * k / 72;
    const cplx za = alpha * support_point(x, t).value;
    const cplx zb = support_point(Mat(alpha * x), t + std::arg(alpha)).value;
    EXPECT_LT(std::abs(za - zb), 1e-9);
  }
  // Both polygons are inscribed; each chord deviates by at most the sagitta.
  const PlanarSet c = numerical_range(Mat(alpha * x));
  double diam = 0.0;
  for (cplx z : c.boundary)
    for (cplx w : c.boundary) diam = std::max(diam, std::abs(z - w));
  EXPECT_LT(region_gap(c, minkowski_product(PlanarSet::point(alpha), a)), 2e-7 * diam + 1e-12);
}

TEST(NumericalRange, UnitaryInvariance) {
  Rng rng(9);
  const Mat x = ginibre(3, 3, rng);
  const Mat u = haar_unitary(3, rng);
  const PlanarSet a = numerical_range(x);
  const PlanarSet b = numerical_range(Mat(u * x * u.adjoint()));
  EXPECT_LT(region_gap(a, b), 1e-6);
}

TEST(NumericalRadius, Examples) {
  EXPECT_NEAR(numerical_radius(nilpotent()), 0.5, 1e-12);
  for (double phi : {0.3, 1.0, 2.0, kPi})
    EXPECT_NEAR(numerical_radius(diag({1.0, std::polar(1.0, phi)})), 1.0, 1e-12);
  Rng rng(12);
  for (int k = 0; k < 10; ++k) {
    const Mat x = ginibre(3, 3, rng);
    const Mat y = ginibre(3, 3, rng);
    const double rx = numerical_radius(x), ry = numerical_radius(y);
    EXPECT_LE(numerical_radius(Mat(x + y)), rx + ry + 1e-10);
    Eigen::ComplexEigenSolver<Mat> es(x);
    EXPECT_GE(rx, es.eigenvalues().cwiseAbs().maxCoeff() - 1e-10);
    EXPECT_NEAR(rx, numerical_range(x).max_modulus(), 1e-6);
    // r(X) <= ||X|| <= 2 r(X)
    const double op = Eigen::JacobiSVD<Mat>(x).singularValues()(0);
    EXPECT_LE(rx, op + 1e-10);
    EXPECT_LE(op, 2 * rx + 1e-10);
  }
}

TEST(Fov, PreimageOfInteriorAndBoundary) {
  Rng rng(21);
  const Mat x = ginibre(4, 4, rng);
  for (int k = 0; k < 20; ++k) {
    const Vec v = haar_vector(4, rng);
    const cplx w = expectation(x, v);
    const auto pre = fov_preimage(x, w);
    ASSERT_TRUE(pre.has_value());
    EXPECT_NEAR(pre->norm(), 1.0, 1e-12);
    EXPECT_LT(std::abs(expectation(x, *pre) - w), 1e-9);
  }
  const auto sp = support_point(x, 0.4);
  const auto pre = fov_preimage(x, sp.value);
  ASSERT_TRUE(pre.has_value());
  // Far outside has no preimage; the nearest point sits on the boundary.
  const cplx far = 10.0 * numerical_radius(x) + 1.0;
  EXPECT_FALSE(fov_preimage(x, far).has_value());
  const FovPoint fp = fov_nearest(x, far);
  EXPECT_LT(numerical_range(x).boundary_distance(fp.value), 1e-6);
}

TEST(Minkowski, PointIsIdentity) {
  Rng rng(31);
  const PlanarSet s = numerical_range(ginibre(3, 3, rng));
  const PlanarSet p = minkowski_product(PlanarSet::point(1.0), s);
  ASSERT_EQ(p.boundary.size(), s.boundary.size());
  for (size_t i = 0; i < s.boundary.size(); ++i) EXPECT_EQ(p.boundary[i], s.boundary[i]);
}

TEST(Minkowski, Intervals) {
  const PlanarSet p = minkowski_product(PlanarSet::segment(1.0, 2.0), PlanarSet::segment(3.0, 4.0));
  ASSERT_TRUE(p.flat);
  for (cplx z : p.boundary) {
    EXPECT_GE(z.real(), 3.0 - 1e-12);
    EXPECT_LE(z.real(), 8.0 + 1e-12);
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
  }
  EXPECT_NEAR(p.min_modulus(), 3.0, 1e-12);
  EXPECT_NEAR(p.max_modulus(), 8.0, 1e-12);
}

TEST(Minkowski, Commutative) {
  Rng rng(41);
  for (int k = 0; k < 3; ++k) {
    const PlanarSet a = numerical_range(ginibre(2, 2, rng));
    const PlanarSet b = numerical_range(ginibre(3, 3, rng));
    EXPECT_LE(hausdorff(minkowski_product(a, b), minkowski_product(b, a)), 1e-8);
  }
}

TEST(Minkowski, ProductsOfSamplesInside) {
  Rng rng(42);
  const Mat a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
  const PlanarSet p = minkowski_product(numerical_range(a), numerical_range(b));
  const double scale = p.max_modulus();
  for (int k = 0; k < 300; ++k) {
    const cplx z = expectation(a, haar_vector(2, rng)) * expectation(b, haar_vector(2, rng));
    EXPECT_TRUE(p.contains(z, 2e-3 * scale));
  }
}

TEST(Minkowski, ArcPowerMinModulus) {
  // Lambda(U) for U = diag(1, e^{i phi}) is the chord [1, e^{i phi}].
  const double phi = 3 * kPi / 5;
  const PlanarSet chord = numerical_range(diag({1.0, std::polar(1.0, phi)}));
  for (int n = 1; n <= 8; ++n) {
    const PlanarSet p = minkowski_power(chord, n);
    EXPECT_NEAR(p.min_modulus(), std::pow(std::cos(phi / 2), n), 1e-6) << n;
    EXPECT_LE(p.max_modulus(), 1.0 + 1e-12);
  }
}

TEST(ProductRangeOfTensor, ScalarFactor) {
  Rng rng(51);
  const Mat a = ginibre(3, 3, rng);
  const PlanarSet s = product_range_of_tensor({a, Mat(Mat::Identity(2, 2))});
  const PlanarSet ref = numerical_range(a);
  ASSERT_EQ(s.boundary.size(), ref.boundary.size());
  for (size_t i = 0; i < ref.boundary.size(); ++i)
    EXPECT_LT(std::abs(s.boundary[i] - ref.boundary[i]), 1e-14);
}

TEST(ProductRangeOfTensor, Barycenter) {
  Rng rng(52);
  for (int k = 0; k < 5; ++k) {
    const Mat a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
    const PlanarSet s = product_range_of_tensor({a, b});
    const cplx bary = a.trace() / 2.0 * (b.trace() / 3.0);
    EXPECT_TRUE(s.contains(bary, 1e-9));
  }
}
