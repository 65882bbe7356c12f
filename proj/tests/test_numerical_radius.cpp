#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "numrad/eigen.hpp"
#include "numrad/numerical_radius.hpp"
#include "numrad/random.hpp"

using namespace numrad;
using namespace std::complex_literals;

namespace {

// Independent oracle: dense angle scan with the Jacobi solver only.
double jacobi_scan(const Matrix& a, int points) {
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const double t = 2.0 * std::numbers::pi * k / points;
    const Matrix h = herm_part(std::polar(1.0, t) * a);
    best = std::max(best, hermitian_eigen(h).values.back());
  }
  return best;
}

Matrix random_normal(Rng& rng, std::size_t n, Vector& lambdas) {
  lambdas.resize(n);
  for (auto& l : lambdas) l = complex_gaussian(rng);
  const Matrix u = haar_unitary(rng, n);
  return u * Matrix::diagonal(lambdas) * adjoint(u);
}

void expect_certified(const Matrix& a, const RadiusResult& r) {
  EXPECT_NEAR(vector_norm(r.witness), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(quadratic_form(a, r.witness)), r.value, 1e-9);
  EXPECT_GE(r.theta_star, 0.0);
  EXPECT_LT(r.theta_star, 2.0 * std::numbers::pi);
}

}  // namespace

TEST(NumericalRadius, NilpotentIsHalfNorm) {
  const Matrix a{{0.0, 1.0}, {0.0, 0.0}};
  const auto r = numerical_radius(a);
  EXPECT_NEAR(r.value, 0.5, 1e-10);
  expect_certified(a, r);
}

TEST(NumericalRadius, NormalIsNorm) {
  const cplx diag[] = {0.5, -0.3i};
  const Matrix a = Matrix::diagonal(diag);
  const auto r = numerical_radius(a);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  EXPECT_NEAR(r.theta_star, 0.0, 1e-9);
  expect_certified(a, r);
}

TEST(NumericalRadius, Identity) {
  for (int n : {1, 3, 7}) {
    const auto r = numerical_radius(Matrix::identity(n));
    EXPECT_NEAR(r.value, 1.0, 1e-14);
    EXPECT_EQ(r.grid_points, 720);
  }
}

TEST(NumericalRadius, ZeroMatrix) {
  const auto r = numerical_radius(Matrix(3));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.theta_star, 0.0);
  ASSERT_EQ(r.witness.size(), 3u);
  EXPECT_EQ(r.witness[0], cplx{1.0});
}

TEST(NumericalRadius, JordanBlockClosedForm) {
  // w([[a, 1], [0, a]]) = |a| + 1/2
  for (double a : {0.0, 0.25, 0.9}) {
    const Matrix j{{a, 1.0}, {0.0, a}};
    EXPECT_NEAR(wrad(j), a + 0.5, 1e-12);
  }
}

TEST(NumericalRadius, FrozenNonNormalValue) {
  // Reference from an independent dense scan + Brent refinement in double precision.
  const Matrix a{{1.0, 2i, 0.0}, {0.0, -1.0, 1.0 + 1i}, {0.5, 0.0, 0.3i}};
  const auto r = numerical_radius(a);
  EXPECT_NEAR(r.value, 1.7346536872893152, 1e-12);
  EXPECT_NEAR(r.theta_star, 3.3054112821583415, 1e-6);
  expect_certified(a, r);
}

TEST(NumericalRadius, RejectsTinyGrid) { EXPECT_THROW(numerical_radius(Matrix::identity(2), 7), Error); }

TEST(NumericalRadius, OddGridMatchesEvenGrid) {
  Rng rng(20);
  const Matrix a = random_matrix(rng, 5);
  EXPECT_NEAR(wrad(a, 721), wrad(a, 720), 1e-12);
}

TEST(NumericalRadius, AgreesWithJacobiScanOracle) {
  Rng rng(21);
  for (int n = 2; n <= 6; ++n) {
    const Matrix a = random_matrix(rng, n);
    const double oracle = jacobi_scan(a, 20000);
    const double v = wrad(a);
    // The oracle is a lower bound with grid error <= ||A|| (pi / 20000)^2 / 2 near a smooth maximum.
    EXPECT_GE(v, oracle - 1e-12);
    EXPECT_LE(v - oracle, spectral_norm(a) * 1e-7);
  }
}

TEST(NumericalRadius, MonteCarloNeverExceeds) {
  Rng rng(22);
  const Matrix a = random_matrix(rng, 4);
  const double v = wrad(a);
  EXPECT_LE(numradius_lower_bound(a, 100000, 7), v + 1e-8);
}

TEST(NumericalRadius, PlateauMaximum) {
  // [[0, X], [-X, 0]] with X nilpotent is nilpotent with a disk-shaped numerical range.
  const Matrix x{{0.0, 1.0}, {0.0, 0.0}};
  const Matrix zero(2);
  const Matrix b = block2x2(zero, x, -x, zero);
  const auto r = numerical_radius(b, 1440);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  expect_certified(b, r);
}

TEST(NumericalRadius, TiesReportSmallestAngle) {
  // Eigenvalues 1 and -1: maxima at theta = 0 and theta = pi.
  const cplx diag[] = {1.0, -1.0};
  const auto r = numerical_radius(Matrix::diagonal(diag));
  EXPECT_NEAR(r.value, 1.0, 1e-14);
  EXPECT_NEAR(r.theta_star, 0.0, 1e-9);
}

TEST(NumradiusLowerBound, Examples) {
  EXPECT_DOUBLE_EQ(numradius_lower_bound(Matrix::identity(3), 10, 1), 1.0);
  EXPECT_EQ(numradius_lower_bound(Matrix(3), 10, 1), 0.0);
}

TEST(NumradiusLowerBound, ConvergesFromBelow) {
  // In C^3 the best-of-N gap decays like N^{-1/2}: about 1e-3 relative at N = 1e5.
  Rng rng(23);
  for (int k = 0; k < 5; ++k) {
    const Matrix a = random_matrix(rng, 3);
    const double w = wrad(a);
    const double coarse = w - numradius_lower_bound(a, 1000, 5 + k);
    const double fine = w - numradius_lower_bound(a, 100000, 5 + k);
    EXPECT_GE(fine, -1e-12);
    EXPECT_LT(fine, coarse);
    EXPECT_LE(fine, 1e-2 * w);
  }
}

// ---- properties over random populations

TEST(NumericalRadiusProperty, SandwichBetweenHalfNormAndNorm) {
  Rng rng(30);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 15;
    const Matrix a = random_matrix(rng, n);
    const double v = wrad(a);
    const double nrm = spectral_norm(a);
    EXPECT_GE(v, 0.5 * nrm - 1e-12);
    EXPECT_LE(v, nrm + 1e-9);
  }
}

TEST(NumericalRadiusProperty, Homogeneity) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 2 + trial % 5);
    const cplx c = 3.0 * complex_gaussian(rng);
    EXPECT_NEAR(wrad(c * a), std::abs(c) * wrad(a), 1e-9 * std::abs(c) * wrad(a));
  }
}

TEST(NumericalRadiusProperty, AdjointSymmetry) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 2 + trial % 6);
    const double v = wrad(a);
    EXPECT_NEAR(wrad(adjoint(a)), v, 1e-9 * v);
  }
}

TEST(NumericalRadiusProperty, TriangleInequality) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const Matrix a = random_matrix(rng, n);
    const Matrix b = random_matrix(rng, n);
    EXPECT_LE(wrad(a + b), wrad(a) + wrad(b) + 1e-9);
  }
}

TEST(NumericalRadiusProperty, NormalMatricesGiveSpectralRadius) {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    Vector lambdas;
    const Matrix a = random_normal(rng, 2 + trial % 7, lambdas);
    double rho = 0.0;
    for (auto l : lambdas) rho = std::max(rho, std::abs(l));
    EXPECT_NEAR(wrad(a), rho, 1e-9);
  }
}

TEST(NumericalRadiusProperty, WitnessCertificate) {
  Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = random_matrix(rng, 1 + trial % 9);
    expect_certified(a, numerical_radius(a));
  }
}

TEST(NumericalRadiusProperty, UnitarySimilarityInvariance) {
  Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const Matrix a = random_matrix(rng, n);
    const Matrix u = haar_unitary(rng, n);
    EXPECT_NEAR(wrad(adjoint(u) * a * u), wrad(a), 1e-9);
  }
}
