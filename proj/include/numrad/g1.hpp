#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "numrad/eigen.hpp"
#include "numrad/matrix.hpp"
#include "numrad/random.hpp"
#include "numrad/solve.hpp"

namespace numrad {

/// Operator satisfying ||(z - A)^{-1}|| = 1 / dist(z, sigma(A)) with sigma(A)
/// inside the unit disk. Generated operators are normal and carry their
/// diagonalizing unitary; operators read from files carry a certificate.
struct G1Operator {
  Matrix matrix;
  std::vector<cplx> spectrum;
  std::optional<Matrix> unitary;
  double d = 0.0;  // dist(unit circle, spectrum)
  std::optional<double> certificate;
};

inline constexpr double kG1CertificateThreshold = 1e-6;

/// min_i (1 - |lambda_i|); refuses spectra within 1e-12 of the circle.
inline double boundary_distance(std::span<const cplx> spectrum) {
  if (spectrum.empty()) throw Error(ErrorKind::DomainError, "boundary_distance of an empty spectrum");
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& l : spectrum) {
    const double m = std::abs(l);
    if (!(m < 1.0 - 1e-12)) throw Error(ErrorKind::SpectrumOnBoundary, "eigenvalue on or outside the unit circle", m);
    d = std::min(d, 1.0 - m);
  }
  return d;
}

inline Matrix unitary_diagonal_product(const Matrix& u, std::span<const cplx> lambdas) {
  const std::size_t n = u.size();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * lambdas[k] * std::conj(u(j, k));
      out(i, j) = acc;
    }
  }
  return out;
}

/// Normal operator U diag(spectrum) U*.
inline G1Operator make_normal_g1(Matrix u, std::vector<cplx> spectrum) {
  if (spectrum.size() != u.size()) throw Error(ErrorKind::DimensionMismatch, "spectrum size differs from U");
  G1Operator op;
  op.d = boundary_distance(spectrum);
  op.matrix = unitary_diagonal_product(u, spectrum);
  op.spectrum = std::move(spectrum);
  op.unitary = std::move(u);
  return op;
}

/// Eigenvalues uniform on the disk of radius rho_max (rejection from the
/// bounding square), Haar unitary eigenbasis.
inline G1Operator random_g1(std::uint64_t seed, std::size_t n, double rho_max) {
  if (!(rho_max > 0.0 && rho_max < 1.0)) throw Error(ErrorKind::ConfigError, "rho_max must lie in (0, 1)", rho_max);
  if (n < 1) throw Error(ErrorKind::ConfigError, "dimension must be >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(-rho_max, rho_max);
  std::vector<cplx> spectrum;
  spectrum.reserve(n);
  while (spectrum.size() < n) {
    const cplx z{coord(rng), coord(rng)};
    if (std::abs(z) <= rho_max) spectrum.push_back(z);
  }
  Matrix u = haar_unitary(rng, n);
  return make_normal_g1(std::move(u), std::move(spectrum));
}

inline double normality_residual(const Matrix& a) {
  const Matrix a_star = adjoint(a);
  return frobenius_norm(a_star * a - a * a_star);
}

/// ||(z - A)^{-1}||
inline double resolvent_norm(const Matrix& a, cplx z) {
  Matrix shifted = -a;
  for (std::size_t i = 0; i < a.size(); ++i) shifted(i, i) += z;
  return spectral_norm(inverse(shifted));
}

inline double spectrum_distance(std::span<const cplx> spectrum, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& l : spectrum) d = std::min(d, std::abs(z - l));
  return d;
}

/// max |‖(z - A)^{-1}‖ dist(z, sigma) - 1| over `circle_samples` points on
/// each ring of each radius around each eigenvalue plus `circle_samples`
/// points on the unit circle. Ring points closer than 1e-6 to another
/// eigenvalue are skipped.
inline double certify_g1(const G1Operator& op, int circle_samples, std::span<const double> radii) {
  if (circle_samples < 1) throw Error(ErrorKind::ConfigError, "certify_g1 needs circle_samples >= 1");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(circle_samples);
  double worst = 0.0;
  auto probe = [&](cplx z) {
    const double dist = spectrum_distance(op.spectrum, z);
    if (dist < 1e-6) return;
    worst = std::max(worst, std::abs(resolvent_norm(op.matrix, z) * dist - 1.0));
  };
  for (int k = 0; k < circle_samples; ++k) probe(std::polar(1.0, step * k));
  for (const cplx& l : op.spectrum) {
    for (double r : radii) {
      for (int k = 0; k < circle_samples; ++k) probe(l + std::polar(r, step * k));
    }
  }
  return worst;
}

inline constexpr double kDefaultRingRadii[] = {0.05, 0.1, 0.2};

inline double certify_g1(const G1Operator& op, int circle_samples = 64) {
  return certify_g1(op, circle_samples, kDefaultRingRadii);
}

/// Gatekeeper for the inequality checkers: normal operators must match
/// U diag(spectrum) U* and commute with their adjoint; anything else needs a
/// stored certificate <= 1e-6.
inline void require_certified(const G1Operator& op) {
  if (op.spectrum.size() != op.matrix.size()) {
    throw Error(ErrorKind::DimensionMismatch, "spectrum size differs from matrix size");
  }
  if (op.unitary) {
    const double scale = frobenius_norm(op.matrix);
    const double mismatch = frobenius_norm(op.matrix - unitary_diagonal_product(*op.unitary, op.spectrum));
    if (mismatch > 1e-10 * (1.0 + scale)) {
      throw Error(ErrorKind::CertificationFailed, "matrix differs from U diag(spectrum) U*", mismatch);
    }
    const double residual = normality_residual(op.matrix);
    if (residual > 1e-10 * scale * scale) {
      throw Error(ErrorKind::CertificationFailed, "operator is not normal", residual);
    }
    return;
  }
  if (!op.certificate) throw Error(ErrorKind::CertificationFailed, "operator carries no G1 certificate");
  if (!(*op.certificate <= kG1CertificateThreshold)) {
    throw Error(ErrorKind::CertificationFailed, "G1 certificate above threshold", *op.certificate);
  }
}

}  // namespace numrad
