#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "numrad/matrix.hpp"
#include "numrad/random.hpp"
#include "numrad/solve.hpp"

namespace numrad {

/// f(z) = sum_j w_j (e^{i a_j} + z) / (e^{i a_j} - z): an analytic function on
/// the unit disk with Re f > 0 and f(0) = 1, given by a discrete probability
/// measure on the circle.
class HerglotzFunction {
 public:
  HerglotzFunction(std::vector<double> angles, std::vector<double> weights)
      : angles_(std::move(angles)), weights_(std::move(weights)) {
    if (angles_.empty() || angles_.size() != weights_.size()) {
      throw Error(ErrorKind::DomainError, "Herglotz measure needs k >= 1 atoms with one weight each");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < angles_.size(); ++j) {
      const double a = angles_[j];
      const double w = weights_[j];
      if (!std::isfinite(a) || a < 0.0 || a >= 2.0 * std::numbers::pi) {
        throw Error(ErrorKind::DomainError, "Herglotz angle outside [0, 2pi)", a);
      }
      if (!std::isfinite(w) || w < 0.0) throw Error(ErrorKind::DomainError, "negative Herglotz weight", w);
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-14) {
      throw Error(ErrorKind::DomainError, "Herglotz weights must sum to 1", total);
    }
  }

  std::span<const double> angles() const noexcept { return angles_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t atoms() const noexcept { return angles_.size(); }

  /// Unchecked kernel sum; callers guarantee |z| < 1.
  cplx evaluate(cplx z) const noexcept {
    cplx acc{};
    for (std::size_t j = 0; j < angles_.size(); ++j) {
      const cplx e = std::polar(1.0, angles_[j]);
      acc += weights_[j] * (e + z) / (e - z);
    }
    return acc;
  }

  friend bool operator==(const HerglotzFunction&, const HerglotzFunction&) = default;

 private:
  std::vector<double> angles_;
  std::vector<double> weights_;
};

inline cplx eval_herglotz(const HerglotzFunction& f, cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::DomainError, "eval_herglotz needs |z| < 1", std::abs(z));
  return f.evaluate(z);
}

/// Uniform angles on [0, 2pi); uniform(0,1] weights normalized to sum 1.
inline HerglotzFunction random_herglotz(std::uint64_t seed, std::size_t atoms) {
  if (atoms < 1) throw Error(ErrorKind::ConfigError, "random_herglotz needs atoms >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  std::vector<double> angles(atoms), weights(atoms);
  double total = 0.0;
  for (std::size_t j = 0; j < atoms; ++j) {
    angles[j] = angle(rng);
    weights[j] = 1.0 - mass(rng);  // (0, 1]
    total += weights[j];
  }
  for (double& w : weights) w /= total;
  return HerglotzFunction(std::move(angles), std::move(weights));
}

/// f(A) for normal A = U diag(lambdas) U*.
inline Matrix apply_normal(const HerglotzFunction& f, const Matrix& u, std::span<const cplx> lambdas) {
  const std::size_t n = u.size();
  if (lambdas.size() != n) throw Error(ErrorKind::DimensionMismatch, "apply_normal: spectrum size differs from U");
  for (const cplx& l : lambdas) {
    if (!(std::abs(l) < 1.0)) throw Error(ErrorKind::DomainError, "apply_normal: eigenvalue outside the disk", std::abs(l));
  }
  const double unitary_defect = frobenius_norm(adjoint(u) * u - Matrix::identity(n));
  if (unitary_defect > 1e-10) throw Error(ErrorKind::DomainError, "apply_normal: U is not unitary", unitary_defect);

  Vector fl(n);
  for (std::size_t i = 0; i < n; ++i) fl[i] = f.evaluate(lambdas[i]);
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * fl[k] * std::conj(u(j, k));
      out(i, j) = acc;
    }
  }
  return out;
}

namespace detail {

inline Matrix pairwise_sum(std::span<const Matrix> terms) {
  if (terms.size() == 1) return terms[0];
  const std::size_t mid = terms.size() / 2;
  return pairwise_sum(terms.first(mid)) + pairwise_sum(terms.subspan(mid));
}

}  // namespace detail

/// Cauchy integral (1/2 pi i) \oint f(z) (z - A)^{-1} dz by the trapezoid rule
/// on |z| = r, r = (max|lambda| + 1) / 2:
///   (1/N) sum_m z_m f(z_m) (z_m - A)^{-1},  z_m = r e^{2 pi i m / N}.
/// Node contributions are combined by pairwise summation in node order.
inline Matrix riesz_dunford(const HerglotzFunction& f, const Matrix& a, std::span<const cplx> spectrum,
                            int nodes = 512) {
  if (nodes < 32) throw Error(ErrorKind::DomainError, "riesz_dunford needs nodes >= 32");
  double rho = 0.0;
  for (const cplx& l : spectrum) {
    const double m = std::abs(l);
    if (!(m < 1.0)) throw Error(ErrorKind::DomainError, "riesz_dunford: spectrum touches the unit circle", m);
    rho = std::max(rho, m);
  }
  const std::size_t n = a.size();
  const double r = 0.5 * (rho + 1.0);
  const double inv_nodes = 1.0 / static_cast<double>(nodes);

  std::vector<Matrix> terms;
  terms.reserve(static_cast<std::size_t>(nodes));
  for (int m = 0; m < nodes; ++m) {
    const cplx z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(m) * inv_nodes);
    Matrix shifted = -a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += z;
    Matrix term = inverse(shifted);
    term *= z * f.evaluate(z) * inv_nodes;
    terms.push_back(std::move(term));
  }
  return detail::pairwise_sum(terms);
}

/// sum_j w_j (e^{i a_j} + A)(e^{i a_j} - A)^{-1}, exact for a discrete measure.
inline Matrix herglotz_direct(const HerglotzFunction& f, const Matrix& a) {
  const std::size_t n = a.size();
  Matrix out(n);
  for (std::size_t j = 0; j < f.atoms(); ++j) {
    const cplx e = std::polar(1.0, f.angles()[j]);
    Matrix lhs = -a;
    Matrix rhs = a;
    for (std::size_t i = 0; i < n; ++i) {
      lhs(i, i) += e;
      rhs(i, i) += e;
    }
    out += f.weights()[j] * solve(lhs, rhs);
  }
  return out;
}

/// f-bar(A) through the identity f-bar(A) = f(A)*.
inline Matrix fbar_apply(const HerglotzFunction& /*f*/, const Matrix& f_of_a) { return adjoint(f_of_a); }

/// sum_j w_j (e^{-i a_j} + A*)(e^{-i a_j} - A*)^{-1}: the conjugate kernel
/// evaluated at A*, independent of any f(A) computation.
inline Matrix fbar_direct(const HerglotzFunction& f, const Matrix& a) {
  const Matrix a_star = adjoint(a);
  const std::size_t n = a.size();
  Matrix out(n);
  for (std::size_t j = 0; j < f.atoms(); ++j) {
    const cplx e = std::polar(1.0, -f.angles()[j]);
    Matrix lhs = -a_star;
    Matrix rhs = a_star;
    for (std::size_t i = 0; i < n; ++i) {
      lhs(i, i) += e;
      rhs(i, i) += e;
    }
    out += f.weights()[j] * solve(lhs, rhs);
  }
  return out;
}

}  // namespace numrad
