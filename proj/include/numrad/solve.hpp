#pragma once

#include <cmath>
#include <utility>

#include "numrad/matrix.hpp"

namespace numrad {

/// Solves A X = B by LU with partial pivoting.
/// Throws Singular when a pivot falls below 1e-13 ||A||_F.
inline Matrix solve(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve: A and B sizes differ");
  const double pivot_floor = 1e-13 * frobenius_norm(a);

  Matrix lu = a;
  Matrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(lu(i, k));
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (!(best > pivot_floor)) {
      throw Error(ErrorKind::Singular, "solve: pivot below threshold", best);
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(piv, j));
        std::swap(x(k, j), x(piv, j));
      }
    }
    const cplx inv_pivot = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx factor = lu(i, k) * inv_pivot;
      if (factor == cplx{}) continue;
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= factor * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    const cplx inv_pivot = 1.0 / lu(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = x(k, j);
      for (std::size_t m = k + 1; m < n; ++m) acc -= lu(k, m) * x(m, j);
      x(k, j) = acc * inv_pivot;
    }
  }
  return x;
}

inline Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.size())); }

}  // namespace numrad
