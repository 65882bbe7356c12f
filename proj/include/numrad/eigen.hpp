#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first strips the phase of the pivot a_pq with
/// diag(1, conj(phase)) and then applies the real symmetric Jacobi rotation,
/// so the combined 2x2 unitary is [[c, s], [-s conj(ph), c conj(ph)]].
/// Sweeps stop once the off-diagonal Frobenius mass is below 1e-12 ||H||_F
/// or after 30 sweeps.
inline EigenDecomposition hermitian_eigen(const Matrix& h) {
  const std::size_t n = h.size();
  const double scale = frobenius_norm(h);
  if (hermitian_defect(h) > 1e-10 * (1.0 + scale)) {
    throw Error(ErrorKind::NotHermitian, "hermitian_eigen input is not Hermitian");
  }

  Matrix a = herm_part(h);
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-12 * scale;
  constexpr int kMaxSweeps = 30;

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal() <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx ph = apq / mag;
        const cplx phc = std::conj(ph);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          const cplx new_kp = c * akp - s * phc * akq;
          const cplx new_kq = s * akp + c * phc * akq;
          a(k, p) = new_kp;
          a(k, q) = new_kq;
          a(p, k) = std::conj(new_kp);
          a(q, k) = std::conj(new_kq);
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * phc * vkq;
          v(k, q) = s * vkp + c * phc * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace detail {

// Householder reduction of a Hermitian matrix (row-major, overwritten) to a
// real symmetric tridiagonal (diag, |subdiag|) with the same eigenvalues.
inline void tridiagonalize(std::vector<cplx>& a, std::size_t n, std::vector<double>& diag,
                           std::vector<double>& sub) {
  diag.assign(n, 0.0);
  sub.assign(n, 0.0);
  std::vector<cplx> v(n), p(n);
  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const cplx x0 = at(k + 1, k);
    double tail2 = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail2 += std::norm(at(i, k));
    if (tail2 == 0.0) {
      sub[k] = std::abs(x0);
      continue;
    }
    const double alpha = std::sqrt(std::norm(x0) + tail2);
    const double x0_abs = std::abs(x0);
    const cplx ph = x0_abs == 0.0 ? cplx{1.0} : x0 / x0_abs;
    v[0] = x0 + ph * alpha;
    for (std::size_t i = 1; i < m; ++i) v[i] = at(k + 1 + i, k);
    const double tau = 2.0 / (std::norm(v[0]) + tail2);

    // Only the lower triangle of the trailing block is read or updated.
    double vp = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      cplx acc{};
      const cplx* row = &at(k + 1 + i, k + 1);
      for (std::size_t j = 0; j <= i; ++j) acc += row[j] * v[j];
      for (std::size_t j = i + 1; j < m; ++j) acc += std::conj(at(k + 1 + j, k + 1 + i)) * v[j];
      p[i] = tau * acc;
      vp += (std::conj(v[i]) * p[i]).real();
    }
    const double half = 0.5 * tau * vp;
    for (std::size_t i = 0; i < m; ++i) p[i] -= half * v[i];  // p now holds q
    for (std::size_t i = 0; i < m; ++i) {
      cplx* row = &at(k + 1 + i, k + 1);
      const cplx vi = v[i];
      const cplx qi = p[i];
      for (std::size_t j = 0; j <= i; ++j) row[j] -= vi * std::conj(p[j]) + qi * std::conj(v[j]);
    }
    sub[k] = alpha;
  }
  if (n >= 2) sub[n - 2] = std::abs(at(n - 1, n - 2));
  for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i).real();
}

// Implicit QL on a symmetric tridiagonal matrix, eigenvalues only.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) break;
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::sqrt(g * g + 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::sqrt(f * f + g * g);  // entries are O(||H||); no overflow guard needed
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Eigenvalues only, ascending. Householder tridiagonalization plus implicit
/// QL; this is the fast path used for the numerical-radius angle scan and for
/// spectral norms. Input is trusted to be Hermitian.
inline std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  const std::size_t n = h.size();
  std::vector<cplx> work(h.entries().begin(), h.entries().end());
  std::vector<double> d, e;
  detail::tridiagonalize(work, n, d, e);
  detail::tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

/// ||A|| = sqrt(lambda_max(A* A)).
inline double spectral_norm(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(a(k, i)) * a(k, j);
      g(i, j) = acc;
      g(j, i) = std::conj(acc);
    }
    g(i, i) = g(i, i).real();
  }
  const double top = hermitian_eigenvalues(g).back();
  return std::sqrt(std::max(top, 0.0));
}

}  // namespace numrad
