#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "numrad/error.hpp"

namespace numrad {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

/// Dense square complex matrix, row-major. Every operator in the library
/// (A, B, X, block matrices, resolvents) is one of these.
class Matrix {
 public:
  Matrix() = default;

  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}

  Matrix(std::size_t n, std::vector<cplx> entries) : n_(n), data_(std::move(entries)) {
    if (data_.size() != n * n) {
      throw Error(ErrorKind::DimensionMismatch, "entry count does not match n*n");
    }
  }

  /// Row-list literal; rows must all have the same length as the row count.
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) {
        throw Error(ErrorKind::DimensionMismatch, "matrix literal is not square");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const cplx> diag) {
    Matrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  bool all_finite() const noexcept {
    for (const cplx& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

  Matrix& operator+=(const Matrix& rhs) {
    require_same_size(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& rhs) {
    require_same_size(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }

  Matrix& operator*=(cplx s) noexcept {
    for (cplx& z : data_) z *= s;
    return *this;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_size(const Matrix& rhs) const {
    if (rhs.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "matrix sizes differ");
  }

  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

inline Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
inline Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
inline Matrix operator*(Matrix m, cplx s) { return m *= s; }
inline Matrix operator*(cplx s, Matrix m) { return m *= s; }
inline Matrix operator-(Matrix m) { return m *= -1.0; }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix product size mismatch");
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline Vector operator*(const Matrix& a, std::span<const cplx> x) {
  const std::size_t n = a.size();
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

/// Conjugate transpose A*.
inline Matrix adjoint(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

/// Re(A) = (A + A*)/2. Diagonal is forced real so the result is exactly Hermitian.
inline Matrix herm_part(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      r(i, j) = v;
      r(j, i) = std::conj(v);
    }
  }
  return r;
}

/// Im(A) = (A - A*)/(2i), also exactly Hermitian.
inline Matrix imag_part(const Matrix& a) {
  const std::size_t n = a.size();
  const cplx half_over_i{0.0, -0.5};
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r(i, i) = a(i, i).imag();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = half_over_i * (a(i, j) - std::conj(a(j, i)));
      r(i, j) = v;
      r(j, i) = std::conj(v);
    }
  }
  return r;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const cplx& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline double hermitian_defect(const Matrix& a) { return frobenius_norm(a - adjoint(a)); }

/// [[a11, a12], [a21, a22]] as a 2n x 2n matrix.
inline Matrix block2x2(const Matrix& a11, const Matrix& a12, const Matrix& a21, const Matrix& a22) {
  const std::size_t n = a11.size();
  if (a12.size() != n || a21.size() != n || a22.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "block2x2 blocks must share one size");
  }
  Matrix r(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r(i, j) = a11(i, j);
      r(i, j + n) = a12(i, j);
      r(i + n, j) = a21(i, j);
      r(i + n, j + n) = a22(i, j);
    }
  }
  return r;
}

/// x* y
inline cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  cplx acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

inline double vector_norm(std::span<const cplx> x) { return std::sqrt(inner(x, x).real()); }

/// <Ax, x> = x* A x
inline cplx quadratic_form(const Matrix& a, std::span<const cplx> x) {
  const Vector ax = a * x;
  return inner(x, ax);
}

}  // namespace numrad
