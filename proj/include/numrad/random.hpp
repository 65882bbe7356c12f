#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "numrad/matrix.hpp"

namespace numrad {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to spread structured seeds over 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stream seed for one (master seed, suite, dim, trial) cell.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::string_view suite, std::uint64_t dim,
                                   std::uint64_t trial) noexcept {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ fnv1a(suite));
  h = mix64(h ^ dim);
  return mix64(h ^ trial);
}

inline cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

/// Ginibre matrix with entries (N(0,1) + i N(0,1)) / sqrt(2n).
inline Matrix random_matrix(Rng& rng, std::size_t n) {
  Matrix m(n);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  for (cplx& z : m.entries()) z = scale * complex_gaussian(rng);
  return m;
}

inline Matrix random_hermitian(Rng& rng, std::size_t n) { return herm_part(random_matrix(rng, n)); }

/// Uniformly distributed unit vector in C^n.
inline Vector random_unit_vector(Rng& rng, std::size_t n) {
  Vector x(n);
  for (cplx& z : x) z = complex_gaussian(rng);
  const double nrm = vector_norm(x);
  for (cplx& z : x) z /= nrm;
  return x;
}

/// Haar unitary: Gram-Schmidt QR of a complex Gaussian matrix. The R factor
/// produced this way has a positive real diagonal, which is the phase fix
/// that makes Q Haar distributed. Columns are orthogonalized twice.
inline Matrix haar_unitary(Rng& rng, std::size_t n) {
  Matrix g(n);
  for (cplx& z : g.entries()) z = complex_gaussian(rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

}  // namespace numrad
