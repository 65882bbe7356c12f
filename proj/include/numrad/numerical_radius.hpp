#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "numrad/eigen.hpp"
#include "numrad/matrix.hpp"
#include "numrad/random.hpp"

namespace numrad {

struct RadiusResult {
  double value = 0.0;
  double theta_star = 0.0;  // in [0, 2pi)
  Vector witness;           // unit vector with |<A w, w>| = value
  int grid_points = 0;
};

namespace detail {

// lambda_max / lambda_min of Re(e^{i theta} A) = cos(theta) Re(A) - sin(theta) Im(A).
class RotatedHermitianPart {
 public:
  explicit RotatedHermitianPart(const Matrix& a) : re_(herm_part(a)), im_(imag_part(a)), h_(a.size()) {}

  Matrix at(double theta) const {
    Matrix h(re_.size());
    fill(theta, h);
    return h;
  }

  std::vector<double> eigenvalues(double theta) {
    fill(theta, h_);
    return hermitian_eigenvalues(h_);
  }

  double top(double theta) { return eigenvalues(theta).back(); }

 private:
  void fill(double theta, Matrix& h) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    auto out = h.entries();
    auto re = re_.entries();
    auto im = im_.entries();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * re[k] - s * im[k];
  }

  Matrix re_, im_, h_;
};

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

}  // namespace detail

/// Numerical radius w(A) = max_theta lambda_max(Re(e^{i theta} A)).
///
/// Scans a uniform grid of `grid_points` angles (an even grid is evaluated on
/// half the circle, since lambda_max(theta + pi) = -lambda_min(theta)), then
/// runs golden-section search over the two cells flanking every grid-local
/// maximum that could still hold the global maximum under the Lipschitz bound
/// ||A||_F * pi / grid_points. A plateau of equal local maxima counts as one
/// candidate refined at both ends. Ties within 1e-12 keep the smallest angle.
inline RadiusResult numerical_radius(const Matrix& a, int grid_points = 720) {
  if (grid_points < 8) throw Error(ErrorKind::DomainError, "numerical_radius: grid_points must be >= 8");
  const std::size_t n = a.size();
  RadiusResult out;
  out.grid_points = grid_points;
  if (n == 0) return out;

  const double frob = frobenius_norm(a);
  if (frob == 0.0) {
    out.witness.assign(n, cplx{});
    out.witness[0] = 1.0;
    return out;
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::size_t grid = static_cast<std::size_t>(grid_points);
  const double step = two_pi / static_cast<double>(grid);
  detail::RotatedHermitianPart rotated(a);

  std::vector<double> values(grid);
  if (grid % 2 == 0) {
    const std::size_t half = grid / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const auto eig = rotated.eigenvalues(step * static_cast<double>(k));
      values[k] = eig.back();
      values[k + half] = -eig.front();
    }
  } else {
    for (std::size_t k = 0; k < grid; ++k) values[k] = rotated.top(step * static_cast<double>(k));
  }

  const double grid_max = *std::max_element(values.begin(), values.end());
  const double slack = frob * std::numbers::pi / static_cast<double>(grid);
  auto prev = [&](std::size_t k) { return values[(k + grid - 1) % grid]; };
  auto next = [&](std::size_t k) { return values[(k + 1) % grid]; };
  auto is_candidate = [&](std::size_t k) {
    return values[k] >= grid_max - slack && values[k] >= prev(k) && values[k] >= next(k);
  };

  std::vector<std::size_t> seeds;
  for (std::size_t k = 0; k < grid; ++k) {
    if (!is_candidate(k)) continue;
    const bool run_start = k == 0 || !is_candidate(k - 1) || values[k - 1] != values[k];
    const bool run_end = k + 1 == grid || !is_candidate(k + 1) || values[k + 1] != values[k];
    if (run_start || run_end) seeds.push_back(k);
  }

  // Strict maximum inside one refinement; the 1e-12 tie rule applies only
  // between distinct candidates.
  double best_value = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  for (std::size_t k : seeds) {
    const double center = step * static_cast<double>(k);
    double cell_value = values[k];
    double cell_theta = center;
    auto consider = [&](double theta, double value) {
      if (value > cell_value) {
        cell_value = value;
        cell_theta = theta;
      }
    };
    double lo = center - step;
    double hi = center + step;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = rotated.top(c);
    double fd = rotated.top(d);
    consider(c, fc);
    consider(d, fd);
    while (hi - lo > 1e-10) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = rotated.top(c);
        consider(c, fc);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = rotated.top(d);
        consider(d, fd);
      }
    }
    cell_theta = detail::wrap_angle(cell_theta);
    if (cell_value > best_value + 1e-12) {
      best_value = cell_value;
      best_theta = cell_theta;
    } else if (cell_value >= best_value - 1e-12) {
      best_value = std::max(best_value, cell_value);
      best_theta = std::min(best_theta, cell_theta);
    }
  }

  const EigenDecomposition top = hermitian_eigen(rotated.at(best_theta));
  out.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.witness[i] = top.vectors(i, n - 1);
  out.value = std::max(best_value, 0.0);
  out.theta_star = best_theta;
  return out;
}

/// Value-only convenience.
inline double wrad(const Matrix& a, int grid_points = 720) { return numerical_radius(a, grid_points).value; }

/// Monte-Carlo lower bound: max |<Ax, x>| over `samples` seeded random unit vectors.
inline double numradius_lower_bound(const Matrix& a, std::int64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const Vector x = random_unit_vector(rng, a.size());
    best = std::max(best, std::abs(quadratic_form(a, x)));
  }
  return best;
}

}  // namespace numrad
