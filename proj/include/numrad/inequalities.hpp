#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "numrad/eigen.hpp"
#include "numrad/g1.hpp"
#include "numrad/herglotz.hpp"
#include "numrad/matrix.hpp"
#include "numrad/numerical_radius.hpp"

namespace numrad {

/// One evaluated instance of an inequality (or equality).
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs/rhs; 0 when both vanish, +inf when rhs = 0 < lhs
  bool pass = false;
  std::uint64_t seed = 0;
  int dim = 0;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

inline constexpr double kRelativeSlack = 1e-8;
inline constexpr double kAbsoluteSlack = 1e-10;

inline double tightness_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

/// lhs <= rhs (1 + 1e-8) + 1e-10
inline InequalityReport bound_report(std::string name, double lhs, double rhs, std::size_t dim) {
  InequalityReport r{std::move(name), lhs, rhs, tightness_ratio(lhs, rhs), false, 0, static_cast<int>(dim)};
  r.pass = lhs <= rhs * (1.0 + kRelativeSlack) + kAbsoluteSlack;
  return r;
}

/// |lhs - rhs| <= 1e-8 (1 + rhs)
inline InequalityReport equality_report(std::string name, double lhs, double rhs, std::size_t dim) {
  InequalityReport r{std::move(name), lhs, rhs, tightness_ratio(lhs, rhs), false, 0, static_cast<int>(dim)};
  r.pass = std::abs(lhs - rhs) <= kRelativeSlack * (1.0 + rhs);
  return r;
}

/// Angle grid used for w(.) inside the checkers; block matrices get a denser grid.
inline int checker_grid(std::size_t n) { return n <= 8 ? 720 : 1440; }

inline double checker_w(const Matrix& m) { return wrad(m, checker_grid(m.size())); }

enum class Sign { Plus, Minus };
enum class Thm22Variant { Sum, Diff };
enum class Cor23Variant { Re, Im };
enum class PairVariant { Commutator, Anticommutator2X };
enum class Cor26Variant { Im, RePlusI };

inline const char* variant_name(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }
inline const char* variant_name(Thm22Variant v) { return v == Thm22Variant::Sum ? "sum" : "diff"; }
inline const char* variant_name(Cor23Variant v) { return v == Cor23Variant::Re ? "re" : "im"; }
inline const char* variant_name(PairVariant v) {
  return v == PairVariant::Commutator ? "commutator" : "anticommutator2X";
}
inline const char* variant_name(Cor26Variant v) { return v == Cor26Variant::Im ? "im" : "re_plus_I"; }

namespace detail {

inline void require_same_size(std::initializer_list<const Matrix*> ms) {
  const std::size_t n = (*ms.begin())->size();
  for (const Matrix* m : ms) {
    if (m->size() != n) throw Error(ErrorKind::DimensionMismatch, "checker inputs differ in dimension");
  }
}

inline std::string qualified(const char* suite, const char* variant) { return std::string(suite) + "." + variant; }

inline Matrix signed_sum(const Matrix& a, const Matrix& b, Sign s) { return s == Sign::Plus ? a + b : a - b; }

// F_A X F_B* - F_B X F_A*   or   F_A X F_B* + 2X + F_B X F_A*
inline Matrix pair_expression(const Matrix& fa, const Matrix& fb, const Matrix& x, PairVariant v) {
  const Matrix left = fa * x * adjoint(fb);
  const Matrix right = fb * x * adjoint(fa);
  if (v == PairVariant::Commutator) return left - right;
  return left + 2.0 * x + right;
}

}  // namespace detail

/// f(A): diagonalization for operators carrying their unitary, quadrature otherwise.
inline Matrix function_of(const HerglotzFunction& f, const G1Operator& op, int nodes = 512) {
  require_certified(op);
  if (op.unitary) return apply_normal(f, *op.unitary, op.spectrum);
  return riesz_dunford(f, op.matrix, op.spectrum, nodes);
}

/// Asserts that the two f(A) paths agree within 1e-8 when both are available.
/// Returns the observed discrepancy (0 for operators without a unitary).
inline double cross_validate_paths(const HerglotzFunction& f, const G1Operator& op, int nodes = 512) {
  if (!op.unitary) return 0.0;
  const double gap = spectral_norm(apply_normal(f, *op.unitary, op.spectrum) -
                                   riesz_dunford(f, op.matrix, op.spectrum, nodes));
  if (gap > 1e-8) throw Error(ErrorKind::PathDisagreement, "diagonalization and quadrature f(A) disagree", gap);
  return gap;
}

// w(A* X A) <= ||A||^2 w(X)
inline InequalityReport check_lemma21_a(const Matrix& a, const Matrix& x) {
  detail::require_same_size({&a, &x});
  const double na = spectral_norm(a);
  return bound_report("lemma21a", checker_w(adjoint(a) * x * a), na * na * checker_w(x), a.size());
}

// w(AX +- XA*) <= 2 ||A|| w(X)
inline InequalityReport check_lemma21_b(const Matrix& a, const Matrix& x, Sign sign) {
  detail::require_same_size({&a, &x});
  const double lhs = checker_w(detail::signed_sum(a * x, x * adjoint(a), sign));
  return bound_report(detail::qualified("lemma21b", variant_name(sign)), lhs,
                      2.0 * spectral_norm(a) * checker_w(x), a.size());
}

// w(A* X B +- B* Y A) <= 2 ||A|| ||B|| w([[0, X], [Y, 0]])
inline InequalityReport check_lemma21_c(const Matrix& a, const Matrix& b, const Matrix& x, const Matrix& y,
                                        Sign sign) {
  detail::require_same_size({&a, &b, &x, &y});
  const Matrix zero(a.size());
  const double lhs = checker_w(detail::signed_sum(adjoint(a) * x * b, adjoint(b) * y * a, sign));
  const double rhs = 2.0 * spectral_norm(a) * spectral_norm(b) * checker_w(block2x2(zero, x, y, zero));
  return bound_report(detail::qualified("lemma21c", variant_name(sign)), lhs, rhs, a.size());
}

// w([[0, A X B*], [B Y A*, 0]]) <= max(||A||^2, ||B||^2) w([[0, X], [Y, 0]])
inline InequalityReport check_lemma21_d(const Matrix& a, const Matrix& b, const Matrix& x, const Matrix& y) {
  detail::require_same_size({&a, &b, &x, &y});
  const Matrix zero(a.size());
  const double lhs = checker_w(block2x2(zero, a * x * adjoint(b), b * y * adjoint(a), zero));
  const double na = spectral_norm(a);
  const double nb = spectral_norm(b);
  const double rhs = std::max(na * na, nb * nb) * checker_w(block2x2(zero, x, y, zero));
  return bound_report("lemma21d", lhs, rhs, a.size());
}

// w([[0, X], [Y, 0]]) <= (w(X + Y) + w(X - Y)) / 2
inline InequalityReport check_lemma21_e(const Matrix& x, const Matrix& y) {
  detail::require_same_size({&x, &y});
  const Matrix zero(x.size());
  const double lhs = checker_w(block2x2(zero, x, y, zero));
  const double rhs = 0.5 * (checker_w(x + y) + checker_w(x - y));
  return bound_report("lemma21e", lhs, rhs, x.size());
}

// w([[0, X], [e^{i theta} X, 0]]) = w(X)
inline InequalityReport check_lemma21_f(const Matrix& x, double theta) {
  const Matrix zero(x.size());
  const double lhs = checker_w(block2x2(zero, x, std::polar(1.0, theta) * x, zero));
  return equality_report("lemma21f", lhs, checker_w(x), x.size());
}

// sum:  w(f(A) X + X fbar(A)) <= (2 / d^2) w(X - A X A*)
// diff: w(f(A) X - X fbar(A)) <= (4 / d^2) ||A|| w(X)
inline InequalityReport check_thm22(const HerglotzFunction& f, const G1Operator& op, const Matrix& x,
                                    Thm22Variant variant, int nodes = 512) {
  detail::require_same_size({&op.matrix, &x});
  const Matrix fa = function_of(f, op, nodes);
  const Matrix fbar = fbar_apply(f, fa);
  const Matrix& a = op.matrix;
  const double d2 = op.d * op.d;
  if (variant == Thm22Variant::Sum) {
    return bound_report("thm22.sum", checker_w(fa * x + x * fbar), 2.0 / d2 * checker_w(x - a * x * adjoint(a)),
                        a.size());
  }
  return bound_report("thm22.diff", checker_w(fa * x - x * fbar), 4.0 / d2 * spectral_norm(a) * checker_w(x),
                      a.size());
}

// re: ||Re f(A)|| <= (1 / d^2) ||I - A A*||
// im: ||Im f(A)|| <= (2 / d^2) ||A||
inline InequalityReport check_cor23(const HerglotzFunction& f, const G1Operator& op, Cor23Variant variant,
                                    int nodes = 512) {
  const Matrix fa = function_of(f, op, nodes);
  const Matrix& a = op.matrix;
  const double d2 = op.d * op.d;
  if (variant == Cor23Variant::Re) {
    const Matrix defect = Matrix::identity(a.size()) - a * adjoint(a);
    return bound_report("cor23.re", spectral_norm(herm_part(fa)), spectral_norm(defect) / d2, a.size());
  }
  return bound_report("cor23.im", spectral_norm(imag_part(fa)), 2.0 / d2 * spectral_norm(a), a.size());
}

// w(pair expression) <= 2/(d_A d_B) [2 w(X) + w(A X B* + B X A*) + w(A X B* - B X A*)]
inline InequalityReport check_thm24(const HerglotzFunction& f, const G1Operator& op_a, const G1Operator& op_b,
                                    const Matrix& x, PairVariant variant, int nodes = 512) {
  detail::require_same_size({&op_a.matrix, &op_b.matrix, &x});
  const Matrix fa = function_of(f, op_a, nodes);
  const Matrix fb = function_of(f, op_b, nodes);
  const Matrix& a = op_a.matrix;
  const Matrix& b = op_b.matrix;
  const Matrix axb = a * x * adjoint(b);
  const Matrix bxa = b * x * adjoint(a);
  const double lhs = checker_w(detail::pair_expression(fa, fb, x, variant));
  const double rhs = 2.0 / (op_a.d * op_b.d) * (2.0 * checker_w(x) + checker_w(axb + bxa) + checker_w(axb - bxa));
  return bound_report(detail::qualified("thm24", variant_name(variant)), lhs, rhs, a.size());
}

// Self-adjoint X: ||pair expression|| <= 4/(d_A d_B) max(||X|| + ||A X B*||, ||X|| + ||B X A*||).
// The operator norm of |M| equals that of M, so plain norms are used.
inline InequalityReport check_rem25(const HerglotzFunction& f, const G1Operator& op_a, const G1Operator& op_b,
                                    const Matrix& x, PairVariant variant, int nodes = 512) {
  detail::require_same_size({&op_a.matrix, &op_b.matrix, &x});
  const double defect = hermitian_defect(x);
  if (defect > 1e-10 * (1.0 + frobenius_norm(x))) {
    throw Error(ErrorKind::NotSelfAdjoint, "check_rem25 requires a self-adjoint X", defect);
  }
  const Matrix fa = function_of(f, op_a, nodes);
  const Matrix fb = function_of(f, op_b, nodes);
  const Matrix& a = op_a.matrix;
  const Matrix& b = op_b.matrix;
  const double nx = spectral_norm(x);
  const double lhs = spectral_norm(detail::pair_expression(fa, fb, x, variant));
  const double rhs = 4.0 / (op_a.d * op_b.d) *
                     std::max(nx + spectral_norm(a * x * adjoint(b)), nx + spectral_norm(b * x * adjoint(a)));
  return bound_report(detail::qualified("rem25", variant_name(variant)), lhs, rhs, a.size());
}

// im:        ||Im(f(A) fbar(B))||     <= 2/(d_A d_B) (1 + ||A B*||)
// re_plus_I: ||Re(f(A) fbar(B)) + I|| <= 2/(d_A d_B) (1 + ||A B*||)
inline InequalityReport check_cor26(const HerglotzFunction& f, const G1Operator& op_a, const G1Operator& op_b,
                                    Cor26Variant variant, int nodes = 512) {
  detail::require_same_size({&op_a.matrix, &op_b.matrix});
  const Matrix fa = function_of(f, op_a, nodes);
  const Matrix fb = function_of(f, op_b, nodes);
  const Matrix product = fa * fbar_apply(f, fb);
  const std::size_t n = product.size();
  const double lhs = variant == Cor26Variant::Im ? spectral_norm(imag_part(product))
                                                 : spectral_norm(herm_part(product) + Matrix::identity(n));
  const double rhs = 2.0 / (op_a.d * op_b.d) * (1.0 + spectral_norm(op_a.matrix * adjoint(op_b.matrix)));
  return bound_report(detail::qualified("cor26", variant_name(variant)), lhs, rhs, n);
}

// w(pair expression) <= 4/(d_A d_B) (1 + max(||A||^2, ||B||^2)) w(X)
inline InequalityReport check_rem27(const HerglotzFunction& f, const G1Operator& op_a, const G1Operator& op_b,
                                    const Matrix& x, PairVariant variant, int nodes = 512) {
  detail::require_same_size({&op_a.matrix, &op_b.matrix, &x});
  const Matrix fa = function_of(f, op_a, nodes);
  const Matrix fb = function_of(f, op_b, nodes);
  const double na = spectral_norm(op_a.matrix);
  const double nb = spectral_norm(op_b.matrix);
  const double lhs = checker_w(detail::pair_expression(fa, fb, x, variant));
  const double rhs = 4.0 / (op_a.d * op_b.d) * (1.0 + std::max(na * na, nb * nb)) * checker_w(x);
  return bound_report(detail::qualified("rem27", variant_name(variant)), lhs, rhs, x.size());
}

}  // namespace numrad
