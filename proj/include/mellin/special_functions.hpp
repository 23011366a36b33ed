#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mellin/envelope.hpp"
#include "mellin/smooth_function.hpp"

namespace mellin {

inline constexpr int kDefaultFabiusDepth = 10;
inline constexpr int kMaxFabiusDepth = 12;

/// Exact value of the Fabius function at j / 2^n as a reduced fraction "p/q".
std::string fabius_exact(std::uint64_t j, int n);

/// Piecewise polynomial representation of the Fabius function theta on [0,1].
///
/// The mesh has 2^depth cells.  On each cell theta is replaced by its Taylor
/// polynomial about the cell midpoint; the derivatives at the midpoint come
/// exactly from the self-similarity theta'(x) = 2 theta(2x) applied to the
/// exact rational table one level finer.  At the knots themselves the exact
/// rational value, rounded once to double, is returned.
class DyadicSpline {
 public:
  explicit DyadicSpline(int depth);

  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] int degree() const { return degree_; }
  /// Lagrange remainder bound of every cell polynomial.
  [[nodiscard]] double error_bound() const { return error_bound_; }
  [[nodiscard]] std::size_t pieces() const { return std::size_t{1} << depth_; }
  /// Taylor coefficients of cell k about its midpoint.
  [[nodiscard]] std::vector<double> coefficients(std::size_t k) const;

  /// theta(x) for x in [0, 1].
  [[nodiscard]] double operator()(double x) const;
  /// Derivative of the cell polynomial itself, independent of the
  /// self-similarity route used by fabius_derivative.
  [[nodiscard]] double piece_derivative(double x) const;
  /// theta at the knot k / 2^depth, exact rational rounded to double.
  [[nodiscard]] double knot(std::size_t k) const { return knots_[k]; }
  /// theta at j / 2^{depth+1}, the finer exact table.
  [[nodiscard]] double fine_knot(std::size_t j) const { return fine_[j]; }
  /// Largest jump between adjacent cell polynomials at interior knots.
  [[nodiscard]] double continuity_defect() const;

 private:
  int depth_;
  int degree_;
  double error_bound_;
  std::vector<double> coeffs_;  // pieces() * (degree_ + 1)
  std::vector<double> knots_;   // pieces() + 1
  std::vector<double> fine_;    // 2 pieces() + 1

  [[nodiscard]] std::size_t cell(double x) const;
};

/// Shared immutable spline of the given depth, built on first use.
const DyadicSpline& fabius_spline(int depth = kDefaultFabiusDepth);

/// theta(x); DomainError outside [0, 1].
double fabius(double x, int depth = kDefaultFabiusDepth);
/// theta extended by 0 below 0 and by 1 above 1.
double fabius_extended(double x, int depth = kDefaultFabiusDepth);
/// k-th derivative of the extended theta, via
/// theta^(k)(x) = 2^{k(k+1)/2} sum_l (-1)^{s(l)} theta(2^k x - l).
/// CapabilityError when k exceeds max_order.
double fabius_derivative(double x, int k, int depth = kDefaultFabiusDepth,
                         int max_order = kDefaultMaxOrder);

/// Binary digit sum.
int digit_sum(std::uint64_t l);

/// eta(t) = theta(1 - |t|), supported on [-1, 1].
double eta(double t);
/// eta^(k)(t) by the digit-sum formula with the "- 2l - 1" offset.
double eta_derivative(double t, int k, int max_order = kDefaultMaxOrder);
/// eta^(k)(t) = 2^{k(k+1)/2} sum_{l=0}^{2^k} (-1)^{s(l)} eta(2^k t + 2^k - 2l + offset).
double eta_derivative_digit_sum(double t, int k, int offset);
/// eta^(k)(t) through reflection of theta^(k): independent of the digit-sum route.
double eta_derivative_reflected(double t, int k, int max_order = kDefaultMaxOrder);

struct ExtremalPoint {
  double t;
  double value;
  double expected;  ///< 2^{k(k+1)/2}
};

/// Point from t_1 = -1/2, t_{k+1} = 2 t_k + 1 and the value of eta^(k) there.
ExtremalPoint eta_extremal_check(int k);
/// Point from t_1 = -1/2, t_{k+1} = (t_k - 1) / 2, where eta^(k) peaks.
ExtremalPoint eta_peak_point(int k);

/// Smooth plateau function: 1 on [2/n, n], supported on [1/n, n + 1].
class CutoffFunction {
 public:
  explicit CutoffFunction(int n, int max_order = kDefaultMaxOrder);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] double value(double x) const { return derivative(0, x); }
  [[nodiscard]] double derivative(int k, double x) const;
  [[nodiscard]] Interval support() const;
  [[nodiscard]] Interval plateau() const;
  /// n^k 2^{k(k+1)/2} for k >= 1, 1 for k = 0.
  [[nodiscard]] double derivative_bound(int k) const;

 private:
  int n_;
  int max_order_;
};

CutoffFunction cutoff(int n);

}  // namespace mellin
