#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mellin/quadrature.hpp"
#include "mellin/smooth_function.hpp"

namespace mellin {

/// Black-box linear functional on smooth functions.  apply must be safe to
/// call concurrently.
struct FunctionalOracle {
  std::function<double(const SmoothFunction&)> apply;
  std::string description;

  double operator()(const SmoothFunction& f) const { return apply(f); }
};

/// m_s(f) = integral of x^{s-1} f(x) dx.  The description does not reveal s.
FunctionalOracle functional_ms(double s, const QuadratureConfig& cfg = {});
/// f -> f(x0): linear but not multiplicative for convolution.
FunctionalOracle point_evaluation(double x0);

/// |m(f + g) - m(f) - m(g)|
double linearity_residual(const FunctionalOracle& m, const SmoothFunction& f, const SmoothFunction& g);
/// |m(f * g) - m(f) m(g)| / (1 + |m(f) m(g)|)
double multiplicativity_residual(const FunctionalOracle& m, const SmoothFunction& f,
                                 const SmoothFunction& g, const QuadratureConfig& cfg = {});

/// max over u of |(D_y g * D_x g)(u) - (g * D_{xy} g)(u)|.
double dilation_identity_residual(const SmoothFunction& g, double x, double y,
                                  std::span<const double> probes, const QuadratureConfig& cfg = {});

struct RecoveryReport {
  double s_estimate = 0.0;
  std::vector<std::pair<double, double>> phi_samples;  ///< (x, phi(x))
  double consistency_residual = 0.0;
  double base_value = 0.0;  ///< m(g_star)
};

/// phi(x) = m(D_x g_star) / m(g_star); s is the mean of ln phi(x) / ln x.
/// Throws DegenerateBase when m(g_star) = 0 and DomainError for a probe at 1.
RecoveryReport recover_exponent(const FunctionalOracle& m, const SmoothFunction& g_star,
                                std::span<const double> probes);

/// E_c(s) = integral over (1,3) of (x^s - x^c) exp(-1/((3-x)(x-1))) dx.
IntegralResult e_function(double c, double s, const QuadratureConfig& cfg = {});

struct MonotonicityCheck {
  bool increasing = true;
  std::vector<IntegralResult> values;
  std::vector<double> differences;
  /// difference / (sum of the two error estimates); must exceed 10
  std::vector<double> error_ratios;
};

/// Strict increase of E_c over an ascending grid, each step exceeding ten
/// times the combined quadrature error estimate.
MonotonicityCheck e_monotonicity_check(double c, std::span<const double> s_grid,
                                       const QuadratureConfig& cfg = {});

}  // namespace mellin
