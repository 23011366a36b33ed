#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mellin/certificate.hpp"
#include "mellin/quadrature.hpp"
#include "mellin/smooth_function.hpp"

namespace mellin {

/// Largest |alpha| certified for catalog functions.
inline constexpr int kCatalogAlphaMax = 24;

SmoothFunction zero_function();
/// exp(-(ln x)^2)
SmoothFunction log_gauss();
/// exp(-x - 1/x)
SmoothFunction exp_inverse();
/// eta(x - 2), supported on [1, 3]
SmoothFunction bump();
/// Smooth cutoff theta_n as a SmoothFunction.
SmoothFunction cutoff_function(int n);

/// zero, log-gauss, exp-inv, bump, theta2, theta4.
std::vector<SmoothFunction> catalog();
/// Catalog lookup by label; "theta<n>" accepts any n >= 2.
/// Throws std::invalid_argument for an unknown label.
SmoothFunction catalog_function(std::string_view label);
std::vector<std::string> catalog_labels();

struct SupEstimate {
  double value = 0.0;
  double argmax = 1.0;
};

/// sup |x^alpha f^(beta)(x)| by a log grid over the certified window with
/// golden-section refinement of the largest grid maxima.
SupEstimate seminorm_detail(const SmoothFunction& f, SeminormIndex idx, double tol = 1e-10);
double seminorm(const SmoothFunction& f, SeminormIndex idx, double tol = 1e-10);

struct MetricValue {
  double value = 0.0;
  double tail_bound = 0.0;  ///< total weight of the omitted indices
  int terms = 0;
};

/// Truncated metric sum over |alpha| + beta <= N of
/// 2^{-(|alpha|+beta)} p(f-g) / (1 + p(f-g)).
MetricValue metric(const SmoothFunction& f, const SmoothFunction& g, int N = 20,
                   double tol = 1e-10);

/// (D_v f)(u) = f(u / v).
SmoothFunction dilate(const SmoothFunction& f, double v);
SmoothFunction add(const SmoothFunction& f, const SmoothFunction& g);
SmoothFunction subtract(const SmoothFunction& f, const SmoothFunction& g);
SmoothFunction scale(double c, const SmoothFunction& f);
/// Pointwise product with Leibniz derivatives.
SmoothFunction multiply(const SmoothFunction& f, const SmoothFunction& g);

/// Points in the open window where f^(beta) changes sign, located by
/// scanning a log grid and bisecting.
std::vector<double> sign_changes(const SmoothFunction& f, int beta, double x_lo, double x_hi,
                                 int grid = 1024);

struct LpBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// lhs = integral of |x^alpha f^(beta)|^p, rhs = 2 M^p with
/// M = p_{alpha,beta}(f) + p_{alpha+2,beta}(f).
LpBoundCheck weighted_lp_bound_check(const SmoothFunction& f, int alpha, int beta, double p,
                                     const QuadratureConfig& cfg = {});

struct WitnessResult {
  SmoothFunction f_m;
  std::vector<double> constraint_sups;
  double blowup_value = 0.0;
  int blowup_order = 0;
  double constant = 0.0;
};

/// f_m(x) = C m^{-1} f(m^{1/(b+1)} x), f = bump, b the largest beta among the
/// indices and C = eps / (3^{max|alpha|} 2^{b(b+1)/2 + b + 1} sup|f|).
WitnessResult nonnormability_witness(std::span<const SeminormIndex> indices, double eps, int m);

struct DensityPoint {
  int n;
  double error;
};

/// p_{alpha,beta}(theta_n f - f) for each n.
std::vector<DensityPoint> density_experiment(const SmoothFunction& f, SeminormIndex idx,
                                             std::span<const int> ns, double tol = 1e-12);

/// Least-squares slope of ln y against ln x.
double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace mellin
