#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "mellin/quadrature.hpp"
#include "mellin/smooth_function.hpp"

namespace mellin {

/// The Mellin convolution (f * g)(x) = integral of y^{-1} f(x/y) g(y) dy.
///
/// Each evaluation is a real-line quadrature in u = ln y.  Derivatives use
/// the shifted kernel (f * g)^(b)(x) = integral of y^{-(b+1)} f^(b)(x/y) g(y) dy,
/// never differencing.  function() exposes the result as a SmoothFunction
/// with a certificate synthesized from M^f_{a,b} times the integral of
/// y^{a-b-1}|g|, inflated by 10%.
class ConvolutionResult {
 public:
  ConvolutionResult(SmoothFunction f, SmoothFunction g, QuadratureConfig cfg);

  [[nodiscard]] IntegralResult evaluate(double x) const { return evaluate_derivative(0, x); }
  [[nodiscard]] IntegralResult evaluate_derivative(int beta, double x) const;
  [[nodiscard]] const SmoothFunction& function() const { return function_; }
  [[nodiscard]] const QuadratureConfig& config() const { return cfg_; }

 private:
  SmoothFunction f_, g_;
  QuadratureConfig cfg_;
  SmoothFunction function_;
};

ConvolutionResult mellin_convolve(const SmoothFunction& f, const SmoothFunction& g,
                                  const QuadratureConfig& cfg = {});

/// Integral of y^{-(alpha+1)} f^(beta)(x/y) g(y) dy.
IntegralResult kernel_integral(const SmoothFunction& f, const SmoothFunction& g, double x,
                               int alpha, int beta, const QuadratureConfig& cfg);

/// |d/dx K_{b,b}(x) - K_{b+1,b+1}(x)| with the derivative by Richardson
/// extrapolated central differences at relative step 1e-4.
double convolution_derivative_residual(const SmoothFunction& f, const SmoothFunction& g, double x,
                                       int beta, const QuadratureConfig& cfg = {});

struct LogGridSpec {
  double t_min = -8.0;
  double t_max = 8.0;
  std::size_t n_points = 1024;
};

/// Samples of f(e^t) on a uniform grid t_min + i dt, i < n_points.
struct LogGridFunction {
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<double> samples;

  [[nodiscard]] std::size_t n_points() const { return samples.size(); }
  [[nodiscard]] double spacing() const {
    return samples.size() > 1 ? (t_max - t_min) / static_cast<double>(samples.size() - 1) : 0.0;
  }
  [[nodiscard]] double t_at(std::size_t i) const { return t_min + spacing() * static_cast<double>(i); }
};

/// Throws DomainError unless n_points is a power of two >= 2.
LogGridFunction sample_log_grid(const SmoothFunction& f, const LogGridSpec& spec);

/// F *_c G on the log grid by zero-padded FFT convolution with trapezoid
/// weights.  The output grid has 2 n points starting at 2 t_min.  Throws
/// TailMassExceeded when either operand has more than eps mass outside the
/// window according to its certificate.
LogGridFunction mellin_convolve_fast(const SmoothFunction& f, const SmoothFunction& g,
                                     const LogGridSpec& spec, double eps = 1e-10);

/// M_f(s) = integral of x^{s-1} f(x) dx.
IntegralResult mellin_transform(const SmoothFunction& f, double s, const QuadratureConfig& cfg = {});

/// |M_{f*g}(s) - M_f(s) M_g(s)| / (1 + |M_f(s) M_g(s)|).
double convolution_theorem_residual(const SmoothFunction& f, const SmoothFunction& g, double s,
                                    const QuadratureConfig& cfg = {});

/// (integral of y^{-1} |f(y)|^p dy)^{1/p}.
IntegralResult haar_norm(const SmoothFunction& f, double p, const QuadratureConfig& cfg = {});

struct YoungCheck {
  double p = 1.0, q = 1.0, r = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// ||f * g||_r <= ||f||_p ||g||_q in L^p(dy/y), 1/r = 1/p + 1/q - 1.
YoungCheck young_inequality_check(const SmoothFunction& f, const SmoothFunction& g, double p,
                                  double q, const QuadratureConfig& cfg = {});

}  // namespace mellin
