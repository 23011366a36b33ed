#pragma once

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "mellin/envelope.hpp"
#include "mellin/smooth_function.hpp"

namespace mellin {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_refinement_depth = 12;
  /// Tails cut by the envelope are kept below tolerance / truncation_margin.
  double truncation_margin = 1e3;

  /// Throws DomainError on an invalid combination.
  void validate() const;
  /// Tighter copy for integrals nested inside another integrand.
  [[nodiscard]] QuadratureConfig nested(double factor = 1e-2) const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
  /// Certified bound on the mass discarded by domain truncation.
  double truncation_bound = 0.0;
};

/// Refinement depth exhausted before the tolerance was met.
class ToleranceNotReached : public std::runtime_error {
 public:
  ToleranceNotReached(const std::string& what, IntegralResult best)
      : std::runtime_error(what), best_(best) {}
  [[nodiscard]] const IntegralResult& best() const { return best_; }

 private:
  IntegralResult best_;
};

using Integrand = std::function<double(double)>;

/// Tanh-sinh rule on [a, b], refined until consistent with cfg.
IntegralResult integrate_interval(const Integrand& h, double a, double b,
                                  const QuadratureConfig& cfg,
                                  std::span<const double> breakpoints = {});

/// Sinh-sinh rule over the real line for an integrable h.
IntegralResult integrate_real_line(const Integrand& h, const QuadratureConfig& cfg);

/// Real-line integrand with an envelope for |h| that fixes the truncation.
struct LogIntegrand {
  Integrand fn;
  LogEnvelope envelope;
  Interval domain;
  std::vector<double> breakpoints;
};

/// Integrates over `domain` after cutting both infinite ends where the
/// envelope proves the tail negligible. Throws InsufficientCertificate when
/// an infinite end has no decaying envelope line.
IntegralResult integrate_log_integrand(const LogIntegrand& integrand, const QuadratureConfig& cfg);

/// Integral of x^{s-1} f^(beta)(x) over (0, inf), computed as the integral
/// of e^{st} f^(beta)(e^t) dt.
IntegralResult integrate_half_line_weighted(const SmoothFunction& f, double s, int beta,
                                            const QuadratureConfig& cfg);

struct TruncationBounds {
  double a;
  double b;
  double m1;  ///< sum over f of the bounds used below 1
  double m2;  ///< sum over f of the bounds used above 1
};

/// Constants a < 1 < b with the mass of |f(x)| |x^s - x^{s_center}| outside
/// [a, b] below eps for every s within s_radius of s_center, every f in fs.
TruncationBounds truncation_bounds(std::span<const SmoothFunction> fs, double s_center,
                                   double s_radius, double eps);

/// Integral of |f(x)| |x^s - x^{s_center}| over (0, a] and [b, inf).
IntegralResult truncation_tail(const SmoothFunction& f, double s, double s_center, double a,
                               double b, const QuadratureConfig& cfg);

}  // namespace mellin
