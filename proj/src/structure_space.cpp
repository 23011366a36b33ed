#include "mellin/structure_space.hpp"

#include <cmath>
#include <limits>

#include "mellin/errors.hpp"
#include "mellin/function_space.hpp"
#include "mellin/mellin_ops.hpp"

namespace mellin {

FunctionalOracle functional_ms(double s, const QuadratureConfig& cfg) {
  return {[s, cfg](const SmoothFunction& f) { return mellin_transform(f, s, cfg).value; },
          "Mellin-type multiplicative functional"};
}

FunctionalOracle point_evaluation(double x0) {
  if (!(x0 > 0.0)) throw DomainError("point evaluation needs x0 > 0");
  return {[x0](const SmoothFunction& f) { return f.value(x0); }, "point evaluation"};
}

double linearity_residual(const FunctionalOracle& m, const SmoothFunction& f, const SmoothFunction& g) {
  return std::abs(m(add(f, g)) - m(f) - m(g));
}

double multiplicativity_residual(const FunctionalOracle& m, const SmoothFunction& f,
                                 const SmoothFunction& g, const QuadratureConfig& cfg) {
  const ConvolutionResult conv = mellin_convolve(f, g, cfg.nested());
  const double prod = m(f) * m(g);
  return std::abs(m(conv.function()) - prod) / (1.0 + std::abs(prod));
}

double dilation_identity_residual(const SmoothFunction& g, double x, double y,
                                  std::span<const double> probes, const QuadratureConfig& cfg) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("dilation factors must be positive");
  const ConvolutionResult lhs = mellin_convolve(dilate(g, y), dilate(g, x), cfg);
  const ConvolutionResult rhs = mellin_convolve(g, dilate(g, x * y), cfg);
  double worst = 0.0;
  for (double u : probes) {
    worst = std::max(worst, std::abs(lhs.evaluate(u).value - rhs.evaluate(u).value));
  }
  return worst;
}

RecoveryReport recover_exponent(const FunctionalOracle& m, const SmoothFunction& g_star,
                                std::span<const double> probes) {
  if (probes.empty()) throw DomainError("recovery needs at least one probe");
  for (double x : probes) {
    if (!(x > 0.0) || x == 1.0) throw DomainError("probes must be positive and different from 1");
  }
  RecoveryReport out;
  out.base_value = m(g_star);
  if (out.base_value == 0.0 || !std::isfinite(out.base_value)) {
    throw DegenerateBase("functional vanishes on the base function " + g_star.label());
  }
  std::vector<double> ratios;
  bool valid = true;
  for (double x : probes) {
    const double phi = m(dilate(g_star, x)) / out.base_value;
    out.phi_samples.emplace_back(x, phi);
    if (phi > 0.0 && std::isfinite(phi)) {
      ratios.push_back(std::log(phi) / std::log(x));
    } else {
      valid = false;
    }
  }
  if (!valid || ratios.empty()) {
    // phi is not a positive power of x: no exponent fits
    out.s_estimate = std::numeric_limits<double>::quiet_NaN();
    out.consistency_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  out.s_estimate = mean;
  for (double r : ratios) out.consistency_residual = std::max(out.consistency_residual, std::abs(r - mean));
  return out;
}

IntegralResult e_function(double c, double s, const QuadratureConfig& cfg) {
  auto h = [c, s](double x) {
    const double w = std::exp(-1.0 / ((3.0 - x) * (x - 1.0)));
    if (w == 0.0) return 0.0;
    return (std::pow(x, s) - std::pow(x, c)) * w;
  };
  return integrate_interval(h, 1.0, 3.0, cfg);
}

MonotonicityCheck e_monotonicity_check(double c, std::span<const double> s_grid,
                                       const QuadratureConfig& cfg) {
  MonotonicityCheck out;
  for (double s : s_grid) out.values.push_back(e_function(c, s, cfg));
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    const double diff = out.values[i].value - out.values[i - 1].value;
    const double err = out.values[i].error_estimate + out.values[i - 1].error_estimate;
    out.differences.push_back(diff);
    out.error_ratios.push_back(err > 0.0 ? diff / err
                                          : std::copysign(std::numeric_limits<double>::infinity(), diff));
    if (!(s_grid[i] > s_grid[i - 1]) || !(diff > 10.0 * err)) out.increasing = false;
  }
  return out;
}

}  // namespace mellin
