#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mellin/errors.hpp"
#include "mellin/function_space.hpp"
#include "mellin/mellin_ops.hpp"
#include "mellin/quadrature.hpp"

using namespace mellin;

namespace {

// Plain composite trapezoid; spectrally accurate for e^{-t^2} on a wide window.
double trapezoid(const std::function<double(double)>& h, double a, double b, int n) {
  const double dt = (b - a) / n;
  double sum = 0.5 * (h(a) + h(b));
  for (int i = 1; i < n; ++i) sum += h(a + i * dt);
  return sum * dt;
}

// sqrt(pi), frozen from the trapezoid oracle below.
constexpr double kSqrtPi = 1.7724538509055160;

}  // namespace

TEST_CASE("gaussian oracle agrees with the frozen constant") {
  const double brute = trapezoid([](double t) { return std::exp(-t * t); }, -12.0, 12.0, 24000);
  CHECK(std::abs(brute - kSqrtPi) < 1e-12);
  CHECK(std::abs(kSqrtPi - std::sqrt(std::numbers::pi)) < 1e-15);
}

TEST_CASE("real line gaussian") {
  const IntegralResult r = integrate_real_line([](double t) { return std::exp(-t * t); }, {});
  CHECK(std::abs(r.value - kSqrtPi) < 1e-10 * kSqrtPi);
  CHECK(r.converged);
  CHECK(r.evaluations > 0);
  CHECK(r.error_estimate < 1e-9);
}

TEST_CASE("zero and odd integrands") {
  const IntegralResult z = integrate_real_line([](double) { return 0.0; }, {});
  CHECK(z.value == 0.0);
  CHECK(z.error_estimate == 0.0);
  const IntegralResult odd = integrate_real_line([](double t) { return t * std::exp(-t * t); }, {});
  CHECK(std::abs(odd.value) < 1e-14);
}

TEST_CASE("finite interval rules") {
  QuadratureConfig cfg;
  CHECK(integrate_interval([](double x) { return x * x * x; }, 0.0, 1.0, cfg).value == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg).value ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, cfg).value ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("breakpoints split a kink") {
  const double bp[] = {0.3};
  const IntegralResult r = integrate_interval([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {}, bp);
  CHECK(std::abs(r.value - 0.29) < 1e-13);
}

TEST_CASE("depth exhaustion is reported, not hidden") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 0.0;
  cfg.max_refinement_depth = 2;
  CHECK_THROWS_AS(integrate_interval([](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0, 1.0, cfg),
                  ToleranceNotReached);
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-20;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_refinement_depth = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  CHECK(cfg.nested().rel_tol < cfg.rel_tol);
  CHECK(cfg.nested().rel_tol >= 1e-14);
}

TEST_CASE("weighted half-line integrals of log-gauss") {
  const SmoothFunction g0 = log_gauss();
  CHECK(integrate_half_line_weighted(g0, 0.0, 0, {}).value == doctest::Approx(kSqrtPi).epsilon(1e-10));
  CHECK(integrate_half_line_weighted(g0, 2.0, 0, {}).value ==
        doctest::Approx(kSqrtPi * std::exp(1.0)).epsilon(1e-10));
  CHECK(integrate_half_line_weighted(zero_function(), 1.3, 0, {}).value == 0.0);
}

TEST_CASE("weighted integral needs certificate coverage") {
  CHECK_THROWS_AS(integrate_half_line_weighted(log_gauss(), 40.0, 0, {}), InsufficientCertificate);
}

TEST_CASE("linearity property over random scalings") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-5.0, 5.0), sd(-1.0, 2.0);
  for (const auto& f : catalog()) {
    if (f.is_zero()) continue;
    for (int k = 0; k < 3; ++k) {
      const double c = coef(rng), s = sd(rng);
      const double a = mellin_transform(scale(c, f), s).value;
      const double b = c * mellin_transform(f, s).value;
      CHECK(std::abs(a - b) <= 4e-10 * (1.0 + std::abs(b)));
    }
  }
}

TEST_CASE("substitution consistency") {
  for (const auto& f : catalog()) {
    for (double s : {-1.0, 0.5, 2.0}) {
      const double a = integrate_half_line_weighted(f, s, 0, {}).value;
      const double b = integrate_real_line(
                           [&](double t) {
                             const double x = std::exp(t);
                             if (!(x > 0.0) || !std::isfinite(x)) return 0.0;
                             const double v = f.value(x);
                             return v == 0.0 ? 0.0 : std::exp(s * t) * v;
                           },
                           {})
                           .value;
      CHECK(std::abs(a - b) <= 2e-10 * (1.0 + std::abs(b)));
    }
  }
}

TEST_CASE("truncation bounds satisfy their postcondition") {
  const std::vector<SmoothFunction> fs = {log_gauss()};
  const double eps = 1e-8;
  const TruncationBounds tb = truncation_bounds(fs, 1.0, 0.5, eps);
  CHECK(tb.a < 1.0);
  CHECK(tb.b > 1.0);
  QuadratureConfig tight;
  tight.abs_tol = eps / 10.0;
  for (double s = 0.5; s <= 1.5 + 1e-12; s += 0.125) {
    CHECK(truncation_tail(fs[0], s, 1.0, tb.a, tb.b, tight).value < eps);
  }
}

TEST_CASE("truncation bounds for a catalog family") {
  std::vector<SmoothFunction> fs;
  for (const auto& f : catalog()) fs.push_back(f);
  const TruncationBounds tb = truncation_bounds(fs, 0.0, 1.5, 1e-6);
  QuadratureConfig tight;
  tight.abs_tol = 1e-7;
  for (const auto& f : fs) {
    for (double s : {-1.5, -0.5, 0.0, 0.75, 1.5}) CHECK(truncation_tail(f, s, 0.0, tb.a, tb.b, tight).value < 1e-6);
  }
}

TEST_CASE("truncation bounds in degenerate cases") {
  const std::vector<SmoothFunction> zero = {zero_function()};
  const TruncationBounds z = truncation_bounds(zero, 0.0, 1.0, 1e-8);
  CHECK(z.a < 1.0);
  CHECK(z.b > 1.0);
  CHECK(truncation_tail(zero[0], 0.5, 0.0, z.a, z.b, {}).value == 0.0);

  const std::vector<SmoothFunction> g = {log_gauss()};
  const TruncationBounds loose = truncation_bounds(g, 1.0, 0.5, 1e6);
  CHECK(loose.a == 0.5);
  CHECK(loose.b == 2.0);
}
