#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mellin/errors.hpp"
#include "mellin/smooth_function.hpp"
#include "mellin/special_functions.hpp"

using namespace mellin;

namespace {

// Independent Fabius oracle: iterate theta <- x -> integral_0^{2x} theta on a
// uniform grid (trapezoid), closing with theta(x) = 1 - theta(1 - x).
std::vector<double> fabius_fixed_point(int log2n, int iterations) {
  const std::size_t n = std::size_t{1} << log2n;
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> th(n + 1), cum(n + 1);
  for (std::size_t i = 0; i <= n; ++i) th[i] = static_cast<double>(i) * h;
  for (int it = 0; it < iterations; ++it) {
    cum[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) cum[i] = cum[i - 1] + 0.5 * h * (th[i - 1] + th[i]);
    std::vector<double> next(n + 1);
    for (std::size_t i = 0; i <= n / 2; ++i) next[i] = cum[2 * i];
    for (std::size_t i = n / 2 + 1; i <= n; ++i) next[i] = 1.0 - next[n - i];
    th.swap(next);
  }
  return th;
}

double central_difference(const std::function<double(double)>& f, double x, double h, int order) {
  if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("exact dyadic values") {
  CHECK(fabius_exact(0, 3) == "0");
  CHECK(fabius_exact(8, 3) == "1");
  CHECK(fabius_exact(1, 1) == "1/2");
  CHECK(fabius_exact(1, 2) == "5/72");
  CHECK(fabius_exact(1, 3) == "1/288");
  CHECK(fabius_exact(3, 3) == "73/288");
  CHECK(fabius_exact(3, 2) == "67/72");
}

TEST_CASE("boundary and symmetry values") {
  CHECK(fabius(0.0) == 0.0);
  CHECK(fabius(1.0) == 1.0);
  CHECK(fabius(0.5) == 0.5);
  CHECK(fabius(0.25) == 5.0 / 72.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(std::abs(fabius(x) + fabius(1.0 - x) - 1.0) < 1e-15);
  }
}

TEST_CASE("spline matches the fixed-point oracle") {
  const std::vector<double> oracle = fabius_fixed_point(16, 60);
  const double h = 1.0 / 65536.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < oracle.size(); i += 37) worst = std::max(worst, std::abs(oracle[i] - fabius(i * h)));
  CHECK(worst < 1e-9);
  CHECK(std::abs(oracle[16384] - 5.0 / 72.0) < 1e-9);
  CHECK(std::abs(oracle[24576] - 73.0 / 288.0) < 1e-9);
}

TEST_CASE("spline structure") {
  const DyadicSpline& sp = fabius_spline();
  CHECK(sp.depth() == kDefaultFabiusDepth);
  CHECK(sp.pieces() == 1024);
  CHECK(sp.error_bound() < std::ldexp(1.0, -60));
  CHECK(sp.continuity_defect() < 1e-15);
  CHECK(sp.knot(256) == 5.0 / 72.0);
  CHECK(sp.fine_knot(512) == 5.0 / 72.0);
  CHECK(sp.fine_knot(1024) == 0.5);
  CHECK_THROWS_AS(fabius(1.5), DomainError);
  CHECK(fabius_extended(-0.5) == 0.0);
  CHECK(fabius_extended(1.5) == 1.0);
}

TEST_CASE("theta is nondecreasing up to the spline remainder") {
  const double slack = 2.0 * fabius_spline().error_bound();
  double prev = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double v = fabius(i / 4096.0);
    CHECK(v >= prev - slack);
    prev = v;
  }
}

TEST_CASE("functional equation derivatives") {
  CHECK(fabius_derivative(0.5, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fabius_derivative(0.0, 1) == 0.0);
  const auto theta = [](double x) { return fabius(x); };
  CHECK(std::abs(fabius_derivative(0.25, 2) - central_difference(theta, 0.25, 1e-4, 2)) < 1e-5);
  const DyadicSpline& sp = fabius_spline();
  for (double x : {0.1, 0.3, 0.45, 0.7, 0.93}) {
    CHECK(std::abs(fabius_derivative(x, 1) - sp.piece_derivative(x)) < 1e-12);
    CHECK(std::abs(fabius_derivative(x, 1) - central_difference(theta, x, 1e-5, 1)) < 1e-8);
  }
  CHECK_THROWS_AS(fabius_derivative(0.3, kDefaultMaxOrder + 1), CapabilityError);
}

TEST_CASE("eta values") {
  CHECK(eta(0.0) == 1.0);
  CHECK(eta(1.0) == 0.0);
  CHECK(eta(-1.0) == 0.0);
  CHECK(eta(1.5) == 0.0);
  CHECK(eta_derivative(-0.5, 1) == doctest::Approx(2.0).epsilon(1e-14));
  for (double t : {0.1, 0.37, 0.8}) CHECK(eta(t) == eta(-t));
}

TEST_CASE("eta functional equation by finite differences") {
  for (int i = 1; i < 40; ++i) {
    const double t = -1.0 + i / 20.0 + 1e-3;
    const double fd = richardson_derivative(eta, 1, t, 1e-3);
    CHECK(std::abs(fd - 2.0 * (eta(2.0 * t + 1.0) - eta(2.0 * t - 1.0))) < 1e-7);
  }
}

TEST_CASE("digit-sum offset selects the correct reading") {
  for (int k = 1; k <= 5; ++k) {
    const double scale = std::ldexp(1.0, k * (k + 1) / 2);
    for (int i = 1; i < 128; ++i) {
      const double t = -1.0 + i / 64.0 + 3e-4;
      CHECK(std::abs(eta_derivative_digit_sum(t, k, -1) - eta_derivative_reflected(t, k)) < 1e-12 * scale);
    }
  }
  double worst = 0.0;
  for (int i = 1; i < 128; ++i) {
    const double t = -1.0 + i / 64.0 + 3e-4;
    worst = std::max(worst, std::abs(eta_derivative_digit_sum(t, 2, 1) - eta_derivative_reflected(t, 2)));
  }
  CHECK(worst > 1e-2);
}

TEST_CASE("eta derivatives vanish at the origin") {
  for (int k = 1; k <= 6; ++k) CHECK(eta_derivative(0.0, k) == 0.0);
}

TEST_CASE("literal doubling recursion leaves the peak") {
  const ExtremalPoint p1 = eta_extremal_check(1);
  CHECK(p1.t == -0.5);
  CHECK(p1.value == doctest::Approx(2.0));
  CHECK(eta_extremal_check(2).t == 0.0);
  CHECK(eta_extremal_check(3).t == 1.0);
  CHECK(eta_extremal_check(2).value == 0.0);
  CHECK(eta_extremal_check(3).value == 0.0);
}

TEST_CASE("eta derivative peaks at 2^-b - 1") {
  for (int k = 1; k <= 6; ++k) {
    const ExtremalPoint p = eta_peak_point(k);
    CHECK(p.t == doctest::Approx(std::ldexp(1.0, -k) - 1.0));
    CHECK(std::abs(p.value - p.expected) < 1e-9 * p.expected);
    double sup = 0.0;
    for (int i = 0; i <= 4096; ++i) sup = std::max(sup, std::abs(eta_derivative(-1.0 + i / 2048.0, k)));
    CHECK(sup <= p.expected * (1.0 + 1e-12));
  }
}

TEST_CASE("cutoff support and plateau") {
  const CutoffFunction c2 = cutoff(2);
  CHECK(c2.support().lo == 0.5);
  CHECK(c2.support().hi == 3.0);
  CHECK(c2.plateau().lo == 1.0);
  CHECK(c2.plateau().hi == 2.0);
  CHECK(c2.value(0.5) == 0.0);
  CHECK(c2.value(3.0) == 0.0);
  for (double x : {1.0, 1.3, 1.7, 2.0}) CHECK(c2.value(x) == 1.0);
  for (int n : {2, 3, 5, 8, 16}) {
    const CutoffFunction c = cutoff(n);
    CHECK(c.value(2.0 / n) == 1.0);
    CHECK(c.value(static_cast<double>(n)) == 1.0);
    CHECK(c.derivative(1, 0.5 * (2.0 / n + n)) == 0.0);
  }
  CHECK_THROWS_AS(cutoff(1), DomainError);
}

TEST_CASE("cutoff derivative bound") {
  for (int n : {2, 4, 8}) {
    const CutoffFunction c = cutoff(n);
    for (int b = 0; b <= 4; ++b) {
      double sup = 0.0;
      for (int i = 0; i <= 8192; ++i) {
        const double x = c.support().lo + (c.support().hi - c.support().lo) * i / 8192.0;
        sup = std::max(sup, std::abs(c.derivative(b, x)));
      }
      CHECK(sup <= c.derivative_bound(b));
    }
  }
}

TEST_CASE("cutoff derivative against finite differences") {
  const CutoffFunction c = cutoff(4);
  const auto f = [&](double x) { return c.value(x); };
  for (double x : {0.3, 0.45, 4.2, 4.7}) {
    CHECK(std::abs(c.derivative(1, x) - central_difference(f, x, 1e-6, 1)) < 1e-6);
  }
}
