// Acceptance criteria 1-12: one PASS/FAIL line each, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mellin/function_space.hpp"
#include "mellin/mellin_ops.hpp"
#include "mellin/special_functions.hpp"
#include "mellin/structure_space.hpp"

using namespace mellin;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& note) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + note);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double trapezoid(const std::function<double(double)>& h, double a, double b, int n) {
  const double dt = (b - a) / n;
  double sum = 0.5 * (h(a) + h(b));
  for (int i = 1; i < n; ++i) sum += h(a + i * dt);
  return sum * dt;
}

Outcome transform_closed_form() {
  Outcome o;
  const SmoothFunction g0 = log_gauss();
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int s = -2; s <= 3; ++s) {
    const double exact = std::sqrt(std::numbers::pi) * std::exp(s * s / 4.0);
    worst = std::max(worst, std::abs(mellin_transform(g0, s).value - exact) / exact);
  }
  const double elapsed = seconds_since(t0);
  double oracle_gap = 0.0;
  for (int s = -2; s <= 3; ++s) {
    const double exact = std::sqrt(std::numbers::pi) * std::exp(s * s / 4.0);
    const double brute = trapezoid([s](double t) { return std::exp(s * t - t * t); }, -20.0, 20.0, 40000);
    oracle_gap = std::max(oracle_gap, std::abs(brute - exact) / exact);
  }
  o.require(worst < 1e-8, "max relative error " + fmt(worst) + " < 1e-8");
  o.require(oracle_gap < 1e-12, "closed form vs brute trapezoid " + fmt(oracle_gap));
  o.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s < 1 s");
  o.summary = "max rel err " + fmt(worst) + ", " + fmt(elapsed) + " s";
  return o;
}

Outcome convolution_theorem() {
  Outcome o;
  const std::vector<SmoothFunction> cat = catalog();
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string where;
  for (const auto& f : cat) {
    for (const auto& g : cat) {
      for (int s = -1; s <= 2; ++s) {
        const double r = convolution_theorem_residual(f, g, s);
        if (!(r <= worst)) {
          worst = r;
          where = f.label() + " * " + g.label() + " s=" + std::to_string(s);
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(worst < 1e-6, "max residual " + fmt(worst) + " at " + where);
  o.require(elapsed < 30.0, "runtime " + fmt(elapsed) + " s < 30 s");
  o.summary = "max residual " + fmt(worst) + " over " + std::to_string(cat.size() * cat.size()) + " pairs, " +
              fmt(elapsed) + " s";
  return o;
}

Outcome algebra_laws() {
  Outcome o;
  const std::vector<SmoothFunction> cat = catalog();
  const double probes[] = {0.25, 1.0, std::numbers::e, 10.0};
  auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
  double comm = 0.0, assoc = 0.0;
  // quadrature held at a tenth of the single-convolution tolerance; the inner level is nested tighter
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-9;
  const QuadratureConfig inner = cfg.nested();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = 0; j < cat.size(); ++j) {
      const ConvolutionResult fg = mellin_convolve(cat[i], cat[j], cfg), gf = mellin_convolve(cat[j], cat[i], cfg);
      for (double x : probes) comm = std::max(comm, rel(fg.evaluate(x).value, gf.evaluate(x).value));
      const SmoothFunction fg_inner = mellin_convolve(cat[i], cat[j], inner).function();
      for (std::size_t k = 0; k < cat.size(); ++k) {
        const ConvolutionResult l(fg_inner, cat[k], cfg);
        const ConvolutionResult r(cat[i], mellin_convolve(cat[j], cat[k], inner).function(), cfg);
        for (double x : probes) assoc = std::max(assoc, rel(l.evaluate(x).value, r.evaluate(x).value));
      }
    }
  }
  o.require(comm < 1e-6, "commutativity residual " + fmt(comm) + " < 1e-6");
  o.require(assoc < 1e-5, "associativity residual " + fmt(assoc) + " < 1e-5");
  o.summary = "comm " + fmt(comm) + ", assoc " + fmt(assoc) + " over " + std::to_string(cat.size() * cat.size() * cat.size()) +
              " triples";
  return o;
}

Outcome young() {
  Outcome o;
  const std::vector<SmoothFunction> cat = catalog();
  double least = INFINITY;
  for (auto [p, q] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.5, 1.5}, {4.0 / 3.0, 2.0}}) {
    double m = INFINITY;
    for (const auto& f : cat) {
      for (const auto& g : cat) m = std::min(m, young_inequality_check(f, g, p, q).margin);
    }
    o.require(m >= -1e-9, "(p,q)=(" + fmt(p) + "," + fmt(q) + ") min margin " + fmt(m));
    least = std::min(least, m);
  }
  const YoungCheck eq = young_inequality_check(log_gauss(), log_gauss(), 1.0, 1.0);
  const double dev = std::max(std::abs(eq.lhs - std::numbers::pi), std::abs(eq.rhs - std::numbers::pi));
  o.require(std::abs(eq.lhs - eq.rhs) < 1e-6, "(1,1) log-gauss |lhs - rhs| " + fmt(std::abs(eq.lhs - eq.rhs)));
  o.require(dev < 1e-6, "(1,1) log-gauss distance to pi " + fmt(dev));
  o.summary = "min margin " + fmt(least) + ", equality case off pi by " + fmt(dev);
  return o;
}

Outcome special_functions() {
  Outcome o;
  o.require(fabius(0.5) == 0.5, "theta(1/2) == 1/2");
  double fe = 0.0;
  const DyadicSpline& sp = fabius_spline();
  for (int i = 0; i <= 2000; ++i) {
    const double x = 0.5 * i / 2000.0;
    fe = std::max(fe, std::abs(sp.piece_derivative(x) - 2.0 * fabius(2.0 * x)));
  }
  o.require(fe < 1e-6, "|theta' - 2 theta(2x)| on [0,1/2] " + fmt(fe));
  o.require(eta(0.0) == 1.0 && eta(1.0) == 0.0 && eta(-1.0) == 0.0, "eta(0)=1, eta(+-1)=0");
  // t_1 = -1/2, t_{b+1} = 2 t_b + 1
  double t = -0.5;
  for (int b = 1; b <= 4; ++b) {
    const double expected = std::ldexp(1.0, b * (b + 1) / 2);
    const double v = eta_derivative(t, b);
    o.require(std::abs(v - expected) / expected < 1e-6,
              "eta^(" + std::to_string(b) + ")(" + fmt(t) + ") = " + fmt(v) + " vs " + fmt(expected));
    t = 2.0 * t + 1.0;
  }
  double ratio = 0.0;
  for (int n : {2, 4, 8}) {
    const CutoffFunction c = cutoff(n);
    for (int b = 0; b <= 4; ++b) {
      const double bound = b == 0 ? 1.0 : std::pow(n, b) * std::ldexp(1.0, b * (b + 1) / 2);
      for (int i = 0; i <= 16384; ++i) {
        const double x = c.support().lo + (c.support().hi - c.support().lo) * i / 16384.0;
        ratio = std::max(ratio, std::abs(c.derivative(b, x)) / bound);
      }
    }
  }
  o.require(ratio <= 1.0, "theta_n derivative / bound max " + fmt(ratio));
  o.summary = std::to_string(std::count_if(o.notes.begin(), o.notes.end(),
                                           [](const std::string& s) { return s.rfind("ok", 0) == 0; })) +
              "/" + std::to_string(o.notes.size()) + " sub-checks";
  return o;
}

Outcome density() {
  Outcome o;
  const int ns[] = {4, 8, 16, 32, 64};
  const auto pts = density_experiment(log_gauss(), {0, 1}, ns);
  std::vector<double> x, y;
  bool decreasing = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x.push_back(pts[i].n);
    y.push_back(pts[i].error);
    if (i > 0 && !(pts[i].error < pts[i - 1].error)) decreasing = false;
  }
  const double slope = fit_loglog_slope(x, y);
  o.require(decreasing, "strictly decreasing over n = 4..64");
  o.require(slope <= -0.8, "log-log slope " + fmt(slope) + " <= -0.8");
  o.summary = "slope " + fmt(slope) + ", error at 64 " + fmt(pts.back().error);
  return o;
}

Outcome nonnormability() {
  Outcome o;
  const SeminormIndex idx[] = {{0, 0}};
  std::vector<double> ms, blow;
  double worst = 0.0;
  for (int m = 2; m <= 64; ++m) {
    const WitnessResult w = nonnormability_witness(idx, 1.0, m);
    for (double v : w.constraint_sups) worst = std::max(worst, v);
    // p_{0,2}(f_m) measured directly
    blow.push_back(seminorm(w.f_m, {0, 2}, 1e-14));
    ms.push_back(m);
  }
  const double slope = fit_loglog_slope(ms, blow);
  o.require(worst < 1.0, "max constraint seminorm " + fmt(worst) + " < 1");
  o.require(std::abs(slope - 1.0) <= 0.15, "p_{0,2}(f_m) slope " + fmt(slope) + " in 1 +- 0.15");
  o.summary = "max constraint " + fmt(worst) + ", growth slope " + fmt(slope);
  return o;
}

Outcome recovery() {
  Outcome o;
  const double probes[] = {0.5, 2.0, 3.0};
  double worst = 0.0, spread = 0.0;
  for (double s : {-2.25, 0.0, 1.5, 3.0}) {
    const FunctionalOracle m = functional_ms(s);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& g : {log_gauss(), exp_inverse(), bump()}) {
      const double est = recover_exponent(m, g, probes).s_estimate;
      worst = std::max(worst, std::abs(est - s));
      lo = std::min(lo, est);
      hi = std::max(hi, est);
    }
    spread = std::max(spread, hi - lo);
  }
  o.require(worst < 1e-6, "max |s_hat - s| " + fmt(worst));
  o.require(spread < 1e-6, "cross-base spread " + fmt(spread));
  o.summary = "max error " + fmt(worst) + ", spread " + fmt(spread);
  return o;
}

Outcome e_function_monotone() {
  Outcome o;
  const double grid[] = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  double least = INFINITY, at_c = 0.0;
  for (double c : {-1.0, 0.5, 2.0}) {
    const MonotonicityCheck m = e_monotonicity_check(c, grid);
    o.require(m.increasing, "c=" + fmt(c) + " strictly increasing with margin over 10x error");
    for (double r : m.error_ratios) least = std::min(least, r);
    at_c = std::max(at_c, std::abs(e_function(c, c).value));
  }
  o.require(at_c < 1e-10, "|E_c(c)| " + fmt(at_c));
  o.summary = "smallest difference/error " + fmt(least) + ", |E_c(c)| " + fmt(at_c);
  return o;
}

Outcome riemann_lebesgue() {
  Outcome o;
  const SmoothFunction t2 = cutoff_function(2);
  double worst = INFINITY;
  for (double s : {5.0, 10.0, 20.0}) {
    const double v = mellin_transform(t2, s).value, bound = (std::pow(2.0, s) - 1.0) / s;
    o.require(v >= bound, "s=" + fmt(s) + " M=" + fmt(v) + " >= " + fmt(bound));
    worst = std::min(worst, v / bound);
  }
  o.summary = "smallest M / bound " + fmt(worst);
  return o;
}

Outcome lp_bound() {
  Outcome o;
  double worst = 0.0;
  for (const auto& f : catalog()) {
    for (auto [a, b, p] : {std::tuple{0, 0, 1.0}, {1, 0, 2.0}, {-1, 1, 1.0}}) {
      const LpBoundCheck r = weighted_lp_bound_check(f, a, b, p);
      o.require(r.pass, f.label() + " (" + std::to_string(a) + "," + std::to_string(b) + "," + fmt(p) +
                            ") lhs " + fmt(r.lhs) + " rhs " + fmt(r.rhs));
      if (r.rhs > 0.0) worst = std::max(worst, r.lhs / r.rhs);
    }
  }
  o.summary = "largest lhs/rhs " + fmt(worst);
  return o;
}

Outcome metric_properties() {
  Outcome o;
  const std::vector<SmoothFunction> cat = catalog();
  const std::size_t n = cat.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = metric(cat[i], cat[j]).value;
  }
  double largest = 0.0, asym = 0.0, diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag = std::max(diag, d[i * n + i]);
    for (std::size_t j = 0; j < n; ++j) {
      largest = std::max(largest, d[i * n + j]);
      asym = std::max(asym, std::abs(d[i * n + j] - d[j * n + i]));
    }
  }
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  double violation = -INFINITY;
  for (int k = 0; k < 10; ++k) {
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    violation = std::max(violation, d[a * n + c] - d[a * n + b] - d[b * n + c]);
  }
  o.require(largest < 6.0, "max d_S " + fmt(largest) + " < 6");
  o.require(asym == 0.0, "symmetry defect " + fmt(asym));
  o.require(violation <= 3e-10, "triangle violation " + fmt(violation) + " <= 3 tol");
  o.require(diag == 0.0, "d_S(f,f) max " + fmt(diag));
  o.summary = "max " + fmt(largest) + ", triangle slack " + fmt(-violation);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"mellin transform closed form", transform_closed_form},
      {"convolution theorem", convolution_theorem},
      {"algebra laws", algebra_laws},
      {"mellin-young inequality", young},
      {"special functions", special_functions},
      {"density rate", density},
      {"non-normability witness", nonnormability},
      {"exponent recovery", recovery},
      {"E_c monotonicity", e_function_monotone},
      {"riemann-lebesgue failure", riemann_lebesgue},
      {"weighted Lp bound", lp_bound},
      {"metric", metric_properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary.c_str(),
                seconds_since(t0));
    for (const auto& note : o.notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
