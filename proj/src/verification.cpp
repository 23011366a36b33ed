#include "mellin/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mellin/errors.hpp"
#include "mellin/function_space.hpp"
#include "mellin/mellin_ops.hpp"
#include "mellin/output.hpp"
#include "mellin/special_functions.hpp"
#include "mellin/structure_space.hpp"

namespace mellin {

namespace {

constexpr const char* kTransform = "Mellin transform on the structure space";
constexpr const char* kRiemannLebesgue = "failure of the Riemann-Lebesgue lemma";
constexpr const char* kConvolutionTheorem = "classical convolution theorem";
constexpr const char* kAlgebra = "commutative Frechet algebra";
constexpr const char* kKernel = "differentiation under the convolution integral";
constexpr const char* kDilation = "dilation identity D_y g * D_x g = g * D_xy g";
constexpr const char* kYoung = "Young convolution inequality for dy/y";
constexpr const char* kFabius = "Fabius functional equation theta' = 2 theta(2x)";
constexpr const char* kEta = "up-function bump eta";
constexpr const char* kEtaExtremal = "extremal derivatives of eta";
constexpr const char* kCutoff = "cutoff family theta_n";
constexpr const char* kDensity = "density of compactly supported functions";
constexpr const char* kNonNormable = "non-normability of the Schwartz class";
constexpr const char* kRecovery = "uniqueness of the exponent s";
constexpr const char* kCauchy = "Cauchy multiplicative equation";
constexpr const char* kEFunction = "monotonicity of E_c";
constexpr const char* kTruncation = "neighbourhood constants a and b";
constexpr const char* kLemma1 = "weighted L^p bound by seminorms";
constexpr const char* kMetric = "Frechet metric";

struct Context {
  QuadratureConfig cfg;
  SeededStream rng;
  unsigned threads;
};

Check judge(std::string name, const char* anchor, double measured, std::string relation, double tol,
            std::string detail = {}) {
  bool ok = false;
  if (relation == "<") ok = measured < tol;
  else if (relation == "<=") ok = measured <= tol;
  else if (relation == ">") ok = measured > tol;
  else if (relation == ">=") ok = measured >= tol;
  else if (relation == "==") ok = measured == tol;
  return {std::move(name), anchor, ok ? CheckStatus::pass : CheckStatus::fail, measured,
          std::move(relation), tol, std::move(detail)};
}

// Runs body; exceptions become failed (or, for capability limits, skipped) checks.
Check guarded(const std::string& name, const char* anchor, const std::function<Check()>& body) {
  try {
    return body();
  } catch (const CapabilityError& e) {
    return {name, anchor, CheckStatus::skipped, std::nan(""), "", 0.0, e.what()};
  } catch (const std::exception& e) {
    return {name, anchor, CheckStatus::fail, std::nan(""), "", 0.0, e.what()};
  }
}

std::vector<Check> parallel_checks(std::size_t n, unsigned threads, const std::function<Check(std::size_t)>& fn) {
  std::vector<Check> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

void append(std::vector<Check>& dst, std::vector<Check> src) {
  for (auto& c : src) dst.push_back(std::move(c));
}

std::string num(double v) { return format_number(v); }

std::vector<SmoothFunction> nonzero_catalog() {
  std::vector<SmoothFunction> out;
  for (auto& f : catalog()) {
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

// ---------------------------------------------------------------------------

void suite_transform(Context& ctx, std::vector<Check>& out) {
  const SmoothFunction g0 = log_gauss();
  for (int s = -2; s <= 3; ++s) {
    const std::string name = "transform log-gauss s=" + std::to_string(s);
    out.push_back(guarded(name, kTransform, [&] {
      const double exact = std::sqrt(std::numbers::pi) * std::exp(s * s / 4.0);
      const IntegralResult r = mellin_transform(g0, s, ctx.cfg);
      return judge(name, kTransform, std::abs(r.value - exact) / exact, "<", 1e-8,
                   "value " + num(r.value));
    }));
  }
  const SmoothFunction g1 = exp_inverse();
  for (int s = -1; s <= 2; ++s) {
    const std::string name = "transform exp-inv s=" + std::to_string(s);
    out.push_back(guarded(name, kTransform, [&] {
      const double exact = 2.0 * std::cyl_bessel_k(std::abs(static_cast<double>(s)), 2.0);
      const IntegralResult r = mellin_transform(g1, s, ctx.cfg);
      return judge(name, kTransform, std::abs(r.value - exact) / exact, "<", 1e-8, "2 K_s(2)");
    }));
  }
  out.push_back(guarded("transform zero", kTransform, [&] {
    return judge("transform zero", kTransform, std::abs(mellin_transform(zero_function(), 1.5, ctx.cfg).value),
                 "==", 0.0);
  }));
  out.push_back(guarded("transform substitution consistency", kTransform, [&] {
    const double s = 1.0;
    const IntegralResult a = mellin_transform(g0, s, ctx.cfg);
    const IntegralResult b = integrate_real_line(
        [&](double t) {
          const double x = std::exp(t);
          if (!(x > 0.0) || !std::isfinite(x)) return 0.0;
          const double v = g0.value(x);
          return v == 0.0 ? 0.0 : std::exp(s * t) * v;
        },
        ctx.cfg);
    return judge("transform substitution consistency", kTransform, std::abs(a.value - b.value) / std::abs(b.value),
                 "<=", 2.0 * ctx.cfg.rel_tol);
  }));
  const SmoothFunction t2 = cutoff_function(2);
  for (double s : {5.0, 10.0, 20.0}) {
    const std::string name = "theta2 transform lower bound s=" + num(s);
    out.push_back(guarded(name, kRiemannLebesgue, [&] {
      return judge(name, kRiemannLebesgue, mellin_transform(t2, s, ctx.cfg).value, ">=",
                   (std::pow(2.0, s) - 1.0) / s);
    }));
  }
}

void suite_convolution_theorem(Context& ctx, std::vector<Check>& out) {
  const std::vector<SmoothFunction> cat = catalog();
  const std::size_t n = cat.size();
  append(out, parallel_checks(n * n, ctx.threads, [&](std::size_t idx) {
    const SmoothFunction& f = cat[idx / n];
    const SmoothFunction& g = cat[idx % n];
    const std::string name = "convolution theorem " + f.label() + " " + g.label();
    return guarded(name, kConvolutionTheorem, [&] {
      double worst = 0.0;
      for (int s = -1; s <= 2; ++s) worst = std::max(worst, convolution_theorem_residual(f, g, s, ctx.cfg));
      return judge(name, kConvolutionTheorem, worst, "<", 1e-6, "s in {-1,0,1,2}");
    });
  }));
  out.push_back(guarded("fast log-grid convolution", kConvolutionTheorem, [&] {
    const SmoothFunction f = log_gauss(), g = bump();
    const LogGridFunction fast = mellin_convolve_fast(f, g, LogGridSpec{});
    const ConvolutionResult direct = mellin_convolve(f, g, ctx.cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < fast.n_points(); i += 97) {
      const double t = fast.t_at(i);
      if (t < -6.0 || t > 6.0) continue;
      worst = std::max(worst, std::abs(fast.samples[i] - direct.evaluate(std::exp(t)).value));
    }
    return judge("fast log-grid convolution", kConvolutionTheorem, worst, "<", 1e-6, "log-gauss and bump");
  }));
  out.push_back(guarded("fast convolution rejects narrow grid", kConvolutionTheorem, [&] {
    try {
      mellin_convolve_fast(log_gauss(), bump(), LogGridSpec{-1.0, 1.0, 256});
    } catch (const TailMassExceeded&) {
      return judge("fast convolution rejects narrow grid", kConvolutionTheorem, 1.0, "==", 1.0);
    }
    return judge("fast convolution rejects narrow grid", kConvolutionTheorem, 0.0, "==", 1.0,
                 "no tail error raised");
  }));
}

void suite_algebra(Context& ctx, std::vector<Check>& out) {
  const std::vector<SmoothFunction> pool = nonzero_catalog();
  constexpr std::size_t kTriples = 6;
  struct Triple {
    std::size_t a, b, c;
    std::vector<double> probes;
  };
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < kTriples; ++i) {
    Triple t{ctx.rng.index(pool.size()), ctx.rng.index(pool.size()), ctx.rng.index(pool.size()), {}};
    for (double x : {0.5, 1.0, 2.0, 3.0}) t.probes.push_back(x * std::exp(ctx.rng.uniform(-0.1, 0.1)));
    triples.push_back(std::move(t));
  }
  const QuadratureConfig inner = ctx.cfg.nested();
  append(out, parallel_checks(kTriples * 3, ctx.threads, [&](std::size_t idx) {
    const Triple& t = triples[idx / 3];
    const SmoothFunction &f = pool[t.a], &g = pool[t.b], &h = pool[t.c];
    const std::string who = f.label() + " " + g.label() + " " + h.label();
    switch (idx % 3) {
      case 0: {
        const std::string name = "commutativity " + f.label() + " " + g.label();
        return guarded(name, kAlgebra, [&] {
          const ConvolutionResult fg = mellin_convolve(f, g, ctx.cfg), gf = mellin_convolve(g, f, ctx.cfg);
          double worst = 0.0;
          for (double x : t.probes) worst = std::max(worst, rel_diff(fg.evaluate(x).value, gf.evaluate(x).value));
          return judge(name, kAlgebra, worst, "<", 1e-6);
        });
      }
      case 1: {
        const std::string name = "associativity " + who;
        return guarded(name, kAlgebra, [&] {
          const ConvolutionResult l(mellin_convolve(f, g, inner).function(), h, ctx.cfg);
          const ConvolutionResult r(f, mellin_convolve(g, h, inner).function(), ctx.cfg);
          double worst = 0.0;
          for (double x : t.probes) worst = std::max(worst, rel_diff(l.evaluate(x).value, r.evaluate(x).value));
          return judge(name, kAlgebra, worst, "<", 1e-5);
        });
      }
      default: {
        const std::string name = "distributivity " + who;
        return guarded(name, kAlgebra, [&] {
          const ConvolutionResult l = mellin_convolve(f, add(g, h), ctx.cfg);
          const ConvolutionResult a = mellin_convolve(f, g, ctx.cfg), b = mellin_convolve(f, h, ctx.cfg);
          double worst = 0.0;
          for (double x : t.probes) {
            worst = std::max(worst, rel_diff(l.evaluate(x).value, a.evaluate(x).value + b.evaluate(x).value));
          }
          return judge(name, kAlgebra, worst, "<", 1e-6);
        });
      }
    }
  }));
  out.push_back(guarded("zero annihilates", kAlgebra, [&] {
    const ConvolutionResult z = mellin_convolve(pool[ctx.rng.index(pool.size())], zero_function(), ctx.cfg);
    return judge("zero annihilates", kAlgebra, z.function().is_zero() ? 0.0 : 1.0, "==", 0.0);
  }));
  {
    const SmoothFunction& f = pool[ctx.rng.index(pool.size())];
    const SmoothFunction& g = pool[ctx.rng.index(pool.size())];
    const double x = std::exp(ctx.rng.uniform(-0.5, 0.5));
    for (int beta : {0, 1}) {
      const std::string name = "derivative kernel " + f.label() + " " + g.label() + " beta=" + std::to_string(beta);
      out.push_back(guarded(name, kKernel, [&] {
        const double scale = 1.0 + std::abs(kernel_integral(f, g, x, beta + 1, beta + 1, ctx.cfg).value);
        return judge(name, kKernel, convolution_derivative_residual(f, g, x, beta, ctx.cfg) / scale, "<", 1e-6,
                     "x " + num(x));
      }));
    }
  }
  {
    const double x = ctx.rng.uniform(0.5, 2.0), y = ctx.rng.uniform(0.5, 2.0);
    const std::string name = "dilation identity log-gauss";
    out.push_back(guarded(name, kDilation, [&] {
      const double probes[] = {0.5, 1.0, 2.0};
      return judge(name, kDilation, dilation_identity_residual(log_gauss(), x, y, probes, ctx.cfg), "<", 1e-6,
                   "x " + num(x) + " y " + num(y));
    }));
  }
  {
    const SmoothFunction& f = pool[ctx.rng.index(pool.size())];
    const SmoothFunction& g = pool[ctx.rng.index(pool.size())];
    const double s = ctx.rng.uniform(-1.0, 2.0);
    const std::string name = "m_s multiplicative " + f.label() + " " + g.label();
    out.push_back(guarded(name, kCauchy, [&] {
      return judge(name, kCauchy, multiplicativity_residual(functional_ms(s, ctx.cfg), f, g, ctx.cfg), "<", 1e-6,
                   "s " + num(s));
    }));
    const std::string name2 = "point evaluation not multiplicative";
    out.push_back(guarded(name2, kCauchy, [&] {
      return judge(name2, kCauchy, multiplicativity_residual(point_evaluation(1.5), log_gauss(), bump(), ctx.cfg),
                   ">", 1e-3);
    }));
  }
}

void suite_young(Context& ctx, std::vector<Check>& out) {
  const std::vector<SmoothFunction> pool = nonzero_catalog();
  const std::vector<std::pair<double, double>> exps = {{1.0, 1.0}, {2.0, 1.0}, {1.5, 1.5}, {4.0 / 3.0, 2.0}};
  const std::size_t np = pool.size() * pool.size();
  append(out, parallel_checks(exps.size() * np, ctx.threads, [&](std::size_t idx) {
    const auto [p, q] = exps[idx / np];
    const SmoothFunction& f = pool[(idx % np) / pool.size()];
    const SmoothFunction& g = pool[idx % pool.size()];
    const std::string name = "young p=" + num(p) + " q=" + num(q) + " " + f.label() + " " + g.label();
    return guarded(name, kYoung, [&] {
      const YoungCheck y = young_inequality_check(f, g, p, q, ctx.cfg);
      return judge(name, kYoung, y.margin, ">=", -1e-9, "lhs " + num(y.lhs) + " rhs " + num(y.rhs));
    });
  }));
  out.push_back(guarded("young equality log-gauss", kYoung, [&] {
    const YoungCheck y = young_inequality_check(log_gauss(), log_gauss(), 1.0, 1.0, ctx.cfg);
    const double dev = std::max({std::abs(y.lhs - y.rhs), std::abs(y.lhs - std::numbers::pi),
                                 std::abs(y.rhs - std::numbers::pi)});
    return judge("young equality log-gauss", kYoung, dev, "<", 1e-6, "lhs = rhs = pi");
  }));
}

void suite_special(Context&, std::vector<Check>& out) {
  out.push_back(guarded("theta(1/2)", kFabius, [] { return judge("theta(1/2)", kFabius, fabius(0.5), "==", 0.5); }));
  out.push_back(guarded("theta(1/4) exact", kFabius, [] {
    return judge("theta(1/4) exact", kFabius, fabius_exact(1, 2) == "5/72" ? 1.0 : 0.0, "==", 1.0,
                 fabius_exact(1, 2));
  }));
  out.push_back(guarded("theta functional equation", kFabius, [] {
    const DyadicSpline& sp = fabius_spline();
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = 0.5 * i / 1000.0;
      worst = std::max(worst, std::abs(sp.piece_derivative(x) - 2.0 * fabius(2.0 * x)));
    }
    return judge("theta functional equation", kFabius, worst, "<", 1e-6, "1001 points on [0,1/2]");
  }));
  out.push_back(guarded("spline remainder bound", kFabius, [] {
    return judge("spline remainder bound", kFabius, fabius_spline().error_bound(), "<", std::ldexp(1.0, -60));
  }));
  out.push_back(guarded("eta(0)", kEta, [] { return judge("eta(0)", kEta, eta(0.0), "==", 1.0); }));
  out.push_back(guarded("eta(1)", kEta, [] { return judge("eta(1)", kEta, eta(1.0), "==", 0.0); }));
  out.push_back(guarded("eta(-1)", kEta, [] { return judge("eta(-1)", kEta, eta(-1.0), "==", 0.0); }));
  out.push_back(guarded("eta functional equation", kEta, [] {
    double worst = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double t = -1.0 + 2.0 * i / 200.0 + 1e-3;
      const double fd = richardson_derivative(eta, 1, t, 1e-3);
      worst = std::max(worst, std::abs(fd - 2.0 * (eta(2.0 * t + 1.0) - eta(2.0 * t - 1.0))));
    }
    return judge("eta functional equation", kEta, worst, "<", 1e-6, "finite differences");
  }));
  out.push_back(guarded("eta digit-sum offset -2l-1", kEta, [] {
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
      for (int i = 1; i < 256; ++i) {
        const double t = -1.0 + 2.0 * i / 256.0 + 1e-4;
        const double ref = eta_derivative_reflected(t, k);
        worst = std::max(worst, std::abs(eta_derivative_digit_sum(t, k, -1) - ref) / std::ldexp(1.0, k * (k + 1) / 2));
      }
    }
    return judge("eta digit-sum offset -2l-1", kEta, worst, "<", 1e-12);
  }));
  out.push_back(guarded("eta digit-sum offset -2l+1 rejected", kEta, [] {
    double worst = 0.0;
    for (int i = 1; i < 256; ++i) {
      const double t = -1.0 + 2.0 * i / 256.0 + 1e-4;
      worst = std::max(worst, std::abs(eta_derivative_digit_sum(t, 2, 1) - eta_derivative_reflected(t, 2)));
    }
    return judge("eta digit-sum offset -2l+1 rejected", kEta, worst, ">", 1e-3);
  }));
  for (int k = 1; k <= 4; ++k) {
    const std::string name = "eta extremal t_{b+1}=2t_b+1 b=" + std::to_string(k);
    out.push_back(guarded(name, kEtaExtremal, [&] {
      const ExtremalPoint e = eta_extremal_check(k);
      return judge(name, kEtaExtremal, std::abs(e.value - e.expected) / e.expected, "<", 1e-6,
                   "t " + num(e.t) + " value " + num(e.value) + " expected " + num(e.expected));
    }));
  }
  for (int k = 1; k <= 4; ++k) {
    const std::string name = "eta extremal t_b=2^-b-1 b=" + std::to_string(k);
    out.push_back(guarded(name, kEtaExtremal, [&] {
      const ExtremalPoint e = eta_peak_point(k);
      return judge(name, kEtaExtremal, std::abs(e.value - e.expected) / e.expected, "<", 1e-6,
                   "t " + num(e.t) + " value " + num(e.value));
    }));
  }
  for (int n : {2, 4, 8}) {
    for (int beta = 0; beta <= 4; ++beta) {
      const std::string name = "theta_n derivative bound n=" + std::to_string(n) + " b=" + std::to_string(beta);
      out.push_back(guarded(name, kCutoff, [&] {
        const CutoffFunction c = cutoff(n);
        const Interval s = c.support();
        double worst = 0.0;
        constexpr int kGrid = 8192;
        for (int i = 0; i <= kGrid; ++i) {
          const double x = s.lo + (s.hi - s.lo) * i / kGrid;
          worst = std::max(worst, std::abs(c.derivative(beta, x)));
        }
        return judge(name, kCutoff, worst / c.derivative_bound(beta), "<=", 1.0, "ratio to n^b 2^{b(b+1)/2}");
      }));
    }
  }
}

void suite_density(Context&, std::vector<Check>& out) {
  const std::vector<int> ns = {4, 8, 16, 32, 64};
  std::vector<DensityPoint> pts;
  out.push_back(guarded("density strictly decreasing log-gauss", kDensity, [&] {
    pts = density_experiment(log_gauss(), {0, 1}, ns);
    double worst = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) worst = std::max(worst, pts[i].error / pts[i - 1].error);
    return judge("density strictly decreasing log-gauss", kDensity, worst, "<", 1.0, "largest successive ratio");
  }));
  out.push_back(guarded("density log-log slope log-gauss", kDensity, [&] {
    if (pts.size() != ns.size()) throw std::runtime_error("density series unavailable");
    std::vector<double> xs, ys;
    for (const auto& p : pts) {
      xs.push_back(p.n);
      ys.push_back(p.error);
    }
    return judge("density log-log slope log-gauss", kDensity, fit_loglog_slope(xs, ys), "<=", -0.8);
  }));
}

void witness_checks(std::vector<Check>& out, std::vector<SeminormIndex> idx, double expected_slope,
                    const std::string& tag) {
  std::vector<double> ms, blow;
  double worst = 0.0;
  const std::string c_name = "witness constraints " + tag;
  out.push_back(guarded(c_name, kNonNormable, [&] {
    for (int m = 2; m <= 64; ++m) {
      const WitnessResult w = nonnormability_witness(idx, 1.0, m);
      for (double v : w.constraint_sups) worst = std::max(worst, v);
      ms.push_back(m);
      blow.push_back(w.blowup_value);
    }
    return judge(c_name, kNonNormable, worst, "<", 1.0, "m = 2..64");
  }));
  const std::string s_name = "witness growth slope " + tag;
  out.push_back(guarded(s_name, kNonNormable, [&] {
    if (ms.empty()) throw std::runtime_error("witness series unavailable");
    const double slope = fit_loglog_slope(ms, blow);
    return judge(s_name, kNonNormable, std::abs(slope - expected_slope), "<=", 0.15,
                 "slope " + num(slope) + " expected " + num(expected_slope));
  }));
}

void suite_nonnormability(Context&, std::vector<Check>& out) {
  witness_checks(out, {{0, 0}}, 1.0, "{(0,0)}");
  witness_checks(out, {{0, 0}, {1, 1}}, 0.5, "{(0,0),(1,1)}");
}

void suite_recovery(Context& ctx, std::vector<Check>& out) {
  std::vector<double> probes;
  for (double x : {0.5, 2.0, 3.0}) probes.push_back(x * std::exp(ctx.rng.uniform(-0.05, 0.05)));
  const std::vector<SmoothFunction> bases = {log_gauss(), exp_inverse(), bump()};
  for (double s : {-2.25, 0.0, 1.5, 3.0}) {
    std::vector<double> est;
    for (const auto& g : bases) {
      const std::string name = "recover s=" + num(s) + " base " + g.label();
      out.push_back(guarded(name, kRecovery, [&] {
        const RecoveryReport r = recover_exponent(functional_ms(s, ctx.cfg), g, probes);
        est.push_back(r.s_estimate);
        return judge(name, kRecovery, std::abs(r.s_estimate - s), "<", 1e-6,
                     "consistency " + num(r.consistency_residual));
      }));
    }
    const std::string name = "recover spread s=" + num(s);
    out.push_back(guarded(name, kRecovery, [&] {
      if (est.size() != bases.size()) throw std::runtime_error("missing estimates");
      const auto [lo, hi] = std::minmax_element(est.begin(), est.end());
      return judge(name, kRecovery, *hi - *lo, "<", 1e-6);
    }));
  }
  out.push_back(guarded("point evaluation has no exponent", kCauchy, [&] {
    const RecoveryReport r = recover_exponent(point_evaluation(1.5), log_gauss(), probes);
    return judge("point evaluation has no exponent", kCauchy, r.consistency_residual, ">", 1e-3);
  }));
}

void suite_e_function(Context& ctx, std::vector<Check>& out) {
  const double grid[] = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  for (double c : {0.5, -1.5, 2.0}) {
    const std::string name = "E_c increasing c=" + num(c);
    out.push_back(guarded(name, kEFunction, [&] {
      const MonotonicityCheck m = e_monotonicity_check(c, grid, ctx.cfg);
      double least = std::numeric_limits<double>::infinity();
      for (double r : m.error_ratios) least = std::min(least, r);
      return judge(name, kEFunction, least, ">", 10.0, "smallest difference / error estimate");
    }));
    const std::string z = "E_c(c)=0 c=" + num(c);
    out.push_back(guarded(z, kEFunction, [&] {
      return judge(z, kEFunction, std::abs(e_function(c, c, ctx.cfg).value), "<", 1e-10);
    }));
  }
}

void suite_truncation(Context& ctx, std::vector<Check>& out) {
  struct Case {
    std::string tag;
    std::vector<SmoothFunction> fs;
    double center, radius, eps;
  };
  const std::vector<Case> cases = {
      {"log-gauss", {log_gauss()}, 1.0, 0.5, 1e-8},
      {"catalog", nonzero_catalog(), 0.5, 1.0, 1e-6},
      {"zero", {zero_function()}, 0.0, 1.0, 1e-8},
      {"log-gauss large eps", {log_gauss()}, 1.0, 0.5, 1e6},
  };
  for (const Case& c : cases) {
    const std::string name = "truncation tails " + c.tag;
    out.push_back(guarded(name, kTruncation, [&] {
      const TruncationBounds tb = truncation_bounds(c.fs, c.center, c.radius, c.eps);
      if (!(tb.a < 1.0 && 1.0 < tb.b)) return judge(name, kTruncation, tb.a, "<", 1.0, "a < 1 < b violated");
      QuadratureConfig q = ctx.cfg;
      q.abs_tol = std::min(q.abs_tol, c.eps / 10.0);
      double worst = 0.0;
      for (int i = 0; i <= 4; ++i) {
        const double s = c.center - c.radius + 0.5 * c.radius * i;
        double total = 0.0;
        for (const auto& f : c.fs) total = std::max(total, truncation_tail(f, s, c.center, tb.a, tb.b, q).value);
        worst = std::max(worst, total);
      }
      return judge(name, kTruncation, worst, "<", c.eps, "a " + num(tb.a) + " b " + num(tb.b));
    }));
  }
}

void suite_lemma1(Context& ctx, std::vector<Check>& out) {
  const struct {
    int alpha, beta;
    double p;
  } idx[] = {{0, 0, 1.0}, {1, 0, 2.0}, {-1, 1, 1.0}};
  for (const auto& f : catalog()) {
    for (const auto& i : idx) {
      const std::string name = "lp bound " + f.label() + " a=" + std::to_string(i.alpha) + " b=" +
                               std::to_string(i.beta) + " p=" + num(i.p);
      out.push_back(guarded(name, kLemma1, [&] {
        const LpBoundCheck r = weighted_lp_bound_check(f, i.alpha, i.beta, i.p, ctx.cfg);
        if (f.is_zero()) return judge(name, kLemma1, r.lhs, "<=", r.rhs, "both sides vanish");
        return judge(name, kLemma1, r.lhs, "<", r.rhs);
      }));
    }
  }
}

void suite_metric(Context& ctx, std::vector<Check>& out) {
  const std::vector<SmoothFunction> cat = catalog();
  const std::size_t n = cat.size();
  std::vector<double> d(n * n, std::nan(""));
  std::vector<std::string> errors(n * n);
  parallel_checks(n * n, ctx.threads, [&](std::size_t idx) {
    try {
      d[idx] = metric(cat[idx / n], cat[idx % n]).value;
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
    return Check{};
  });
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!errors[i].empty()) {
      out.push_back({"metric evaluation", kMetric, CheckStatus::fail, std::nan(""), "", 0.0, errors[i]});
      return;
    }
  }
  double largest = 0.0, asym = 0.0, diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag = std::max(diag, d[i * n + i]);
    for (std::size_t j = 0; j < n; ++j) {
      largest = std::max(largest, d[i * n + j]);
      asym = std::max(asym, std::abs(d[i * n + j] - d[j * n + i]));
    }
  }
  out.push_back(judge("metric bounded by 6", kMetric, largest, "<", 6.0));
  out.push_back(judge("metric symmetric", kMetric, asym, "==", 0.0));
  out.push_back(judge("metric d(f,f)=0", kMetric, diag, "==", 0.0));
  double violation = -std::numeric_limits<double>::infinity();
  std::string worst_triple;
  for (int k = 0; k < 10; ++k) {
    const std::size_t a = ctx.rng.index(n), b = ctx.rng.index(n), c = ctx.rng.index(n);
    const double v = d[a * n + c] - d[a * n + b] - d[b * n + c];
    if (v > violation) {
      violation = v;
      worst_triple = cat[a].label() + " " + cat[b].label() + " " + cat[c].label();
    }
  }
  out.push_back(judge("metric triangle inequality", kMetric, violation, "<=", 3.0 * 1e-10,
                      "10 seeded triples, worst " + worst_triple));
}

using Suite = void (*)(Context&, std::vector<Check>&);

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> r = {
      {"transform", suite_transform},
      {"convolution-theorem", suite_convolution_theorem},
      {"algebra", suite_algebra},
      {"young", suite_young},
      {"special", suite_special},
      {"density", suite_density},
      {"nonnormability", suite_nonnormability},
      {"recovery", suite_recovery},
      {"e-function", suite_e_function},
      {"truncation", suite_truncation},
      {"lemma1", suite_lemma1},
      {"metric", suite_metric},
  };
  return r;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "skipped";
}

SeededStream::SeededStream(std::uint64_t seed) : engine_(seed) {}

double SeededStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

std::size_t SeededStream::index(std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["suites"] = suites;
  j["summary"] = {{"pass", count(CheckStatus::pass)},
                  {"fail", count(CheckStatus::fail)},
                  {"skipped", count(CheckStatus::skipped)}};
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["status"] = std::string(to_string(c.status));
    e["measured"] = c.measured;
    e["relation"] = c.relation;
    e["tolerance"] = c.tolerance;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
  CsvTable t({"name", "anchor", "status", "measured", "relation", "tolerance", "detail"});
  for (const auto& c : checks) {
    t.add_row(std::vector<std::string>{c.name, c.anchor, std::string(to_string(c.status)), format_number(c.measured),
                                       c.relation, format_number(c.tolerance), c.detail});
  }
  return t.str();
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

VerificationReport run_verification(std::string_view suite, const VerifyOptions& opts) {
  opts.cfg.validate();
  VerificationReport report;
  report.seed = opts.seed;
  const unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  bool found = false;
  std::uint64_t k = 0;
  for (const auto& [name, fn] : registry()) {
    ++k;
    if (suite != "all" && suite != name) continue;
    found = true;
    // independent stream per suite
    Context ctx{opts.cfg, SeededStream(opts.seed ^ (0x9E3779B97F4A7C15ULL * k)), threads};
    report.suites.push_back(name);
    fn(ctx, report.checks);
  }
  if (!found) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  return report;
}

}  // namespace mellin
