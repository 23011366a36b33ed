#include "mellin/function_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mellin/errors.hpp"
#include "mellin/special_functions.hpp"
#include "numeric_util.hpp"

namespace mellin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSupGrid = 4096;
constexpr int kMinPieceGrid = 64;
constexpr int kRefineCandidates = 16;

using Poly = std::vector<double>;  // coefficients, lowest degree first

double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative_of(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(i * p[i]);
  return d;
}

Poly axpy(const Poly& a, const Poly& b, double s) {  // a + s b
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += s * b[i];
  return r;
}

Poly shift_up(const Poly& p, int k) {  // x^k p
  Poly r(k, 0.0);
  r.insert(r.end(), p.begin(), p.end());
  return r;
}

// g0^(k)(x) = x^-k P_k(ln x) g0(x),  P_{k+1} = P_k' - (2L + k) P_k
const std::vector<Poly>& log_gauss_polys() {
  static const std::vector<Poly> polys = [] {
    std::vector<Poly> p{{1.0}};
    for (int k = 0; k < kDefaultMaxOrder; ++k) {
      Poly next = axpy(derivative_of(p[k]), p[k], -static_cast<double>(k));
      next = axpy(next, shift_up(p[k], 1), -2.0);
      p.push_back(next);
    }
    return p;
  }();
  return polys;
}

// g1^(k)(x) = x^-2k Q_k(x) g1(x),  Q_{k+1} = x^2 Q_k' - 2k x Q_k - x^2 Q_k + Q_k
const std::vector<Poly>& exp_inverse_polys() {
  static const std::vector<Poly> polys = [] {
    std::vector<Poly> q{{1.0}};
    for (int k = 0; k < kDefaultMaxOrder; ++k) {
      Poly next = shift_up(derivative_of(q[k]), 2);
      next = axpy(next, shift_up(q[k], 1), -2.0 * k);
      next = axpy(next, shift_up(q[k], 2), -1.0);
      next = axpy(next, q[k], 1.0);
      q.push_back(next);
    }
    return q;
  }();
  return polys;
}

// sup of x^alpha over [lo, hi] times a derivative bound
DecayCertificate support_certificate(double lo, double hi, const std::function<double(int)>& dbound) {
  DecayCertificate c;
  for (int b = 0; b <= kDefaultMaxOrder; ++b) {
    for (int a = -kCatalogAlphaMax; a <= kCatalogAlphaMax; ++a) {
      const double xa = std::max(std::pow(lo, a), std::pow(hi, a));
      c.set(a, b, xa * dbound(b));
    }
  }
  return c;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<double> inside(const std::vector<double>& pts, const std::optional<Interval>& support) {
  if (!support) return pts;
  std::vector<double> out;
  for (double p : pts) {
    if (p >= support->lo && p <= support->hi) out.push_back(p);
  }
  return out;
}

double scaled_abs(int alpha, double t, double v) { return std::abs(detail::exp_weight(alpha, t, v)); }

}  // namespace

SmoothFunction zero_function() { return SmoothFunction(); }

SmoothFunction log_gauss() {
  SmoothFunction::Parts p;
  p.label = "log-gauss";
  p.oracle = [](int k, double x) {
    const double L = std::log(x);
    return horner(log_gauss_polys()[k], L) * std::exp(-k * L - L * L);
  };
  p.max_order = kDefaultMaxOrder;
  CertificateEstimate est;
  est.alpha_max = kCatalogAlphaMax;
  est.beta_max = kDefaultMaxOrder;
  est.t_lo = -45.0;
  est.t_hi = 45.0;
  est.grid = 16384;
  auto oracle = p.oracle;
  p.certificate = estimate_certificate(oracle, est);
  return SmoothFunction(std::move(p));
}

SmoothFunction exp_inverse() {
  SmoothFunction::Parts p;
  p.label = "exp-inv";
  p.oracle = [](int k, double x) {
    return horner(exp_inverse_polys()[k], x) * std::exp(-x - 1.0 / x - 2.0 * k * std::log(x));
  };
  p.max_order = kDefaultMaxOrder;
  CertificateEstimate est;
  est.alpha_max = kCatalogAlphaMax;
  est.beta_max = kDefaultMaxOrder;
  est.t_lo = -10.0;
  est.t_hi = 8.0;
  est.grid = 16384;
  auto oracle = p.oracle;
  p.certificate = estimate_certificate(oracle, est);
  return SmoothFunction(std::move(p));
}

SmoothFunction bump() {
  SmoothFunction::Parts p;
  p.label = "bump";
  p.oracle = [](int k, double x) { return eta_derivative(x - 2.0, k); };
  p.max_order = kDefaultMaxOrder;
  p.support = Interval{1.0, 3.0};
  p.breakpoints = {1.0, 2.0, 3.0};
  p.certificate = support_certificate(1.0, 3.0, [](int b) { return detail::triangular_power(b); });
  // triangular_power(0) = 1 = sup eta
  return SmoothFunction(std::move(p));
}

SmoothFunction cutoff_function(int n) {
  CutoffFunction c(n);
  SmoothFunction::Parts p;
  p.label = "theta" + std::to_string(n);
  p.oracle = [c](int k, double x) { return c.derivative(k, x); };
  p.max_order = kDefaultMaxOrder;
  const Interval s = c.support();
  p.support = s;
  p.breakpoints = {s.lo, 2.0 / n, static_cast<double>(n), s.hi};
  p.certificate = support_certificate(s.lo, s.hi, [c](int b) { return c.derivative_bound(b); });
  return SmoothFunction(std::move(p));
}

std::vector<std::string> catalog_labels() {
  return {"zero", "log-gauss", "exp-inv", "bump", "theta2", "theta4"};
}

std::vector<SmoothFunction> catalog() {
  static const std::vector<SmoothFunction> all = [] {
    std::vector<SmoothFunction> v;
    for (const auto& l : catalog_labels()) v.push_back(catalog_function(l));
    return v;
  }();
  return all;
}

SmoothFunction catalog_function(std::string_view label) {
  static const SmoothFunction g0 = log_gauss();
  static const SmoothFunction g1 = exp_inverse();
  static const SmoothFunction b = bump();
  static const SmoothFunction z = zero_function();
  if (label == "zero") return z;
  if (label == "log-gauss") return g0;
  if (label == "exp-inv") return g1;
  if (label == "bump") return b;
  if (label.substr(0, 5) == "theta") {
    const std::string digits(label.substr(5));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) &&
        digits.size() < 6) {
      const int n = std::stoi(digits);
      if (n >= 2) return cutoff_function(n);
    }
  }
  throw std::invalid_argument("unknown catalog function '" + std::string(label) + "'");
}

SupEstimate seminorm_detail(const SmoothFunction& f, SeminormIndex idx, double tol) {
  if (idx.beta < 0) throw DomainError("seminorm order must be nonnegative");
  if (idx.beta > f.max_order()) {
    throw CapabilityError("seminorm order exceeds the oracle of " + f.label());
  }
  if (!(tol > 0.0)) throw DomainError("seminorm tolerance must be positive");
  if (f.is_zero()) return {0.0, 1.0};
  const LogEnvelope env = f.log_envelope(idx.beta).shifted(idx.alpha);
  const Interval support = f.log_support();
  Interval window = support;
  // Outside the superlevel set the envelope is below tol, so the sup there
  // cannot matter at this tolerance.
  window = window.intersect(env.superlevel(std::log(tol)));
  if (!std::isfinite(window.lo) || !std::isfinite(window.hi)) {
    throw InsufficientCertificate("certificate of " + f.label() +
                                  " does not bound the sup window for (alpha, beta) = (" +
                                  std::to_string(idx.alpha) + ", " + std::to_string(idx.beta) +
                                  ")");
  }
  if (window.empty()) return {0.0, 1.0};

  std::vector<double> cuts{window.lo};
  for (double b : f.log_breakpoints()) {
    if (b > window.lo && b < window.hi) cuts.push_back(b);
  }
  cuts.push_back(window.hi);
  std::sort(cuts.begin(), cuts.end());
  const double width = window.hi - window.lo;

  std::vector<double> ts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    const int n = std::max(kMinPieceGrid, static_cast<int>(kSupGrid * w / width));
    for (int j = 0; j < n; ++j) ts.push_back(cuts[i] + w * j / n);
  }
  ts.push_back(window.hi);

  auto eval = [&](double t) { return scaled_abs(idx.alpha, t, f.derivative(idx.beta, std::exp(t))); };
  std::vector<double> vs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) vs[i] = eval(ts[i]);

  SupEstimate best{0.0, std::exp(ts.front())};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (vs[i] > best.value) best = {vs[i], std::exp(ts[i])};
  }
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (vs[i] > 0.0 && vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return vs[a] > vs[b]; });
  if (peaks.size() > kRefineCandidates) peaks.resize(kRefineCandidates);
  std::sort(peaks.begin(), peaks.end());
  for (std::size_t i : peaks) {
    auto [t, v] = detail::golden_max(eval, ts[i - 1], ts[i + 1]);
    if (v > best.value) best = {v, std::exp(t)};
  }
  return best;
}

double seminorm(const SmoothFunction& f, SeminormIndex idx, double tol) {
  return seminorm_detail(f, idx, tol).value;
}

MetricValue metric(const SmoothFunction& f, const SmoothFunction& g, int N, double tol) {
  if (N < 0) throw DomainError("metric truncation order must be nonnegative");
  const SmoothFunction d = subtract(f, g);
  const int bmax = std::min({f.max_order(), g.max_order(), N});
  MetricValue out;
  double covered = 0.0;
  for (int b = 0; b <= bmax; ++b) {
    for (int a = -(N - b); a <= N - b; ++a) {
      const double w = std::ldexp(1.0, -(std::abs(a) + b));
      double p;
      try {
        p = seminorm(d, {a, b}, tol);
      } catch (const InsufficientCertificate&) {
        continue;
      }
      out.value += w * p / (1.0 + p);
      covered += w;
      ++out.terms;
    }
  }
  // Total weight of all indices is sum_k (2k + 1) 2^-k = 6.
  out.tail_bound = std::max(0.0, 6.0 - covered);
  return out;
}

SmoothFunction dilate(const SmoothFunction& f, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("dilation factor must be positive");
  if (f.is_zero()) return f;
  SmoothFunction::Parts p;
  p.label = "D[" + std::to_string(v) + "](" + f.label() + ")";
  p.oracle = [f, v](int k, double u) { return std::pow(v, -k) * f.derivative(k, u / v); };
  p.max_order = f.max_order();
  for (const auto& [key, m] : f.certificate().entries()) {
    p.certificate.set(key.first, key.second, std::pow(v, key.first - key.second) * m);
  }
  if (f.support()) p.support = Interval{f.support()->lo * v, f.support()->hi * v};
  for (double b : f.breakpoints()) p.breakpoints.push_back(b * v);
  p.abs_moment = [f, v](double sigma) -> std::optional<double> {
    auto m = f.abs_moment(sigma);
    if (!m) return std::nullopt;
    return std::pow(v, sigma) * *m;
  };
  return SmoothFunction(std::move(p));
}

SmoothFunction add(const SmoothFunction& f, const SmoothFunction& g) {
  if (g.is_zero()) return f;
  if (f.is_zero()) return g;
  SmoothFunction::Parts p;
  p.label = "(" + f.label() + "+" + g.label() + ")";
  p.oracle = [f, g](int k, double x) { return f.derivative(k, x) + g.derivative(k, x); };
  p.max_order = std::min(f.max_order(), g.max_order());
  for (const auto& [key, m] : f.certificate().entries()) {
    if (key.second > p.max_order) continue;
    if (auto mg = g.certificate().get(key.first, key.second)) {
      p.certificate.set(key.first, key.second, m + *mg);
    }
  }
  if (f.support() && g.support()) {
    p.support = Interval{std::min(f.support()->lo, g.support()->lo),
                         std::max(f.support()->hi, g.support()->hi)};
  }
  p.breakpoints = merged(f.breakpoints(), g.breakpoints());
  return SmoothFunction(std::move(p));
}

SmoothFunction scale(double c, const SmoothFunction& f) {
  if (!std::isfinite(c)) throw DomainError("scale factor must be finite");
  if (c == 0.0 || f.is_zero()) return zero_function();
  SmoothFunction::Parts p;
  p.label = std::to_string(c) + "*" + f.label();
  p.oracle = [f, c](int k, double x) { return c * f.derivative(k, x); };
  p.max_order = f.max_order();
  for (const auto& [key, m] : f.certificate().entries()) {
    p.certificate.set(key.first, key.second, std::abs(c) * m);
  }
  p.support = f.support();
  p.breakpoints = f.breakpoints();
  p.abs_moment = [f, c](double sigma) -> std::optional<double> {
    auto m = f.abs_moment(sigma);
    if (!m) return std::nullopt;
    return std::abs(c) * *m;
  };
  return SmoothFunction(std::move(p));
}

SmoothFunction subtract(const SmoothFunction& f, const SmoothFunction& g) {
  if (g.is_zero()) return f;
  return add(f, scale(-1.0, g)).relabeled("(" + f.label() + "-" + g.label() + ")");
}

SmoothFunction multiply(const SmoothFunction& f, const SmoothFunction& g) {
  if (f.is_zero() || g.is_zero()) return zero_function();
  std::optional<Interval> support;
  if (f.support() && g.support()) {
    Interval s = f.support()->intersect(*g.support());
    if (s.empty()) return zero_function();
    support = s;
  } else if (f.support()) {
    support = f.support();
  } else if (g.support()) {
    support = g.support();
  }
  SmoothFunction::Parts p;
  p.label = "(" + f.label() + "*" + g.label() + ")";
  p.max_order = std::min(f.max_order(), g.max_order());
  p.oracle = [f, g](int k, double x) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) {
      s += detail::binomial(k, i) * f.derivative(i, x) * g.derivative(k - i, x);
    }
    return s;
  };
  // |x^a (fg)^(b)| <= sum_i C(b,i) min over a = a1 + a2 of M^f_{a1,i} M^g_{a2,b-i}
  const auto& cf = f.certificate();
  const auto& cg = g.certificate();
  for (int b = 0; b <= p.max_order; ++b) {
    for (int a = -kCatalogAlphaMax; a <= kCatalogAlphaMax; ++a) {
      double total = 0.0;
      bool ok = true;
      for (int i = 0; i <= b && ok; ++i) {
        double best = kInf;
        for (int a1 : cf.alphas(i)) {
          auto mg = cg.get(a - a1, b - i);
          if (mg) best = std::min(best, cf.at(a1, i) * *mg);
        }
        if (!std::isfinite(best)) ok = false;
        total += detail::binomial(b, i) * best;
      }
      if (ok) p.certificate.set(a, b, total);
    }
  }
  p.support = support;
  p.breakpoints = inside(merged(f.breakpoints(), g.breakpoints()), support);
  return SmoothFunction(std::move(p));
}

std::vector<double> sign_changes(const SmoothFunction& f, int beta, double x_lo, double x_hi,
                                 int grid) {
  std::vector<double> out;
  if (!(x_lo > 0.0) || !(x_lo < x_hi) || grid < 2) return out;
  const double t0 = std::log(x_lo), t1 = std::log(x_hi);
  auto F = [&](double t) { return f.derivative(beta, std::exp(t)); };
  double last_t = t0;
  double last_v = F(t0);
  for (int i = 1; i <= grid; ++i) {
    const double t = t0 + (t1 - t0) * i / grid;
    const double v = F(t);
    if (v == 0.0) continue;
    if (last_v != 0.0 && std::signbit(v) != std::signbit(last_v)) {
      double a = last_t, b = t;
      const bool a_negative = std::signbit(last_v);
      for (int it = 0; it < 100 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = F(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (std::signbit(fm) == a_negative) {
          a = m;
        } else {
          b = m;
        }
      }
      out.push_back(std::exp(0.5 * (a + b)));
    }
    last_t = t;
    last_v = v;
  }
  return out;
}

LpBoundCheck weighted_lp_bound_check(const SmoothFunction& f, int alpha, int beta, double p,
                                     const QuadratureConfig& cfg) {
  if (!(p >= 1.0)) throw DomainError("weighted Lp check needs p >= 1");
  LpBoundCheck out;
  if (f.is_zero()) {
    // Any M > 0 satisfies the bound for the zero function.
    out.pass = true;
    return out;
  }
  const double M = seminorm(f, {alpha, beta}, cfg.rel_tol) + seminorm(f, {alpha + 2, beta}, cfg.rel_tol);
  out.rhs = 2.0 * std::pow(M, p);

  const LogEnvelope base = f.log_envelope(beta);
  LogIntegrand in;
  const double sigma = alpha * p + 1.0;
  in.fn = [&f, beta, p, sigma](double t) {
    const double v = std::abs(f.derivative(beta, std::exp(t)));
    if (v == 0.0) return 0.0;
    return std::exp(sigma * t + p * std::log(v));
  };
  in.envelope = base.scaled(p).shifted(sigma);
  in.domain = f.log_support();
  std::vector<double> bps = f.log_breakpoints();
  Interval scan = f.log_support();
  scan = scan.intersect(base.superlevel(std::log(1e-200)));
  if (std::isfinite(scan.lo) && std::isfinite(scan.hi) && !scan.empty()) {
    for (double x : sign_changes(f, beta, std::exp(scan.lo), std::exp(scan.hi))) {
      bps.push_back(std::log(x));
    }
  }
  in.breakpoints = bps;
  out.lhs = integrate_log_integrand(in, cfg).value;
  out.pass = out.lhs < out.rhs;
  return out;
}

WitnessResult nonnormability_witness(std::span<const SeminormIndex> indices, double eps, int m) {
  if (indices.empty()) throw DomainError("witness needs at least one seminorm index");
  if (!(eps > 0.0)) throw DomainError("witness needs eps > 0");
  if (m < 1) throw DomainError("witness needs m >= 1");
  int beta_n = 0, alpha_max = 0;
  for (const auto& i : indices) {
    if (i.beta < 0) throw DomainError("seminorm order must be nonnegative");
    beta_n = std::max(beta_n, i.beta);
    alpha_max = std::max(alpha_max, std::abs(i.alpha));
  }
  if (beta_n + 2 > kDefaultMaxOrder) {
    throw CapabilityError("blow-up order beta_n + 2 exceeds the supported derivative order");
  }
  const SmoothFunction f = bump();
  const double sup_f = 1.0;  // eta(0)
  const double C = eps / (std::pow(3.0, alpha_max) *
                          std::ldexp(1.0, beta_n * (beta_n + 1) / 2 + beta_n + 1) * sup_f);
  // f(m^{1/(b+1)} x) = (D_v f)(x) with v = m^{-1/(b+1)}
  const double v = std::pow(static_cast<double>(m), -1.0 / (beta_n + 1));
  WitnessResult out;
  out.constant = C;
  out.f_m = scale(C / m, dilate(f, v)).relabeled("witness(m=" + std::to_string(m) + ")");
  for (const auto& i : indices) out.constraint_sups.push_back(seminorm(out.f_m, i, 1e-14));
  out.blowup_order = beta_n + 2;
  out.blowup_value = seminorm(out.f_m, {0, beta_n + 2}, 1e-14);
  return out;
}

std::vector<DensityPoint> density_experiment(const SmoothFunction& f, SeminormIndex idx,
                                             std::span<const int> ns, double tol) {
  std::vector<DensityPoint> out;
  for (int n : ns) {
    const SmoothFunction d = subtract(multiply(cutoff_function(n), f), f);
    out.push_back({n, seminorm(d, idx, tol)});
  }
  return out;
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw DomainError("slope fit needs positive data");
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mellin
