#include "mellin/mellin_ops.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "mellin/errors.hpp"
#include "mellin/function_space.hpp"
#include "numeric_util.hpp"

namespace mellin {

namespace {

constexpr double kCertificateInflation = 1.1;

std::vector<double> support_points(const SmoothFunction& f) {
  std::vector<double> pts = f.breakpoints();
  if (f.support()) {
    pts.push_back(f.support()->lo);
    pts.push_back(f.support()->hi);
  }
  return pts;
}

// Bound on sup |x^a (f*g)^(b)| from either factor carrying the derivative.
std::optional<double> convolution_bound(const SmoothFunction& f, const SmoothFunction& g, int a, int b) {
  std::optional<double> best;
  auto consider = [&](const SmoothFunction& d, const SmoothFunction& other) {
    if (b > d.max_order()) return;
    auto m = d.certificate().get(a, b);
    if (!m) return;
    auto moment = other.abs_moment(a - b);
    if (!moment || !std::isfinite(*moment)) return;
    const double v = kCertificateInflation * *m * *moment;
    if (!best || v < *best) best = v;
  };
  consider(f, g);
  consider(g, f);
  return best;
}

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

double outside_mass(const SmoothFunction& f, double t_min, double t_max) {
  if (f.is_zero()) return 0.0;
  const Interval s = f.log_support();
  const LogEnvelope env = f.log_envelope(0);
  double mass = 0.0;
  if (s.lo < t_min) mass += env.left_tail(t_min);
  if (s.hi > t_max) mass += env.right_tail(t_max);
  return mass;
}

}  // namespace

IntegralResult kernel_integral(const SmoothFunction& f, const SmoothFunction& g, double x,
                               int alpha, int beta, const QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("convolution is evaluated on (0, inf)");
  if (beta > f.max_order()) throw CapabilityError("kernel order exceeds the oracle of " + f.label());
  if (f.is_zero() || g.is_zero()) return {};
  const double lx = std::log(x);
  LogIntegrand in;
  in.fn = [&f, &g, x, alpha, beta](double u) {
    const double gv = g.value(std::exp(u));
    if (gv == 0.0) return 0.0;
    return detail::exp_weight(-alpha, u, f.derivative(beta, x * std::exp(-u)) * gv);
  };
  in.envelope = (f.log_envelope(beta).reflected(lx) + g.log_envelope(0)).shifted(-alpha);
  const Interval fs = f.log_support();
  in.domain = g.log_support().intersect({lx - fs.hi, lx - fs.lo});
  in.breakpoints = g.log_breakpoints();
  for (double b : f.log_breakpoints()) in.breakpoints.push_back(lx - b);
  return integrate_log_integrand(in, cfg);
}

ConvolutionResult::ConvolutionResult(SmoothFunction f, SmoothFunction g, QuadratureConfig cfg)
    : f_(std::move(f)), g_(std::move(g)), cfg_(cfg) {
  cfg_.validate();
  if (f_.is_zero() || g_.is_zero()) {
    function_ = zero_function();
    return;
  }
  SmoothFunction::Parts p;
  p.label = "conv(" + f_.label() + "," + g_.label() + ")";
  p.max_order = f_.max_order();
  const SmoothFunction f_copy = f_, g_copy = g_;
  const QuadratureConfig c = cfg_;
  p.oracle = [f_copy, g_copy, c](int k, double x) {
    return kernel_integral(f_copy, g_copy, x, k, k, c).value;
  };
  std::set<std::pair<int, int>> keys;
  for (const auto& [key, m] : f_.certificate().entries()) keys.insert(key);
  for (const auto& [key, m] : g_.certificate().entries()) keys.insert(key);
  for (const auto& [a, b] : keys) {
    if (b > p.max_order) continue;
    if (auto bound = convolution_bound(f_, g_, a, b)) p.certificate.set(a, b, *bound);
  }
  if (f_.support() && g_.support()) {
    p.support = Interval{f_.support()->lo * g_.support()->lo, f_.support()->hi * g_.support()->hi};
    for (double a : support_points(f_)) {
      for (double b : support_points(g_)) p.breakpoints.push_back(a * b);
    }
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()), p.breakpoints.end());
  }
  p.abs_moment = [f_copy, g_copy](double sigma) -> std::optional<double> {
    auto a = f_copy.abs_moment(sigma);
    auto b = g_copy.abs_moment(sigma);
    if (!a || !b) return std::nullopt;
    return *a * *b;
  };
  function_ = SmoothFunction(std::move(p));
}

IntegralResult ConvolutionResult::evaluate_derivative(int beta, double x) const {
  return kernel_integral(f_, g_, x, beta, beta, cfg_);
}

ConvolutionResult mellin_convolve(const SmoothFunction& f, const SmoothFunction& g,
                                  const QuadratureConfig& cfg) {
  return ConvolutionResult(f, g, cfg);
}

double convolution_derivative_residual(const SmoothFunction& f, const SmoothFunction& g, double x,
                                       int beta, const QuadratureConfig& cfg) {
  if (beta + 1 > f.max_order()) throw CapabilityError("residual needs order beta + 1");
  if (f.is_zero() || g.is_zero()) return 0.0;
  auto K = [&](double xi) { return kernel_integral(f, g, xi, beta, beta, cfg).value; };
  const double h = 1e-4 * x;
  auto D = [&](double step) { return (K(x + step) - K(x - step)) / (2.0 * step); };
  const double fd = (4.0 * D(0.5 * h) - D(h)) / 3.0;
  const double exact = kernel_integral(f, g, x, beta + 1, beta + 1, cfg).value;
  return std::abs(fd - exact);
}

LogGridFunction sample_log_grid(const SmoothFunction& f, const LogGridSpec& spec) {
  const std::size_t n = spec.n_points;
  if (n < 2 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of two >= 2");
  if (!(spec.t_min < spec.t_max)) throw DomainError("grid window is empty");
  LogGridFunction out{spec.t_min, spec.t_max, std::vector<double>(n, 0.0)};
  if (f.is_zero()) return out;
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = f.value(std::exp(out.t_at(i)));
  return out;
}

LogGridFunction mellin_convolve_fast(const SmoothFunction& f, const SmoothFunction& g,
                                     const LogGridSpec& spec, double eps) {
  const LogGridFunction F = sample_log_grid(f, spec);
  const LogGridFunction G = sample_log_grid(g, spec);
  for (const SmoothFunction* h : {&f, &g}) {
    const double mass = outside_mass(*h, spec.t_min, spec.t_max);
    if (mass > eps) {
      throw TailMassExceeded("tail mass " + std::to_string(mass) + " of " + h->label() +
                             " outside the grid exceeds " + std::to_string(eps));
    }
  }
  const std::size_t n = spec.n_points;
  const std::size_t m = 2 * n;
  const double dt = F.spacing();
  LogGridFunction out{2.0 * spec.t_min, 2.0 * spec.t_min + dt * static_cast<double>(m - 1),
                      std::vector<double>(m, 0.0)};
  if (f.is_zero() || g.is_zero()) return out;

  std::vector<double> a(m, 0.0), b(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = F.samples[i];
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    b[i] = w * G.samples[i];
  }
  const std::size_t nc = m / 2 + 1;
  fftw_complex* A = fftw_alloc_complex(nc);
  fftw_complex* B = fftw_alloc_complex(nc);
  fftw_plan pa, pb, pc;
  {
    std::lock_guard lock(fftw_mutex());
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(m), a.data(), A, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(m), b.data(), B, FFTW_ESTIMATE);
    pc = fftw_plan_dft_c2r_1d(static_cast<int>(m), A, out.samples.data(), FFTW_ESTIMATE);
  }
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t k = 0; k < nc; ++k) {
    const double re = A[k][0] * B[k][0] - A[k][1] * B[k][1];
    const double im = A[k][0] * B[k][1] + A[k][1] * B[k][0];
    A[k][0] = re;
    A[k][1] = im;
  }
  fftw_execute(pc);
  {
    std::lock_guard lock(fftw_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pc);
  }
  fftw_free(A);
  fftw_free(B);
  const double norm = dt / static_cast<double>(m);
  for (auto& v : out.samples) v *= norm;
  out.samples[m - 1] = 0.0;  // the linear convolution has 2n - 1 terms
  return out;
}

IntegralResult mellin_transform(const SmoothFunction& f, double s, const QuadratureConfig& cfg) {
  return integrate_half_line_weighted(f, s, 0, cfg);
}

double convolution_theorem_residual(const SmoothFunction& f, const SmoothFunction& g, double s,
                                    const QuadratureConfig& cfg) {
  const ConvolutionResult conv = mellin_convolve(f, g, cfg.nested());
  const double lhs = mellin_transform(conv.function(), s, cfg).value;
  const double rhs = mellin_transform(f, s, cfg).value * mellin_transform(g, s, cfg).value;
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

IntegralResult haar_norm(const SmoothFunction& f, double p, const QuadratureConfig& cfg) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("Haar norm needs 1 <= p < inf");
  if (f.is_zero()) return {};
  const LogEnvelope base = f.log_envelope(0);
  LogIntegrand in;
  in.fn = [&f, p](double t) {
    const double v = std::abs(f.value(std::exp(t)));
    return v == 0.0 ? 0.0 : std::pow(v, p);
  };
  in.envelope = base.scaled(p);
  in.domain = f.log_support();
  in.breakpoints = f.log_breakpoints();
  const Interval scan = f.log_support().intersect(base.superlevel(std::log(1e-200)));
  if (std::isfinite(scan.lo) && std::isfinite(scan.hi) && !scan.empty()) {
    for (double x : sign_changes(f, 0, std::exp(scan.lo), std::exp(scan.hi), 256)) {
      in.breakpoints.push_back(std::log(x));
    }
  }
  IntegralResult r = integrate_log_integrand(in, cfg);
  const double norm = std::pow(std::max(r.value, 0.0), 1.0 / p);
  if (r.value > 0.0) r.error_estimate *= norm / (p * r.value);
  r.value = norm;
  return r;
}

YoungCheck young_inequality_check(const SmoothFunction& f, const SmoothFunction& g, double p,
                                  double q, const QuadratureConfig& cfg) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("Young exponents must be >= 1");
  const double inv_r = 1.0 / p + 1.0 / q - 1.0;
  if (!(inv_r > 0.0)) throw DomainError("Young exponents need 1/p + 1/q > 1 for finite r");
  YoungCheck out;
  out.p = p;
  out.q = q;
  out.r = 1.0 / inv_r;
  const ConvolutionResult conv = mellin_convolve(f, g, cfg.nested());
  out.lhs = haar_norm(conv.function(), out.r, cfg).value;
  out.rhs = haar_norm(f, p, cfg).value * haar_norm(g, q, cfg).value;
  out.margin = out.rhs - out.lhs;
  return out;
}

}  // namespace mellin
