#include "mellin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mellin/errors.hpp"
#include "numeric_util.hpp"

namespace mellin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kMinLevel = 4;

double checked(double v, double at) {
  if (!std::isfinite(v)) {
    throw NonFiniteValue("integrand returned a non-finite value at t = " + std::to_string(at));
  }
  return v;
}

// Nodes of a double-exponential rule at step h = 2^-level, offsets j h.
// A rule visits u = 0 once, then every +-j h at the first level where j is
// odd, so that level k reuses every node of level k - 1.
class Rule {
 public:
  virtual ~Rule() = default;
  // Sum of w(u) h(x(u)) over the nodes new at `level`.
  virtual double level_sum(const Integrand& h, int level, long& evals) const = 0;
};

// x = c + d tanh(pi/2 sinh u) on a finite interval.
class TanhSinh final : public Rule {
 public:
  TanhSinh(double a, double b) : a_(a), b_(b), d_(0.5 * (b - a)) {}

  double level_sum(const Integrand& h, int level, long& evals) const override {
    const double step = std::ldexp(1.0, -level);
    double sum = 0.0;
    const int jmax = static_cast<int>(kUMax / step);
    const int stride = level == 0 ? 1 : 2;
    const int first = level == 0 ? 0 : 1;
    for (int j = first; j <= jmax; j += stride) {
      const double u = j * step;
      const double v = kHalfPi * std::sinh(u);
      const double ch = std::cosh(v);
      const double w = kHalfPi * std::cosh(u) / (ch * ch);
      // distance from the nearer endpoint, computed without cancellation
      const double delta = d_ * 2.0 / (std::exp(2.0 * v) + 1.0);
      if (delta <= 0.0 || w * d_ < 1e-300) break;
      if (j == 0) {
        sum += w * checked(h(a_ + d_), a_ + d_);
        ++evals;
        continue;
      }
      const double xr = b_ - delta;
      const double xl = a_ + delta;
      double fr = 0.0, fl = 0.0;
      if (xr > a_ && xr < b_) {
        fr = checked(h(xr), xr);
        ++evals;
      }
      if (xl > a_ && xl < b_) {
        fl = checked(h(xl), xl);
        ++evals;
      }
      sum += w * (fr + fl);
    }
    return sum * d_;
  }

 private:
  static constexpr double kUMax = 3.5;
  double a_, b_, d_;
};

// x = sinh(pi/2 sinh u) over the real line.
class SinhSinh final : public Rule {
 public:
  double level_sum(const Integrand& h, int level, long& evals) const override {
    const double step = std::ldexp(1.0, -level);
    double sum = 0.0;
    const int jmax = static_cast<int>(kUMax / step);
    const int stride = level == 0 ? 1 : 2;
    const int first = level == 0 ? 0 : 1;
    for (int j = first; j <= jmax; j += stride) {
      const double u = j * step;
      const double v = kHalfPi * std::sinh(u);
      const double x = std::sinh(v);
      const double w = kHalfPi * std::cosh(u) * std::cosh(v);
      if (j == 0) {
        sum += w * checked(h(0.0), 0.0);
        ++evals;
        continue;
      }
      const double fr = h(x);
      const double fl = h(-x);
      evals += 2;
      const double term = w * (fr + fl);
      // Far nodes whose weight overflows contribute nothing for an
      // integrable h once h has underflowed to zero.
      if (fr == 0.0 && fl == 0.0) continue;
      sum += checked(term, x);
    }
    return sum;
  }

 private:
  static constexpr double kUMax = 4.0;
};

struct Piece {
  const Rule* rule;
  int level = 0;
  double raw = 0.0;  // accumulated sum over all nodes so far
  double estimate = 0.0;
  double error = 0.0;
};

void refine(Piece& p, const Integrand& h, long& evals) {
  const double previous = p.estimate;
  ++p.level;
  p.raw += p.rule->level_sum(h, p.level, evals);
  p.estimate = p.raw * std::ldexp(1.0, -p.level);
  p.error = std::abs(p.estimate - previous);
}

IntegralResult run(const std::vector<const Rule*>& rules, const Integrand& h,
                   const QuadratureConfig& cfg) {
  cfg.validate();
  const int min_level = std::min(kMinLevel, cfg.max_refinement_depth);
  std::vector<Piece> pieces;
  long evals = 0;
  for (const Rule* r : rules) {
    Piece p{r};
    p.raw = r->level_sum(h, 0, evals);
    p.estimate = p.raw;
    while (p.level < min_level) refine(p, h, evals);
    pieces.push_back(p);
  }
  while (true) {
    double total = 0.0, err = 0.0;
    for (const auto& p : pieces) {
      total += p.estimate;
      err += p.error;
    }
    IntegralResult res{total, err, evals, true, 0.0};
    if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) return res;
    Piece* worst = nullptr;
    for (auto& p : pieces) {
      if (p.level >= cfg.max_refinement_depth) continue;
      if (!worst || p.error > worst->error) worst = &p;
    }
    if (!worst) {
      res.converged = false;
      throw ToleranceNotReached("tolerance not reached at maximum refinement depth (estimate " +
                                    std::to_string(total) + " +- " + std::to_string(err) + ")",
                                res);
    }
    refine(*worst, h, evals);
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol >= 1e-14) && rel_tol != 0.0) throw DomainError("rel_tol must be >= 1e-14");
  if (!(abs_tol >= 0.0)) throw DomainError("abs_tol must be >= 0");
  if (rel_tol == 0.0 && abs_tol == 0.0) throw DomainError("rel_tol and abs_tol are both zero");
  if (max_refinement_depth < 1) throw DomainError("max_refinement_depth must be >= 1");
  if (!(truncation_margin > 1.0)) throw DomainError("truncation_margin must exceed 1");
}

QuadratureConfig QuadratureConfig::nested(double factor) const {
  QuadratureConfig c = *this;
  c.rel_tol = std::max(1e-14, rel_tol * factor);
  c.abs_tol = abs_tol * factor;
  if (c.rel_tol == 0.0 && c.abs_tol == 0.0) c.abs_tol = 1e-300;
  return c;
}

IntegralResult integrate_interval(const Integrand& h, double a, double b,
                                  const QuadratureConfig& cfg,
                                  std::span<const double> breakpoints) {
  if (!(a <= b)) throw DomainError("integration interval is reversed");
  if (a == b) return {};
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<TanhSinh> storage;
  storage.reserve(cuts.size());
  std::vector<const Rule*> rules;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    storage.emplace_back(cuts[i], cuts[i + 1]);
    rules.push_back(&storage.back());
  }
  return run(rules, h, cfg);
}

IntegralResult integrate_real_line(const Integrand& h, const QuadratureConfig& cfg) {
  SinhSinh rule;
  return run({&rule}, h, cfg);
}

IntegralResult integrate_log_integrand(const LogIntegrand& in, const QuadratureConfig& cfg) {
  cfg.validate();
  if (in.envelope.is_zero() || in.domain.empty()) return {};
  const double scale = std::exp(in.envelope.peak(in.domain));
  const double eps =
      std::max(cfg.abs_tol, cfg.rel_tol * (std::isfinite(scale) ? scale : 0.0)) /
      cfg.truncation_margin;
  Interval window = in.domain;
  double tail = 0.0;
  if (!std::isfinite(window.lo)) {
    auto cut = in.envelope.lower_cut(eps);
    if (!cut) throw InsufficientCertificate("envelope does not decay towards -inf");
    window.lo = *cut;
    tail += in.envelope.left_tail(window.lo);
  }
  if (!std::isfinite(window.hi)) {
    auto cut = in.envelope.upper_cut(eps);
    if (!cut) throw InsufficientCertificate("envelope does not decay towards +inf");
    window.hi = *cut;
    tail += in.envelope.right_tail(window.hi);
  }
  IntegralResult res;
  if (window.lo < window.hi) {
    res = integrate_interval(in.fn, window.lo, window.hi, cfg, in.breakpoints);
  }
  res.truncation_bound = tail;
  return res;
}

IntegralResult integrate_half_line_weighted(const SmoothFunction& f, double s, int beta,
                                            const QuadratureConfig& cfg) {
  if (f.is_zero()) return {};
  const Interval support = f.log_support();
  if (!f.support()) {
    // Exponents that bracket s - 1 with room to spare at infinity.
    const int lo = static_cast<int>(std::floor(s - 1.0));
    const int hi = static_cast<int>(std::ceil(s - 1.0)) + 2;
    if (!f.certificate().contains(lo, beta) || !f.certificate().contains(hi, beta)) {
      throw InsufficientCertificate("certificate lacks the exponents around s = " +
                                    std::to_string(s));
    }
  }
  LogIntegrand in;
  in.fn = [&f, s, beta](double t) { return detail::exp_weight(s, t, f.derivative(beta, std::exp(t))); };
  in.envelope = f.log_envelope(beta).shifted(s);
  in.domain = support;
  in.breakpoints = f.log_breakpoints();
  return integrate_log_integrand(in, cfg);
}

TruncationBounds truncation_bounds(std::span<const SmoothFunction> fs, double s_center,
                                   double s_radius, double eps) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!(s_radius >= 0.0)) throw DomainError("s_radius must be nonnegative");
  const double exponents[3] = {s_center - s_radius, s_center, s_center + s_radius};
  double m1 = 0.0, m2 = 0.0;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    for (double e : exponents) {
      // x^{e-1} <= x^{floor(e-1)} on (0,1) and x^{e+2} <= x^{ceil(e+2)} on (1,inf)
      m1 += f.certificate().at(static_cast<int>(std::floor(e - 1.0)), 0);
      m2 += f.certificate().at(static_cast<int>(std::ceil(e + 2.0)), 0);
    }
  }
  // Each half of M1 a^2 / 2 + M2 / b is kept at most 0.49 eps.
  const double a = m1 > 0.0 ? std::min(0.5, std::sqrt(0.98 * eps / m1)) : 0.5;
  const double b = m2 > 0.0 ? std::max(2.0, m2 / (0.49 * eps)) : 2.0;
  return {a, b, m1, m2};
}

IntegralResult truncation_tail(const SmoothFunction& f, double s, double s_center, double a,
                               double b, const QuadratureConfig& cfg) {
  if (f.is_zero()) return {};
  auto integrand = [&f, s, s_center](double t) {
    const double v = std::abs(f.value(std::exp(t)));
    if (v == 0.0) return 0.0;
    // |x^s - x^c| x with x = e^t, the extra factor being the Jacobian
    return std::abs(detail::exp_weight(s + 1.0, t, v) - detail::exp_weight(s_center + 1.0, t, v));
  };
  const LogEnvelope base = f.log_envelope(0).offset(std::log(2.0));
  LogIntegrand lower{integrand, base.shifted(std::min(s, s_center) + 1.0),
                     Interval{-kInf, std::log(a)}.intersect(f.log_support()),
                     f.log_breakpoints()};
  LogIntegrand upper{integrand, base.shifted(std::max(s, s_center) + 1.0),
                     Interval{std::log(b), kInf}.intersect(f.log_support()),
                     f.log_breakpoints()};
  IntegralResult lo = integrate_log_integrand(lower, cfg);
  IntegralResult hi = integrate_log_integrand(upper, cfg);
  return {lo.value + hi.value, lo.error_estimate + hi.error_estimate,
          lo.evaluations + hi.evaluations, lo.converged && hi.converged,
          lo.truncation_bound + hi.truncation_bound};
}

}  // namespace mellin
