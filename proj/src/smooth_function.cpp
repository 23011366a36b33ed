#include "mellin/smooth_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "mellin/errors.hpp"
#include "mellin/quadrature.hpp"
#include "numeric_util.hpp"

namespace mellin {

struct SmoothFunction::Impl {
  Parts parts;
  bool zero = false;
  mutable std::mutex moment_mutex;
  mutable std::map<double, std::optional<double>> moments;
};

SmoothFunction::SmoothFunction() {
  Parts p;
  p.label = "zero";
  p.oracle = [](int, double) { return 0.0; };
  p.max_order = kDefaultMaxOrder;
  p.certificate = DecayCertificate::zero(24, kDefaultMaxOrder);
  *this = SmoothFunction(std::move(p));
}

SmoothFunction::SmoothFunction(Parts parts) {
  if (!parts.oracle) throw DomainError("smooth function needs an oracle");
  if (parts.max_order < 0) throw DomainError("max_order must be nonnegative");
  if (parts.support) {
    if (!(parts.support->lo > 0.0) || !(parts.support->lo < parts.support->hi) ||
        !std::isfinite(parts.support->hi)) {
      throw DomainError("support must be a compact interval in (0, inf)");
    }
  }
  std::sort(parts.breakpoints.begin(), parts.breakpoints.end());
  auto impl = std::make_shared<Impl>();
  impl->parts = std::move(parts);
  impl->zero = impl->parts.certificate.certifies_zero();
  impl_ = std::move(impl);
}

double SmoothFunction::derivative(int order, double x) const {
  const Parts& p = impl_->parts;
  if (order < 0 || order > p.max_order) {
    throw CapabilityError("derivative order " + std::to_string(order) + " exceeds " +
                          std::to_string(p.max_order) + " for " + p.label);
  }
  if (!(x > 0.0)) throw DomainError("smooth functions live on (0, inf)");
  if (impl_->zero) return 0.0;
  if (p.support && (x <= p.support->lo || x >= p.support->hi)) return 0.0;
  const double v = p.oracle(order, x);
  if (!std::isfinite(v)) {
    throw NonFiniteValue(p.label + " returned a non-finite value at x = " + std::to_string(x));
  }
  return v;
}

const std::string& SmoothFunction::label() const { return impl_->parts.label; }
int SmoothFunction::max_order() const { return impl_->parts.max_order; }
const DecayCertificate& SmoothFunction::certificate() const { return impl_->parts.certificate; }
const std::optional<Interval>& SmoothFunction::support() const { return impl_->parts.support; }
const std::vector<double>& SmoothFunction::breakpoints() const {
  return impl_->parts.breakpoints;
}

Interval SmoothFunction::log_support() const {
  const auto& s = impl_->parts.support;
  if (!s) return {};
  return {std::log(s->lo), std::log(s->hi)};
}

std::vector<double> SmoothFunction::log_breakpoints() const {
  std::vector<double> out;
  for (double b : impl_->parts.breakpoints) {
    if (b > 0.0) out.push_back(std::log(b));
  }
  return out;
}

bool SmoothFunction::is_zero() const { return impl_->zero; }

LogEnvelope SmoothFunction::log_envelope(int order) const {
  if (impl_->zero) return LogEnvelope::zero();
  return impl_->parts.certificate.envelope(order);
}

std::optional<double> SmoothFunction::abs_moment(double sigma) const {
  if (impl_->zero) return 0.0;
  {
    std::lock_guard lock(impl_->moment_mutex);
    auto it = impl_->moments.find(sigma);
    if (it != impl_->moments.end()) return it->second;
  }
  std::optional<double> result;
  if (impl_->parts.abs_moment) {
    result = impl_->parts.abs_moment(sigma);
  } else {
    const LogEnvelope env = log_envelope(0).shifted(sigma);
    const double analytic = env.integral();
    LogIntegrand in;
    in.fn = [this, sigma](double u) {
      return detail::exp_weight(sigma, u, std::abs(value(std::exp(u))));
    };
    in.envelope = env;
    in.domain = log_support();
    in.breakpoints = log_breakpoints();
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;
    cfg.abs_tol = 0.0;
    try {
      IntegralResult r = integrate_log_integrand(in, cfg);
      result = r.value + r.error_estimate + r.truncation_bound;
    } catch (const ToleranceNotReached&) {
    } catch (const InsufficientCertificate&) {
    }
    if (std::isfinite(analytic) && (!result || analytic < *result)) result = analytic;
  }
  std::lock_guard lock(impl_->moment_mutex);
  impl_->moments.emplace(sigma, result);
  return result;
}

SmoothFunction SmoothFunction::relabeled(std::string label) const {
  Parts p = impl_->parts;
  p.label = std::move(label);
  return SmoothFunction(std::move(p));
}

double richardson_derivative(const std::function<double(double)>& fn, int k, double x,
                             double h) {
  auto central = [&](double step) {
    // k-th central difference sum_{i} (-1)^i C(k, i) f(x + (k/2 - i) step)
    double s = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double sign = (i % 2) ? -1.0 : 1.0;
      s += sign * detail::binomial(k, i) * fn(x + (0.5 * k - i) * step);
    }
    return s / std::pow(step, k);
  };
  if (k == 0) return fn(x);
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

namespace {

CertificateEstimate capped(CertificateEstimate w, int max_order) {
  w.beta_max = std::min(w.beta_max, max_order);
  return w;
}

std::vector<double> support_breaks(const std::optional<Interval>& support,
                                   std::vector<double> breakpoints) {
  if (support) {
    breakpoints.push_back(support->lo);
    breakpoints.push_back(support->hi);
  }
  return breakpoints;
}

}  // namespace

SmoothFunction from_jet(std::string label, JetFunction fn, const CertificateEstimate& window,
                        std::optional<Interval> support, std::vector<double> breakpoints) {
  const int order = std::min(window.beta_max, Jet::kCapacity - 1);
  auto oracle = [fn, order](int k, double x) { return fn(Jet::variable(x, order)).derivative(k); };
  SmoothFunction::Parts p;
  p.label = std::move(label);
  p.oracle = oracle;
  p.max_order = order;
  p.support = support;
  p.breakpoints = support_breaks(support, std::move(breakpoints));
  auto sup_oracle = [oracle, support](int k, double x) {
    if (support && (x <= support->lo || x >= support->hi)) return 0.0;
    return oracle(k, x);
  };
  p.certificate = estimate_certificate(sup_oracle, capped(window, order));
  return SmoothFunction(std::move(p));
}

SmoothFunction from_samples(std::string label, std::function<double(double)> fn,
                            const CertificateEstimate& window, std::optional<Interval> support) {
  const int order = std::min(window.beta_max, 4);
  auto oracle = [fn](int k, double x) {
    // balances the O(h^4) truncation against eps / h^k rounding
    return richardson_derivative(fn, k, x, std::pow(1e-16, 1.0 / (k + 4)) * x);
  };
  SmoothFunction::Parts p;
  p.label = std::move(label);
  p.oracle = oracle;
  p.max_order = order;
  p.support = support;
  p.breakpoints = support_breaks(support, {});
  auto sup_oracle = [oracle, support](int k, double x) {
    if (support && (x <= support->lo || x >= support->hi)) return 0.0;
    return oracle(k, x);
  };
  p.certificate = estimate_certificate(sup_oracle, capped(window, order));
  return SmoothFunction(std::move(p));
}

SmoothFunction compose(std::string label, JetFunction outer, const SmoothFunction& inner,
                       const CertificateEstimate& window) {
  const int order = std::min({window.beta_max, inner.max_order(), Jet::kCapacity - 1});
  auto oracle = [outer, inner, order](int k, double x) {
    Jet j(order, inner.value(x));
    double fact = 1.0;
    for (int i = 1; i <= order; ++i) {
      fact *= i;
      j[i] = inner.derivative(i, x) / fact;
    }
    return outer(j).derivative(k);
  };
  SmoothFunction::Parts p;
  p.label = std::move(label);
  p.oracle = oracle;
  p.max_order = order;
  p.certificate = estimate_certificate(oracle, capped(window, order));
  return SmoothFunction(std::move(p));
}

}  // namespace mellin
