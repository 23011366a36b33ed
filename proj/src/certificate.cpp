#include "mellin/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mellin/errors.hpp"
#include "numeric_util.hpp"

namespace mellin {

void DecayCertificate::set(int alpha, int beta, double bound) {
  if (beta < 0) throw DomainError("certificate order must be nonnegative");
  if (!(bound >= 0.0)) throw DomainError("certificate bound must be nonnegative");
  bounds_[{alpha, beta}] = bound;
}

std::optional<double> DecayCertificate::get(int alpha, int beta) const {
  auto it = bounds_.find({alpha, beta});
  if (it == bounds_.end()) return std::nullopt;
  return it->second;
}

double DecayCertificate::at(int alpha, int beta) const {
  auto v = get(alpha, beta);
  if (!v) {
    throw InsufficientCertificate("no certificate entry for (alpha, beta) = (" +
                                  std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
  return *v;
}

bool DecayCertificate::certifies_zero() const {
  auto v = get(0, 0);
  return v && *v == 0.0;
}

LogEnvelope DecayCertificate::envelope(int beta) const {
  std::vector<LogLine> lines;
  for (const auto& [key, m] : bounds_) {
    if (key.second != beta) continue;
    if (m == 0.0) return LogEnvelope::zero();
    lines.push_back({std::log(m), -static_cast<double>(key.first)});
  }
  return LogEnvelope::from_lines(std::move(lines));
}

std::vector<int> DecayCertificate::alphas(int beta) const {
  std::vector<int> out;
  for (const auto& [key, m] : bounds_) {
    if (key.second == beta) out.push_back(key.first);
  }
  return out;
}

int DecayCertificate::max_beta() const {
  int b = -1;
  for (const auto& [key, m] : bounds_) b = std::max(b, key.second);
  return b;
}

DecayCertificate DecayCertificate::zero(int alpha_max, int beta_max) {
  DecayCertificate c;
  for (int b = 0; b <= beta_max; ++b) {
    for (int a = -alpha_max; a <= alpha_max; ++a) c.set(a, b, 0.0);
  }
  return c;
}

DecayCertificate estimate_certificate(const std::function<double(int, double)>& derivative,
                                      const CertificateEstimate& opts) {
  DecayCertificate cert;
  const int n = std::max(opts.grid, 16);
  const double dt = (opts.t_hi - opts.t_lo) / (n - 1);
  std::vector<double> ts(n);
  std::vector<double> logs(n);
  for (int b = 0; b <= opts.beta_max; ++b) {
    auto log_abs = [&](double t) {
      const double v = std::abs(derivative(b, std::exp(t)));
      return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    };
    for (int i = 0; i < n; ++i) {
      ts[i] = opts.t_lo + dt * i;
      logs[i] = log_abs(ts[i]);
    }
    for (int a = -opts.alpha_max; a <= opts.alpha_max; ++a) {
      int best = 0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double v = logs[i] + a * ts[i];
        if (v > best_v) {
          best_v = v;
          best = i;
        }
      }
      if (best_v == -std::numeric_limits<double>::infinity()) {
        cert.set(a, b, 0.0);
        continue;
      }
      const double lo = ts[std::max(best - 1, 0)];
      const double hi = ts[std::min(best + 1, n - 1)];
      auto [t_max, v_max] = detail::golden_max([&](double t) { return log_abs(t) + a * t; }, lo, hi);
      (void)t_max;
      const double peak = std::max(best_v, v_max);
      cert.set(a, b, std::exp(peak) * (1.0 + opts.safety));
    }
  }
  return cert;
}

}  // namespace mellin
