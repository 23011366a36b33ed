#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace mellin::detail {

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iterations = 80) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-14 * (1.0 + std::abs(a)); ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// e^{sigma t} * v without spurious overflow when v is tiny.
inline double exp_weight(double sigma, double t, double v) {
  if (v == 0.0) return 0.0;
  const double st = sigma * t;
  if (std::abs(st) < 600.0) return std::exp(st) * v;
  return std::copysign(std::exp(st + std::log(std::abs(v))), v);
}

inline int digit_sum(std::uint64_t l) { return __builtin_popcountll(l); }

inline double parity_sign(std::uint64_t l) { return (digit_sum(l) & 1) ? -1.0 : 1.0; }

/// 2^{k(k+1)/2}
inline double triangular_power(int k) { return std::ldexp(1.0, k * (k + 1) / 2); }

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace mellin::detail
