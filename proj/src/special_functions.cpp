#include "mellin/special_functions.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "mellin/errors.hpp"
#include "numeric_util.hpp"

namespace mellin {

namespace {

// theta is the distribution function of X = sum_k 2^-k U_k with U_k
// independent uniform on [0,1].  On the mesh 2^-n it is a combination of
// shifted copies of P_n(q) = E[(q - X)^n] / n!, a polynomial with rational
// coefficients obtained from the moments of X:
//   theta(j / 2^n) = 2^{-n(n-1)/2} sum_{l < j} (-1)^{s(l)} P_n(j - l).
class ExactTable {
 public:
  explicit ExactTable(int n) : n_(n) {
    std::vector<mpq_class> m(n + 1);
    m[0] = 1;
    for (int k = 1; k <= n; ++k) {
      // m_k (1 - 2^-k) = 2^-k sum_{j>=1} C(k,j) m_{k-j} / (j+1)
      mpq_class s = 0;
      mpz_class c = 1;
      for (int j = 1; j <= k; ++j) {
        c = c * (k - j + 1) / j;
        s += mpq_class(c) * m[k - j] / (j + 1);
      }
      mpz_class pow2 = mpz_class(1) << k;
      m[k] = s / mpq_class(pow2 - 1);
      m[k].canonicalize();
    }
    // P_n(q) = sum_i C(n,i) (-1)^i m_i q^{n-i} / n!
    mpz_class fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::vector<mpq_class> coeff(n + 1);  // coefficient of q^{n-i}
    mpz_class c = 1;
    for (int i = 0; i <= n; ++i) {
      if (i > 0) c = c * (n - i + 1) / i;
      coeff[i] = mpq_class(c) * m[i] / mpq_class(fact);
      if (i % 2) coeff[i] = -coeff[i];
      coeff[i].canonicalize();
    }
    scale_ = 1;
    for (const auto& q : coeff) mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), q.get_den_mpz_t());
    int_coeff_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      mpq_class v = coeff[i] * mpq_class(scale_);
      int_coeff_[i] = v.get_num() / v.get_den();
    }
    scale_ <<= n * (n - 1) / 2;
  }

  // Integer numerator N_j with theta(j / 2^n) = N_j / scale().
  std::vector<mpz_class> numerators(std::uint64_t upto) const {
    std::vector<mpz_class> p(upto + 1);
    for (std::uint64_t q = 0; q <= upto; ++q) {
      mpz_class acc = 0;
      for (const auto& a : int_coeff_) acc = acc * q + a;
      p[q] = acc;
    }
    std::vector<mpz_class> out(upto + 1);
    for (std::uint64_t j = 0; j <= upto; ++j) {
      mpz_class acc = 0;
      for (std::uint64_t l = 0; l < j; ++l) {
        if (detail::digit_sum(l) & 1) {
          acc -= p[j - l];
        } else {
          acc += p[j - l];
        }
      }
      out[j] = acc;
    }
    return out;
  }

  const mpz_class& scale() const { return scale_; }

 private:
  int n_;
  mpz_class scale_;
  std::vector<mpz_class> int_coeff_;
};

double round_to_double(const mpq_class& v) {
  const double d = v.get_d();
  const double up = std::nextafter(d, v > 0 ? HUGE_VAL : -HUGE_VAL);
  mpq_class lo_err = abs(v - mpq_class(d));
  mpq_class hi_err = abs(mpq_class(up) - v);
  return hi_err < lo_err ? up : d;
}

// theta(j / 2^n) for 0 <= j <= 2^n as exact fractions.
std::vector<mpq_class> exact_table(int n) {
  const std::uint64_t top = std::uint64_t{1} << n;
  const std::uint64_t half = top / 2;
  ExactTable t(n);
  std::vector<mpz_class> num = t.numerators(half);
  std::vector<mpq_class> out(top + 1);
  for (std::uint64_t j = 0; j <= half; ++j) {
    out[j] = mpq_class(num[j], t.scale());
    out[j].canonicalize();
  }
  for (std::uint64_t j = half + 1; j <= top; ++j) out[j] = 1 - out[top - j];
  return out;
}

// sum_{l < L} (-1)^{s(l)}
double thue_morse_prefix(std::uint64_t L) {
  if (L % 2 == 0) return 0.0;
  return detail::parity_sign(L - 1);
}

void check_order(int k, int max_order) {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  if (k > max_order) {
    throw CapabilityError("derivative order " + std::to_string(k) + " exceeds configured maximum " +
                          std::to_string(max_order));
  }
}

}  // namespace

int digit_sum(std::uint64_t l) { return detail::digit_sum(l); }

std::string fabius_exact(std::uint64_t j, int n) {
  if (n < 0 || n > 20) throw DomainError("fabius_exact supports 0 <= n <= 20");
  const std::uint64_t top = std::uint64_t{1} << n;
  if (j > top) throw DomainError("fabius_exact argument outside [0, 1]");
  if (n == 0) return j == 0 ? "0" : "1";
  const bool mirrored = j > top / 2;
  const std::uint64_t jj = mirrored ? top - j : j;
  ExactTable t(n);
  mpz_class num = t.numerators(jj).back();
  mpq_class v(num, t.scale());
  v.canonicalize();
  if (mirrored) v = 1 - v;
  return v.get_str();
}

DyadicSpline::DyadicSpline(int depth) : depth_(depth) {
  if (depth < 1 || depth > kMaxFabiusDepth) {
    throw DomainError("spline depth must lie in [1, " + std::to_string(kMaxFabiusDepth) + "]");
  }
  const int fine_level = depth + 1;
  const std::vector<mpq_class> exact = exact_table(fine_level);
  fine_.resize(exact.size());
  for (std::size_t j = 0; j < exact.size(); ++j) fine_[j] = round_to_double(exact[j]);
  knots_.resize(pieces() + 1);
  for (std::size_t k = 0; k <= pieces(); ++k) knots_[k] = fine_[2 * k];

  // Degree from the Lagrange remainder 2^{C(K+2,2)} r^{K+1} / (K+1)!, r = 2^-(depth+1).
  degree_ = 1;
  error_bound_ = HUGE_VAL;
  for (int K = 1; K <= 24; ++K) {
    double log2_fact = 0.0;
    for (int i = 2; i <= K + 1; ++i) log2_fact += std::log2(i);
    const double log2_bound = (K + 1) * (K + 2) / 2.0 - fine_level * (K + 1.0) - log2_fact;
    if (std::exp2(log2_bound) < error_bound_) {
      error_bound_ = std::exp2(log2_bound);
      degree_ = K;
    }
    if (log2_bound < -60.0) break;
  }

  const std::uint64_t fine_top = std::uint64_t{1} << fine_level;
  coeffs_.assign(pieces() * (degree_ + 1), 0.0);
  for (std::size_t i = 0; i < pieces(); ++i) {
    double fact = 1.0;
    for (int k = 0; k <= degree_; ++k) {
      if (k > 0) fact *= k;
      // 2^k c in units of 2^-fine_level, c = (2i+1) 2^-fine_level
      const std::uint64_t y = (2 * i + 1) << k;
      const std::uint64_t L = y >> fine_level;
      const std::uint64_t frac = y & (fine_top - 1);
      double d;
      if (k == 0) {
        d = fine_[2 * i + 1];
      } else {
        const std::uint64_t top = std::uint64_t{1} << k;
        double s = thue_morse_prefix(std::min(L, top));
        if (L < top) s += detail::parity_sign(L) * fine_[frac];
        d = detail::triangular_power(k) * s;
      }
      coeffs_[i * (degree_ + 1) + k] = d / fact;
    }
  }
}

std::vector<double> DyadicSpline::coefficients(std::size_t k) const {
  auto first = coeffs_.begin() + static_cast<std::ptrdiff_t>(k * (degree_ + 1));
  return {first, first + degree_ + 1};
}

std::size_t DyadicSpline::cell(double x) const {
  const double y = std::ldexp(x, depth_);
  const auto k = static_cast<std::size_t>(std::max(0.0, std::floor(y)));
  return std::min(k, pieces() - 1);
}

double DyadicSpline::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Fabius spline evaluated outside [0, 1]");
  const double y = std::ldexp(x, depth_);
  if (y == std::floor(y)) return knots_[static_cast<std::size_t>(y)];
  const std::size_t k = cell(x);
  const double h = x - std::ldexp(2.0 * k + 1.0, -(depth_ + 1));
  const double* c = &coeffs_[k * (degree_ + 1)];
  double acc = c[degree_];
  for (int i = degree_ - 1; i >= 0; --i) acc = acc * h + c[i];
  return acc;
}

double DyadicSpline::piece_derivative(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Fabius spline evaluated outside [0, 1]");
  const std::size_t k = cell(x);
  const double h = x - std::ldexp(2.0 * k + 1.0, -(depth_ + 1));
  const double* c = &coeffs_[k * (degree_ + 1)];
  double acc = degree_ * c[degree_];
  for (int i = degree_ - 1; i >= 1; --i) acc = acc * h + i * c[i];
  return acc;
}

double DyadicSpline::continuity_defect() const {
  double worst = 0.0;
  const double half = std::ldexp(1.0, -(depth_ + 1));
  for (std::size_t k = 0; k + 1 < pieces(); ++k) {
    const double* a = &coeffs_[k * (degree_ + 1)];
    const double* b = &coeffs_[(k + 1) * (degree_ + 1)];
    double left = a[degree_], right = b[degree_];
    for (int i = degree_ - 1; i >= 0; --i) {
      left = left * half + a[i];
      right = right * -half + b[i];
    }
    worst = std::max(worst, std::abs(left - right));
  }
  return worst;
}

const DyadicSpline& fabius_spline(int depth) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<DyadicSpline>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[depth];
  if (!slot) slot = std::make_unique<DyadicSpline>(depth);
  return *slot;
}

double fabius(double x, int depth) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Fabius function is defined on [0, 1]");
  return fabius_spline(depth)(x);
}

double fabius_extended(double x, int depth) {
  if (std::isnan(x)) throw DomainError("Fabius function evaluated at NaN");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return fabius_spline(depth)(x);
}

double fabius_derivative(double x, int k, int depth, int max_order) {
  check_order(k, max_order);
  if (k == 0) return fabius_extended(x, depth);
  if (std::isnan(x)) throw DomainError("Fabius derivative evaluated at NaN");
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double y = std::ldexp(x, k);
  const double L = std::floor(y);
  const auto l = static_cast<std::uint64_t>(L);
  const double s = thue_morse_prefix(l) + detail::parity_sign(l) * fabius_spline(depth)(y - L);
  return detail::triangular_power(k) * s;
}

double eta(double t) { return fabius_extended(1.0 - std::abs(t)); }

double eta_derivative_digit_sum(double t, int k, int offset) {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  if (k == 0) return eta(t);
  const double scale = std::ldexp(1.0, k);
  const std::uint64_t top = std::uint64_t{1} << k;
  double s = 0.0;
  for (std::uint64_t l = 0; l <= top; ++l) {
    const double arg = scale * t + scale - 2.0 * static_cast<double>(l) + offset;
    s += detail::parity_sign(l) * eta(arg);
  }
  return detail::triangular_power(k) * s;
}

double eta_derivative(double t, int k, int max_order) {
  check_order(k, max_order);
  return eta_derivative_digit_sum(t, k, -1);
}

double eta_derivative_reflected(double t, int k, int max_order) {
  check_order(k, max_order);
  if (t <= 0.0) return fabius_derivative(1.0 + t, k, kDefaultFabiusDepth, max_order);
  const double sign = (k % 2) ? -1.0 : 1.0;
  return sign * fabius_derivative(1.0 - t, k, kDefaultFabiusDepth, max_order);
}

ExtremalPoint eta_extremal_check(int k) {
  if (k < 1) throw DomainError("extremal check needs k >= 1");
  double t = -0.5;
  for (int i = 1; i < k; ++i) t = 2.0 * t + 1.0;
  return {t, eta_derivative_digit_sum(t, k, -1), detail::triangular_power(k)};
}

ExtremalPoint eta_peak_point(int k) {
  if (k < 1) throw DomainError("peak point needs k >= 1");
  double t = -0.5;
  for (int i = 1; i < k; ++i) t = (t - 1.0) / 2.0;
  return {t, eta_derivative_digit_sum(t, k, -1), detail::triangular_power(k)};
}

CutoffFunction::CutoffFunction(int n, int max_order) : n_(n), max_order_(max_order) {
  if (n < 2) throw DomainError("cutoff index n must be >= 2");
}

double CutoffFunction::derivative(int k, double x) const {
  check_order(k, max_order_);
  const double n = n_;
  // Left rise theta(nx - 1) and right fall theta(n + 1 - x); the extended
  // theta supplies the plateau and the zero tails.
  if (x <= 0.5 * (2.0 / n + n)) {
    return std::pow(n, k) * fabius_derivative(n * x - 1.0, k, kDefaultFabiusDepth, max_order_);
  }
  const double sign = (k % 2) ? -1.0 : 1.0;
  return sign * fabius_derivative(n + 1.0 - x, k, kDefaultFabiusDepth, max_order_);
}

Interval CutoffFunction::support() const { return {1.0 / n_, n_ + 1.0}; }
Interval CutoffFunction::plateau() const { return {2.0 / n_, static_cast<double>(n_)}; }

double CutoffFunction::derivative_bound(int k) const {
  if (k == 0) return 1.0;
  return std::pow(static_cast<double>(n_), k) * detail::triangular_power(k);
}

CutoffFunction cutoff(int n) { return CutoffFunction(n); }

}  // namespace mellin
