#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mellin {

/// Truncated Taylor series c_0 + c_1 h + ... + c_n h^n of a function about a point.
///
/// Arithmetic propagates all coefficients exactly (up to rounding), so the
/// k-th derivative k! c_k is free of the cancellation that plagues finite
/// differences at high order.
class Jet {
 public:
  static constexpr int kCapacity = 17;

  explicit Jet(int order = 0, double value = 0.0) : n_(order) {
    if (order < 0 || order >= kCapacity) throw std::out_of_range("jet order out of range");
    c_.fill(0.0);
    c_[0] = value;
  }

  static Jet variable(double x, int order) {
    Jet j(order, x);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }
  static Jet constant(double v, int order) { return Jet(order, v); }

  [[nodiscard]] int order() const { return n_; }
  [[nodiscard]] double value() const { return c_[0]; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }

  [[nodiscard]] double derivative(int k) const {
    if (k > n_) throw std::out_of_range("jet derivative above truncation order");
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * c_[k];
  }

  Jet operator-() const {
    Jet r = *this;
    for (int k = 0; k <= n_; ++k) r.c_[k] = -c_[k];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= n_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= n_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator*=(double v) {
    for (int k = 0; k <= n_; ++k) c_[k] *= v;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a += -b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a *= 1.0 / b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = std::min(a.n_, b.n_);
    Jet r(n);
    for (int k = 0; k <= n; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    const int n = std::min(a.n_, b.n_);
    Jet q(n);
    for (int k = 0; k <= n; ++k) {
      double s = a.c_[k];
      for (int i = 1; i <= k; ++i) s -= b.c_[i] * q.c_[k - i];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }
  friend Jet operator/(double a, const Jet& b) { return Jet(b.n_, a) / b; }

  friend Jet exp(const Jet& a) {
    Jet e(a.n_, std::exp(a.c_[0]));
    for (int k = 1; k <= a.n_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * e.c_[k - j];
      e.c_[k] = s / k;
    }
    return e;
  }

  friend Jet log(const Jet& a) {
    Jet l(a.n_, std::log(a.c_[0]));
    for (int k = 1; k <= a.n_; ++k) {
      double s = 0.0;
      for (int j = 1; j < k; ++j) s += j * l.c_[j] * a.c_[k - j];
      l.c_[k] = (a.c_[k] - s / k) / a.c_[0];
    }
    return l;
  }

  friend Jet pow(const Jet& a, double r) {
    Jet p(a.n_, std::pow(a.c_[0], r));
    for (int k = 1; k <= a.n_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += (r * j - (k - j)) * a.c_[j] * p.c_[k - j];
      p.c_[k] = s / (k * a.c_[0]);
    }
    return p;
  }

  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet(a.n_, std::sin(a.c_[0]));
    c = Jet(a.n_, std::cos(a.c_[0]));
    for (int k = 1; k <= a.n_; ++k) {
      double ss = 0.0, cc = 0.0;
      for (int j = 1; j <= k; ++j) {
        ss += j * a.c_[j] * c.c_[k - j];
        cc += j * a.c_[j] * s.c_[k - j];
      }
      s.c_[k] = ss / k;
      c.c_[k] = -cc / k;
    }
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }

 private:
  int n_;
  std::array<double, kCapacity> c_{};
};

}  // namespace mellin
