#pragma once

#include <limits>
#include <optional>
#include <vector>

namespace mellin {

/// Closed interval on the extended real line; either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool empty() const { return !(lo < hi); }
  [[nodiscard]] bool contains(double t) const { return lo <= t && t <= hi; }
  [[nodiscard]] Interval intersect(const Interval& o) const;
};

/// One affine bound `intercept + slope * t` on ln|F(t)|.
struct LogLine {
  double intercept;
  double slope;
};

/// Upper bound on ln|F(t)| of the form min_i (c_i + m_i t).
///
/// In log coordinates t = ln x a decay certificate entry |x^a f(x)| <= M
/// becomes the line ln M - a t, so the minimum over all certified a is a
/// concave piecewise-linear envelope.  Concavity is what makes the tail
/// bounds below cheap: beyond any point the envelope stays under its own
/// tangent, so the tail integral is at most e^{L(T)} / |L'(T)|.
///
/// An envelope without lines carries no information (+inf everywhere).
/// The zero envelope bounds a function that vanishes identically.
class LogEnvelope {
 public:
  LogEnvelope() = default;

  static LogEnvelope from_lines(std::vector<LogLine> lines);
  static LogEnvelope zero();

  [[nodiscard]] bool is_zero() const { return zero_; }
  [[nodiscard]] bool is_unbounded() const { return !zero_ && hull_.empty(); }
  [[nodiscard]] const std::vector<LogLine>& lines() const { return hull_; }

  [[nodiscard]] double operator()(double t) const;

  /// Bound for e^{sigma t} F(t).
  [[nodiscard]] LogEnvelope shifted(double sigma) const;
  /// Bound for e^{c} F(t).
  [[nodiscard]] LogEnvelope offset(double c) const;
  /// Bound for F(a - t).
  [[nodiscard]] LogEnvelope reflected(double a) const;
  /// Bound for |F(t)|^r, r > 0.
  [[nodiscard]] LogEnvelope scaled(double r) const;
  /// Bound for the product of two functions.
  [[nodiscard]] LogEnvelope operator+(const LogEnvelope& other) const;

  /// Largest envelope value over [iv.lo, iv.hi].
  [[nodiscard]] double peak(const Interval& iv) const;

  /// Bound on the integral of e^{L} over [t, inf); +inf when L does not decay there.
  [[nodiscard]] double right_tail(double t) const;
  /// Bound on the integral of e^{L} over (-inf, t].
  [[nodiscard]] double left_tail(double t) const;

  /// Exact integral of e^{L} over the real line; +inf unless L decays on both sides.
  [[nodiscard]] double integral() const;

  /// Smallest t with right_tail(t) <= eps, if the envelope decays to the right.
  [[nodiscard]] std::optional<double> upper_cut(double eps) const;
  /// Largest t with left_tail(t) <= eps, if the envelope decays to the left.
  [[nodiscard]] std::optional<double> lower_cut(double eps) const;

  /// { t : L(t) >= level }; ends are infinite where L does not drop below level.
  [[nodiscard]] Interval superlevel(double level) const;

 private:
  explicit LogEnvelope(std::vector<LogLine> hull) : hull_(std::move(hull)) {}

  // Lines of the lower hull ordered by decreasing slope, so that hull_[i]
  // is active on [breaks_[i-1], breaks_[i]].
  std::vector<LogLine> hull_;
  std::vector<double> breaks_;
  bool zero_ = false;

  void build_breaks();
};

}  // namespace mellin
