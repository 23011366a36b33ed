#include "mellin/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace mellin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double crossing(const LogLine& a, const LogLine& b) {
  return (b.intercept - a.intercept) / (a.slope - b.slope);
}

}  // namespace

Interval Interval::intersect(const Interval& o) const {
  return {std::max(lo, o.lo), std::min(hi, o.hi)};
}

LogEnvelope LogEnvelope::zero() {
  LogEnvelope e;
  e.zero_ = true;
  return e;
}

LogEnvelope LogEnvelope::from_lines(std::vector<LogLine> lines) {
  std::vector<LogLine> finite;
  for (const auto& l : lines) {
    if (l.intercept == -kInf) return zero();
    if (std::isfinite(l.intercept) && std::isfinite(l.slope)) finite.push_back(l);
  }
  std::sort(finite.begin(), finite.end(), [](const LogLine& a, const LogLine& b) {
    if (a.slope != b.slope) return a.slope > b.slope;
    return a.intercept < b.intercept;
  });
  std::vector<LogLine> hull;
  for (const auto& l : finite) {
    if (!hull.empty() && hull.back().slope == l.slope) continue;
    while (hull.size() >= 2 &&
           crossing(hull[hull.size() - 2], hull.back()) >= crossing(hull.back(), l)) {
      hull.pop_back();
    }
    hull.push_back(l);
  }
  LogEnvelope e(std::move(hull));
  e.build_breaks();
  return e;
}

void LogEnvelope::build_breaks() {
  breaks_.clear();
  for (std::size_t i = 0; i + 1 < hull_.size(); ++i) {
    breaks_.push_back(crossing(hull_[i], hull_[i + 1]));
  }
}

double LogEnvelope::operator()(double t) const {
  if (zero_) return -kInf;
  double v = kInf;
  for (const auto& l : hull_) v = std::min(v, l.intercept + l.slope * t);
  return v;
}

LogEnvelope LogEnvelope::shifted(double sigma) const {
  if (zero_) return zero();
  std::vector<LogLine> out = hull_;
  for (auto& l : out) l.slope += sigma;
  return from_lines(std::move(out));
}

LogEnvelope LogEnvelope::offset(double c) const {
  if (zero_) return zero();
  std::vector<LogLine> out = hull_;
  for (auto& l : out) l.intercept += c;
  return from_lines(std::move(out));
}

LogEnvelope LogEnvelope::reflected(double a) const {
  if (zero_) return zero();
  std::vector<LogLine> out;
  for (const auto& l : hull_) out.push_back({l.intercept + l.slope * a, -l.slope});
  return from_lines(std::move(out));
}

LogEnvelope LogEnvelope::scaled(double r) const {
  if (zero_) return zero();
  std::vector<LogLine> out = hull_;
  for (auto& l : out) {
    l.intercept *= r;
    l.slope *= r;
  }
  return from_lines(std::move(out));
}

LogEnvelope LogEnvelope::operator+(const LogEnvelope& other) const {
  if (zero_ || other.zero_) return zero();
  // The minimum of pairwise sums equals the sum of minima; the hull pass
  // discards the pairs that never become active.
  std::vector<LogLine> out;
  out.reserve(hull_.size() * other.hull_.size());
  for (const auto& a : hull_) {
    for (const auto& b : other.hull_) {
      out.push_back({a.intercept + b.intercept, a.slope + b.slope});
    }
  }
  return from_lines(std::move(out));
}

double LogEnvelope::peak(const Interval& iv) const {
  if (zero_) return -kInf;
  if (hull_.empty()) return kInf;
  double best = std::max((*this)(iv.lo), (*this)(iv.hi));
  if (std::isnan(best)) best = -kInf;
  for (double b : breaks_) {
    if (iv.contains(b)) best = std::max(best, (*this)(b));
  }
  return best;
}

double LogEnvelope::right_tail(double t) const {
  if (zero_) return 0.0;
  if (hull_.empty()) return kInf;
  // Active line at t: the first whose right break is beyond t.
  std::size_t i = 0;
  while (i < breaks_.size() && breaks_[i] <= t) ++i;
  const double m = hull_[i].slope;
  if (m >= 0.0) return kInf;
  return std::exp(hull_[i].intercept + m * t) / -m;
}

double LogEnvelope::left_tail(double t) const {
  if (zero_) return 0.0;
  return reflected(0.0).right_tail(-t);
}

double LogEnvelope::integral() const {
  if (zero_) return 0.0;
  if (hull_.empty() || hull_.front().slope <= 0.0 || hull_.back().slope >= 0.0) return kInf;
  double total = 0.0;
  for (std::size_t i = 0; i < hull_.size(); ++i) {
    const auto& l = hull_[i];
    const double start = i == 0 ? -kInf : breaks_[i - 1];
    const double end = i < breaks_.size() ? breaks_[i] : kInf;
    if (l.slope == 0.0) {
      total += (end - start) * std::exp(l.intercept);
    } else {
      total += (std::exp(l.intercept + l.slope * end) - std::exp(l.intercept + l.slope * start)) /
               l.slope;
    }
  }
  return total;
}

std::optional<double> LogEnvelope::upper_cut(double eps) const {
  if (zero_) return -kInf;
  if (hull_.empty()) return std::nullopt;
  const double target = std::log(eps);
  for (std::size_t i = 0; i < hull_.size(); ++i) {
    const double m = hull_[i].slope;
    if (m >= 0.0) continue;
    const double start = i == 0 ? -kInf : breaks_[i - 1];
    const double end = i < breaks_.size() ? breaks_[i] : kInf;
    // e^{c + m T} / |m| = eps  =>  T = (ln(eps |m|) - c) / m
    const double t_star = (target + std::log(-m) - hull_[i].intercept) / m;
    if (t_star <= end) return std::max(t_star, start);
  }
  return std::nullopt;
}

std::optional<double> LogEnvelope::lower_cut(double eps) const {
  if (zero_) return kInf;
  auto cut = reflected(0.0).upper_cut(eps);
  if (!cut) return std::nullopt;
  return -*cut;
}

Interval LogEnvelope::superlevel(double level) const {
  if (zero_) return Interval{0.0, -1.0};
  Interval out;
  for (const auto& l : hull_) {
    if (l.slope > 0.0) {
      out.lo = std::max(out.lo, (level - l.intercept) / l.slope);
    } else if (l.slope < 0.0) {
      out.hi = std::min(out.hi, (level - l.intercept) / l.slope);
    } else if (l.intercept < level) {
      return Interval{0.0, -1.0};
    }
  }
  return out;
}

}  // namespace mellin
