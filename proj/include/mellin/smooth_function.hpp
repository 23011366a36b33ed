#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mellin/certificate.hpp"
#include "mellin/envelope.hpp"
#include "mellin/jet.hpp"

namespace mellin {

inline constexpr int kDefaultMaxOrder = 8;

/// A smooth rapidly decreasing function on (0, inf), given by oracles.
///
/// `derivative(k, x)` returns f^(k)(x) for k <= max_order().  The certificate
/// bounds |x^a f^(b)| and drives every truncation decision downstream.  When
/// a compact support [l, r] is declared, evaluation outside it returns an
/// exact zero without consulting the oracle.  Breakpoints are interior points
/// where the function is smooth but not analytic; quadrature splits there.
///
/// Instances are immutable and cheap to copy.
class SmoothFunction {
 public:
  using Oracle = std::function<double(int order, double x)>;
  using MomentBound = std::function<std::optional<double>(double sigma)>;

  struct Parts {
    std::string label;
    Oracle oracle;
    int max_order = kDefaultMaxOrder;
    DecayCertificate certificate;
    std::optional<Interval> support;
    std::vector<double> breakpoints;
    /// Optional upper bound on the integral of y^{sigma-1}|f(y)|; computed
    /// by quadrature when absent.
    MomentBound abs_moment;
  };

  SmoothFunction();  ///< the zero function
  explicit SmoothFunction(Parts parts);

  [[nodiscard]] double operator()(double x) const { return derivative(0, x); }
  [[nodiscard]] double value(double x) const { return derivative(0, x); }
  /// Throws DomainError for x <= 0, CapabilityError above max_order and
  /// NonFiniteValue when the oracle misbehaves.
  [[nodiscard]] double derivative(int order, double x) const;

  [[nodiscard]] const std::string& label() const;
  [[nodiscard]] int max_order() const;
  [[nodiscard]] const DecayCertificate& certificate() const;
  [[nodiscard]] const std::optional<Interval>& support() const;
  [[nodiscard]] const std::vector<double>& breakpoints() const;
  /// Support in t = ln x, or the whole line.
  [[nodiscard]] Interval log_support() const;
  /// Breakpoints in t = ln x, support ends included.
  [[nodiscard]] std::vector<double> log_breakpoints() const;

  /// True when the certificate proves f = 0.
  [[nodiscard]] bool is_zero() const;

  /// Bound on ln|f^(order)(e^t)| from the certificate.
  [[nodiscard]] LogEnvelope log_envelope(int order) const;

  /// Upper bound on the integral of y^{sigma-1}|f(y)| dy, if the certificate
  /// makes it finite.  Results are cached.
  [[nodiscard]] std::optional<double> abs_moment(double sigma) const;

  [[nodiscard]] SmoothFunction relabeled(std::string label) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Function of a single jet variable, used to build user functions.
using JetFunction = std::function<Jet(const Jet&)>;

/// User function whose derivatives come from Taylor-mode propagation.
/// The certificate is estimated numerically over `window`.
SmoothFunction from_jet(std::string label, JetFunction fn, const CertificateEstimate& window,
                        std::optional<Interval> support = std::nullopt,
                        std::vector<double> breakpoints = {});

/// User function known only by values; derivatives by Richardson-extrapolated
/// central differences.  The order is capped at 4.
SmoothFunction from_samples(std::string label, std::function<double(double)> fn,
                            const CertificateEstimate& window,
                            std::optional<Interval> support = std::nullopt);

/// outer(inner(x)) with derivatives by Faa di Bruno through jets.
SmoothFunction compose(std::string label, JetFunction outer, const SmoothFunction& inner,
                       const CertificateEstimate& window);

/// Central-difference derivative of order k (k <= 4) with one Richardson step.
double richardson_derivative(const std::function<double(double)>& fn, int k, double x,
                             double h);

}  // namespace mellin
