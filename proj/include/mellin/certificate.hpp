#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mellin/envelope.hpp"

namespace mellin {

/// Index (alpha, beta) of the seminorm sup |x^alpha f^(beta)(x)|.
struct SeminormIndex {
  int alpha = 0;
  int beta = 0;

  friend bool operator==(const SeminormIndex&, const SeminormIndex&) = default;
};

/// Finite table of bounds M with |x^alpha f^(beta)(x)| <= M on (0, inf).
///
/// A stored zero means the derivative vanishes identically; that is how
/// the zero function announces itself to the rest of the library.
class DecayCertificate {
 public:
  void set(int alpha, int beta, double bound);
  [[nodiscard]] std::optional<double> get(int alpha, int beta) const;
  /// Throws InsufficientCertificate when the entry is missing.
  [[nodiscard]] double at(int alpha, int beta) const;
  [[nodiscard]] bool contains(int alpha, int beta) const { return get(alpha, beta).has_value(); }

  /// True when M_{0,0} = 0 is certified.
  [[nodiscard]] bool certifies_zero() const;

  /// Envelope of ln|f^(beta)(e^t)| built from every alpha stored for beta.
  [[nodiscard]] LogEnvelope envelope(int beta) const;

  [[nodiscard]] const std::map<std::pair<int, int>, double>& entries() const { return bounds_; }
  [[nodiscard]] std::vector<int> alphas(int beta) const;
  [[nodiscard]] int max_beta() const;

  /// Certificate with every entry of a zero function over the given ranges.
  static DecayCertificate zero(int alpha_max, int beta_max);

 private:
  std::map<std::pair<int, int>, double> bounds_;
};

/// Options for numerical certificate estimation.
struct CertificateEstimate {
  int alpha_max = 24;
  int beta_max = 8;
  double t_lo = -40.0;  ///< window in t = ln x that carries all relevant mass
  double t_hi = 40.0;
  int grid = 4096;
  double safety = 0.05;  ///< relative inflation of every observed sup
};

/// Grid-plus-refinement estimate of M_{alpha,beta} for |alpha| <= alpha_max,
/// beta <= beta_max.  `derivative(beta, x)` must be exact to near machine
/// precision; the result is then inflated by `safety`.
DecayCertificate estimate_certificate(const std::function<double(int, double)>& derivative,
                                      const CertificateEstimate& opts);

}  // namespace mellin
