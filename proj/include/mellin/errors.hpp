#pragma once

#include <stdexcept>
#include <string>

namespace mellin {

/// Argument outside the mathematical domain of an operation (x < 0, v <= 0, n < 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A derivative order or other capability above what an oracle was built for.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decay certificate lacks the (alpha, beta) entry an operation needs.
class InsufficientCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampled window leaves more mass outside than the configured budget.
class TailMassExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A functional vanished on the base function used for exponent recovery.
class DegenerateBase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle produced NaN or infinity.
class NonFiniteValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mellin
