#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mellin/quadrature.hpp"

namespace mellin {

enum class CheckStatus { pass, fail, skipped };

std::string_view to_string(CheckStatus s);

struct Check {
  std::string name;
  std::string anchor;      ///< the mathematical statement being exercised
  CheckStatus status = CheckStatus::skipped;
  double measured = 0.0;
  std::string relation;    ///< how measured compares to tolerance, e.g. "<", ">="
  double tolerance = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  std::vector<Check> checks;

  [[nodiscard]] std::size_t count(CheckStatus s) const;
  [[nodiscard]] bool any_failed() const { return count(CheckStatus::fail) > 0; }
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_csv() const;
};

struct VerifyOptions {
  QuadratureConfig cfg;
  std::uint64_t seed = 42;
  /// Worker threads for independent checks; 0 picks the hardware count.
  unsigned threads = 0;
};

/// transform, convolution-theorem, algebra, young, special, density,
/// nonnormability, recovery, e-function, truncation, lemma1, metric.
std::vector<std::string> suite_names();

/// Runs one suite, or every suite in the fixed order for "all".  Throws
/// std::invalid_argument for an unknown name.  Identical options give
/// byte-identical reports.
VerificationReport run_verification(std::string_view suite, const VerifyOptions& opts = {});

/// Deterministic uniform stream on [0, 1) for report-recorded randomness.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mellin
