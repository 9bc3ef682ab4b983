#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypcone {

/// Outcome of one randomized identity check.
struct SuiteResult {
  std::string name;
  int count = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Free-form extra value (the Killing constant for "killing").
  double value = 0.0;

  bool passed() const { return count > 0 && max_residual < tolerance; }
};

struct SuiteOptions {
  std::uint64_t seed = 0x5eed'c0de'2024ULL;
  int configurations = 500;
  int log_pairs = 200;
  double tolerance = 1e-9;
  double log_tolerance = 1e-6;
};

/// Two elliptic elements with centres x1, x2: B(L1, L2) = -2 cosh d and
/// [L1, L2] = 2 sinh d L(R), R translating x1 towards x2. Residuals are
/// relative to max(1, 2 cosh d).
SuiteResult suite_elliptic_pairs(const SuiteOptions& options);
/// Two hyperbolic elements: |B(L1, L2)| against the cross-ratio of the
/// endpoints, plus the crossing/disjoint decision.
SuiteResult suite_geodesic_pairs(const SuiteOptions& options);
/// Hyperbolic R and elliptic S: B(L(R), L(S)) = -2 sinh of the signed
/// distance, sign from an independent side test.
SuiteResult suite_mixed_pairs(const SuiteOptions& options);
/// Euclidean fixed points and their distance.
SuiteResult suite_flat_distance(const SuiteOptions& options);
/// Wedge-sum orientation against the cross product test.
SuiteResult suite_flat_orientation(const SuiteOptions& options);
/// First-order coefficient of log(exp(tu) exp(s)) against a Richardson
/// extrapolated numerical matrix logarithm, s elliptic or hyperbolic.
SuiteResult suite_log_perturbation(const SuiteOptions& options, bool elliptic);
/// Tr(ad_X ad_Y) / Tr(XY) on random pairs; value holds the constant and
/// the residual its spread.
SuiteResult suite_killing(const SuiteOptions& options);

std::vector<SuiteResult> run_all_suites(const SuiteOptions& options);

}  // namespace hypcone
