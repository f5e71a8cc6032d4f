#pragma once

// Self-checks bundled with the library: closed-form cases, the Freud
// identity residual and the cross-validation against the Stieltjes oracle.

#include <cstddef>
#include <string>
#include <vector>

#include "freudrec/weights.hpp"

namespace freudrec {

/// Agreement between the Freud pipeline (quadrature for a~_1^2, forward
/// recurrence, contraction) and the discretized-measure oracle.
struct OracleComparison {
  WeightParams params;
  std::size_t n_max = 0;
  double max_rel_error_a = 0.0;  // max_n |a_n - a_n^oracle| / a_n^oracle
  double max_rel_error_b = 0.0;  // max_n |b_n - b_n^oracle| / max(|b_n^oracle|, kBFloor)
  double a1_sq_error = 0.0;      // |a~_1^2 - (1 + b_0^oracle) / 2|
  double max_eq5_residual = 0.0; // max_n |residual_eq5(n)| / max(1, n) over the run
};

/// Relative errors on b_n are taken against max(|b_n|, kBFloor) so that
/// b_n = 0 (even weights) does not divide by zero.
inline constexpr double kBFloor = 1e-5;

OracleComparison cross_validate(const WeightParams& params, std::size_t n_max = 30);

/// The five-point parameter grid used for cross-validation.
std::vector<WeightParams> cross_validation_grid();

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool grid = false;
  bool inject_perturbation = false;  // test hook: corrupt one coefficient
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace freudrec
