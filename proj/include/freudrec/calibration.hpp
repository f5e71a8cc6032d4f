#pragma once

// Links the free starting value a~_1^2 of the recurrence to the weight.
//
// Forward: a~_1^2 = mu~_2 / mu~_0, the ratio of the first even moments of
// w~, evaluated by tanh-sinh quadrature.
// Backward: the centered sum sum_{k<n} a~_k^2 - n/4 converges to
// xi = -(alpha - beta + gamma x0 + 2 lambda sin theta0) / 4, so a computed
// tail gives lambda, and bisection on a~_1^2 reaches a requested lambda.

#include <cstddef>

#include "freudrec/freud_recurrence.hpp"
#include "freudrec/weights.hpp"

namespace freudrec {

struct QuadratureSpec {
  double target_rel_error = 1e-13;  // must be >= 1e-14
  std::size_t max_levels = 15;
};

/// mu~_power = int_{-1}^{1} x^power w~(x) dx for power in {0, 2}.
double moment(const WeightParams& params, int power, const QuadratureSpec& spec = {});

/// mu~_2 / mu~_0.
double a1_sq_from_weights(const WeightParams& params, const QuadratureSpec& spec = {});

inline constexpr double kDefaultWindowFraction = 0.5;

/// Limits of both centered sums estimated from the tail n in [(1-w) N, N].
struct LimitEstimate {
  double xi = 0.0;
  double eta = 0.0;
  double lambda = 0.0;  // lambda implied by xi; 0 when sin(theta0) ~ 0
};

/// Two-stage tail fit: window mean first, then least squares against
/// {1, (-1)^n/n, cos(psi_n)/n, sin(psi_n)/n}, psi_n = n theta0 - 2 lambda log n,
/// repeated once with the lambda implied by the refined xi.
/// Needs N >= 1000.
LimitEstimate estimate_limits(const CoeffSequence& seq, double window_fraction = kDefaultWindowFraction);

double xi_estimate(const CoeffSequence& seq, double window_fraction = kDefaultWindowFraction);
double eta_estimate(const CoeffSequence& seq, double window_fraction = kDefaultWindowFraction);

/// lambda = -(4 xi + alpha - beta + gamma x0) / (2 sin theta0).
/// Throws IllConditioned when |sin theta0| < 1e-6.
double lambda_from_xi(double xi, const FreudParams& p);

double lambda_estimate(const CoeffSequence& seq, double window_fraction = kDefaultWindowFraction);

struct ShootingOptions {
  double lambda_tolerance = 1e-3;  // accepted |lambda_hat - target| at the root
  double a1_tolerance = 1e-14;     // bracket width at which bisection stops
  double window_fraction = kDefaultWindowFraction;
  double bracket_margin = 1e-6;    // initial bracket (margin, 1 - margin)
  std::size_t scan_points = 64;
  std::size_t scan_length = 64;    // recurrence length used by the scan
  std::size_t max_iterations = 200;
};

/// a~_1^2 whose run of length N reproduces `target.lambda`. N >= 10^4.
/// Throws BracketFailure when no admissible starting value reaches it.
double solve_a1_for_lambda(const FreudParams& target, std::size_t n_max, const ShootingOptions& options = {});

}  // namespace freudrec
