#pragma once

// Generalized Jacobi weight with one interior algebraic singularity:
//
//   w(x) = B (1-x)^alpha (x0-x)^gamma (1+x)^beta   on [-1, x0]
//        = A (1-x)^alpha (x-x0)^gamma (1+x)^beta   on [x0, 1]
//
// and its symmetrization w~(x) = 2|x| w(2x^2 - 1) on [-1, 1], whose
// recurrence coefficients a~_n carry both a_n and b_n of w.

#include <cstddef>

namespace freudrec {

struct WeightParams {
  double alpha = 0.0;  // exponent at +1
  double beta = 0.0;   // exponent at -1
  double gamma = 0.0;  // exponent at x0
  double x0 = 0.0;     // interior singular abscissa
  double A = 1.0;      // scale on (x0, 1)
  double B = 1.0;      // scale on (-1, x0)
};

/// Quantities of the even weight w~.
struct EvenWeightParams {
  double x_tilde0 = 0.0;  // positive root of 2 x~0^2 - 1 = x0
  double A_tilde = 0.0;   // 2^(alpha+beta+gamma+1) A
  double B_tilde = 0.0;   // 2^(alpha+beta+gamma+1) B
  double theta0 = 0.0;    // x0 = cos(theta0), in (0, pi)
  double lambda = 0.0;    // log(B/A) / (2 pi)
};

/// Throws DomainError naming the first violated constraint.
const WeightParams& validate(const WeightParams& params);

EvenWeightParams derive_even(const WeightParams& params);

/// log(B/A) / (2 pi), evaluated as a difference of logs.
double jump_lambda(double A, double B);

/// odd(n) = (1 - (-1)^n) / 2.
constexpr int odd_indicator(long long n) { return (n % 2 != 0) ? 1 : 0; }

/// a_n^2 for the symmetric weight |x|^gamma (1-x^2)^alpha on [-1,1]
/// (A = B, alpha = beta, x0 = 0), from the Jacobi polynomials.
/// Throws DegenerateCase when 2n + 2 alpha + gamma = +-1.
double classical_an_sq(std::size_t n, double alpha, double gamma);

}  // namespace freudrec
