#pragma once

// Closed-form limit constants predicted from the Szego function of the even
// weight, and the amplitude/phase constants of the O(1/n) oscillation of
// the recurrence coefficients.

#include <optional>
#include <utility>

#include "freudrec/freud_recurrence.hpp"

namespace freudrec {

/// Limits of kappa'_n/kappa_n and kappa''_n/kappa_n for the orthonormal
/// polynomials on the unit circle, and the centered-sum limits they imply:
///   xi  = lim sum_{k=1}^{n-1} a~_k^2 - n/4
///   eta = lim sum_{k=1}^{n-1} (a~_k^4 + 2 a~_k^2 a~_{k-1}^2) - 3n/16
struct SzegoConstants {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};

SzegoConstants kappa_ratios(const FreudParams& p);

/// Amplitude/phase of the tail of a~_n^2 (K, phi) and of a_n, b_n (M, Phi).
/// Phases are absent when the amplitude vanishes (gamma = 0 and lambda = 0).
struct ConjectureConstants {
  double K = 0.0;
  std::optional<double> phi;
  double M = 0.0;
  std::optional<double> Phi;
};

/// K = sqrt(gamma^2/4 + lambda^2) sin(theta0/2) and its phase, in (-pi, pi].
std::pair<double, std::optional<double>> predict_K_phi(const FreudParams& p);

/// M = sqrt(gamma^2/4 + lambda^2) sin(theta0) / 2 and its phase, in (-pi, pi].
std::pair<double, std::optional<double>> predict_M_Phi(const FreudParams& p);

ConjectureConstants conjecture_constants(const FreudParams& p);

/// Leading-order a_n and b_n:
///   a_n = 1/2 - (M/n) cos(2n theta0 - 2 lambda log(4 n sin theta0) - Phi)
///   b_n = -(2M/n) cos((2n+1) theta0 - 2 lambda log(4 n sin theta0) - Phi)
std::pair<double, double> conjectured_coeffs(std::size_t n, const FreudParams& p);

/// Principal value of arg Gamma(re + i im), in (-pi, pi].
/// Throws PoleError at the nonpositive integers.
double arg_gamma(double re, double im);

/// Im log Gamma(re + i im) on the branch continuous from the positive axis.
double log_gamma_imag(double re, double im);

/// Reduces an angle to (-pi, pi].
double wrap_phase(double angle);

/// min(|a - b|, 2 pi - |a - b|) after reduction.
double phase_distance(double a, double b);

}  // namespace freudrec
