#pragma once

// Tail analysis of a~_n^2 = 1/4 + y_n against the model
//
//   y_n = -(beta + 1/2) (-1)^n / (2n) + K cos(n theta0 - 2 lambda log n - phi) / n + o(1/n)
//
// with theta0 and lambda known, plus the centered diagnostics z_n, u_n and
// the residual of the y-form of Freud's identity.

#include <cstddef>
#include <optional>
#include <vector>

#include "freudrec/freud_recurrence.hpp"
#include "freudrec/szego.hpp"

namespace freudrec {

struct TailSample {
  std::vector<std::size_t> indices;  // strictly increasing, all >= 2
  std::vector<double> y;             // a~_n^2 - 1/4 at those indices
};

inline constexpr std::size_t kMaxTailPoints = 10000;
inline constexpr std::size_t kMinFitPoints = 100;

/// Smallest stride reducing `count` indices to at most `max_points` that is
/// odd, so (-1)^n still alternates, and keeps s*theta0 clear of multiples of
/// pi, so cos(n theta0) does not alias onto (-1)^n or a constant.
std::size_t sampling_stride(std::size_t count, std::size_t max_points, double theta0);

/// Indices lo..hi (clamped to [2, N]) evenly subsampled to at most
/// `max_points` with sampling_stride.
TailSample tail_sample(const CoeffSequence& seq, std::size_t lo, std::size_t hi,
                       std::size_t max_points = kMaxTailPoints);

/// Default tail: n in [N/2, N].
TailSample tail_sample(const CoeffSequence& seq);

/// Limits used to anchor z_n and u_n instead of truncating their tails.
struct TailLimits {
  double xi = 0.0;
  double eta = 0.0;
};

/// y_n = a~_n^2 - 1/4 (y_0 = -1/4),
/// z_n = -sum_{k>=n} y_k,
/// u_n = -y_{n-1}/2 - sum_{k>=n} (3 y_k / 2 + y_k^2 + 2 y_k y_{k-1}),
/// all for n = 0..N (z_0, u_0 are left at 0).
struct CenteredDeviations {
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> u;
};

/// Without `limits` the sums over k > N are dropped (O(1/N) offset). With
/// `limits`, z_n = sum_{k<n} a~_k^2 - n/4 - xi and likewise for u_n, which
/// is exact when xi and eta are the true limits.
CenteredDeviations centered_deviations(const CoeffSequence& seq, std::optional<TailLimits> limits = std::nullopt);

/// Left side minus right side of the y-form of Freud's identity at n,
/// 2 <= n <= N-1.
double residual_eq9(const CoeffSequence& seq, const CenteredDeviations& dev, std::size_t n);

struct FitResult {
  double K_hat = 0.0;
  double phi_hat = 0.0;       // (-pi, pi]
  double c_alt = 0.0;         // coefficient of (-1)^n / n
  double rms_residual = 0.0;  // rms of the n*y residual
  double condition = 0.0;     // 2-norm condition number of the design matrix
};

/// Linear least squares (Householder QR) for (C, S, dc) in
///   n y_n + (beta + 1/2)(-1)^n / 2 ~ C cos(psi_n) + S sin(psi_n) + dc (-1)^n,
/// psi_n = n theta0 - 2 lambda log n. Throws IllConditioned when theta0 is
/// within 1e-3 of 0 or pi, DomainError for fewer than kMinFitPoints samples.
FitResult fit_form10(const TailSample& sample, double beta, double theta0, double lambda);

/// Amplitude/phase of a_n - 1/2 and b_n fitted against the conjectured
/// oscillation on n in [lo, hi].
struct ConjectureFit {
  double M_from_a = 0.0;
  double Phi_from_a = 0.0;
  double M_from_b = 0.0;
  double Phi_from_b = 0.0;
  double rms_a = 0.0;
  double rms_b = 0.0;
};

ConjectureFit fit_conjecture(const ContractedCoeffs& coeffs, std::size_t lo, std::size_t hi, double theta0,
                             double lambda);

struct FitComparison {
  std::optional<double> amplitude_rel_error;  // |K_hat - K| / K, when K > 0
  std::optional<double> phase_error;          // wrapped |phi_hat - phi|
  double alt_error = 0.0;                     // |c_alt + (beta + 1/2)/2|
  double rms_residual = 0.0;
  bool amplitude_consistent_with_zero = false;
};

inline constexpr double kAmplitudeNoiseFloor = 1e-3;

FitComparison compare(const FitResult& fit, const ConjectureConstants& pred, double beta,
                      double noise_floor = kAmplitudeNoiseFloor);

}  // namespace freudrec
