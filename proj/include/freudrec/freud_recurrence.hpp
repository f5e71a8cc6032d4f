#pragma once

// Forward Freud recurrence for the even weight w~(x) = 2|x| w(2x^2-1).
//
// The recurrence coefficients a~_n of w~ are produced one at a time from
// a~_1^2 by solving Freud's identity for a~_{n+1}^2. Only the squares are
// stored. The two running sums appearing in the identity,
//
//   S1(n) = sum_{k=1}^{n-1} a~_k^2,
//   S2(n) = sum_{k=1}^{n-1} (a~_k^4 + 2 a~_k^2 a~_{k-1}^2),
//
// are kept centered, S1 - (n-1)/4 and S2 - 3(n-1)/16, so that they stay
// O(1) as n grows; both are accumulated with compensated summation.

#include <cstddef>
#include <span>
#include <vector>

#include "freudrec/compensated_sum.hpp"
#include "freudrec/weights.hpp"

namespace freudrec {

/// Everything the recurrence and its diagnostics need. The scales A and B
/// enter only through lambda (and through the starting value a~_1^2).
struct FreudParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double x0 = 0.0;
  double x_tilde0_sq = 0.5;  // (1 + x0) / 2
  double theta0 = 0.0;       // acos(x0)
  double lambda = 0.0;       // log(B/A) / (2 pi)
};

FreudParams freud_params(const WeightParams& params);

/// Parameters for a requested jump lambda instead of explicit scales.
FreudParams freud_params(double alpha, double beta, double gamma, double x0, double lambda);

/// Trial runs stop once a~_n^2 leaves (kDivergenceGuard, 1 - kDivergenceGuard).
inline constexpr double kDivergenceGuard = 1e-12;

class CoeffSequence {
 public:
  /// Empty sequence holding only a~_0^2 = 0.
  explicit CoeffSequence(const FreudParams& params, std::size_t reserve = 0);

  /// Builds a sequence from a~_0^2..a~_N^2 (the first entry must be 0) and
  /// recomputes the running sums.
  static CoeffSequence from_values(const FreudParams& params, std::span<const double> a_tilde_sq);

  /// Appends a~_{N+1}^2.
  void append(double a_tilde_sq);

  const FreudParams& params() const { return params_; }

  /// Largest stored index N.
  std::size_t last_index() const { return a_sq_.size() - 1; }

  double a_tilde_sq(std::size_t n) const { return a_sq_[n]; }
  std::span<const double> a_tilde_sq() const { return a_sq_; }

  /// sum_{k=1}^{n-1} (a~_k^2 - 1/4), valid for n <= N.
  double centered_sq_sum(std::size_t n) const { return centered_sq_[n]; }
  /// sum_{k=1}^{n-1} (a~_k^4 + 2 a~_k^2 a~_{k-1}^2 - 3/16), valid for n <= N.
  double centered_quartic_sum(std::size_t n) const { return centered_quartic_[n]; }

  double raw_sq_sum(std::size_t n) const;
  double raw_quartic_sum(std::size_t n) const;

 private:
  FreudParams params_;
  std::vector<double> a_sq_;
  std::vector<double> centered_sq_;
  std::vector<double> centered_quartic_;
  CompensatedSum sq_acc_;
  CompensatedSum quartic_acc_;
};

/// a~_{n+1}^2 from the forward recurrence, given a~_1^2..a~_n^2 in `state`.
/// Throws DivergedTrial when a~_n^2 or the result lies outside the guard band.
double step(const CoeffSequence& state, std::size_t n);

/// Runs the recurrence from a~_1^2 up to a~_N^2.
CoeffSequence run(const FreudParams& params, double a1_sq, std::size_t n_max);

/// Left-hand side of Freud's identity at index n (1 <= n <= N-1); zero for an
/// exact sequence.
double residual_eq5(const CoeffSequence& seq, std::size_t n);

/// Recurrence coefficients of the original weight w.
struct ContractedCoeffs {
  std::vector<double> a;  // a[n] = a_n for n >= 1; a[0] = 0
  std::vector<double> b;  // b[n] = b_n for n >= 0
};

/// a_n = 2 a~_{2n-1} a~_{2n}, b_n = -1 + 2 a~_{2n}^2 + 2 a~_{2n+1}^2.
ContractedCoeffs contract(const CoeffSequence& seq);

}  // namespace freudrec
