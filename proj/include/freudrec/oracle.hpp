#pragma once

// Brute-force recurrence coefficients for small n. The weight is replaced
// by a discrete measure (Gauss-Jacobi nodes on each of the panels
// [-1, x0] and [x0, 1], so every endpoint singularity is carried by the
// rule itself) and the orthonormal family is built by explicit inner
// products. Independent of the Freud recurrence and of its calibration.

#include <cstddef>
#include <vector>

#include "freudrec/weights.hpp"

namespace freudrec {

struct DiscreteMeasure {
  std::vector<double> nodes;    // strictly increasing, in (-1, 1)
  std::vector<double> weights;  // positive
};

/// Nodes and weights of the m-point Gauss rule for (1-t)^a (1+t)^b on [-1, 1].
DiscreteMeasure gauss_jacobi(std::size_t m, double a, double b);

/// Requires points_per_panel >= 20.
DiscreteMeasure discretize(const WeightParams& params, std::size_t points_per_panel = 160);

struct StieltjesCoeffs {
  std::vector<double> a;  // a[n] = a_n for 1 <= n <= n_max; a[0] = 0
  std::vector<double> b;  // b[n] = b_n for 0 <= n <= n_max
};

/// Requires n_max <= 40 and at least 4 n_max nodes.
/// Throws LossOfOrthogonality when a computed a_{n+1}^2 is not positive.
StieltjesCoeffs stieltjes_coeffs(const DiscreteMeasure& measure, std::size_t n_max);

}  // namespace freudrec
