#include "freudrec/freud_recurrence.hpp"

#include <cmath>

#include <fmt/format.h>

#include "freudrec/errors.hpp"

namespace freudrec {

FreudParams freud_params(const WeightParams& params) {
  const EvenWeightParams even = derive_even(params);
  FreudParams p;
  p.alpha = params.alpha;
  p.beta = params.beta;
  p.gamma = params.gamma;
  p.x0 = params.x0;
  p.x_tilde0_sq = 0.5 * (1.0 + params.x0);
  p.theta0 = even.theta0;
  p.lambda = even.lambda;
  return p;
}

FreudParams freud_params(double alpha, double beta, double gamma, double x0, double lambda) {
  if (!std::isfinite(lambda)) {
    throw DomainError(fmt::format("lambda = {} must be finite", lambda));
  }
  FreudParams p = freud_params(WeightParams{alpha, beta, gamma, x0, 1.0, 1.0});
  p.lambda = lambda;
  return p;
}

CoeffSequence::CoeffSequence(const FreudParams& params, std::size_t reserve) : params_(params) {
  a_sq_.reserve(reserve + 1);
  centered_sq_.reserve(reserve + 1);
  centered_quartic_.reserve(reserve + 1);
  a_sq_.push_back(0.0);
  centered_sq_.push_back(0.0);
  centered_quartic_.push_back(0.0);
}

CoeffSequence CoeffSequence::from_values(const FreudParams& params, std::span<const double> a_tilde_sq) {
  if (a_tilde_sq.empty() || a_tilde_sq[0] != 0.0) {
    throw DomainError("a coefficient sequence must start with a_tilde_0^2 = 0");
  }
  CoeffSequence seq(params, a_tilde_sq.size() - 1);
  for (std::size_t n = 1; n < a_tilde_sq.size(); ++n) {
    seq.append(a_tilde_sq[n]);
  }
  return seq;
}

void CoeffSequence::append(double value) {
  // Fold index m = N into the sums before storing a~_{N+1}, so that the
  // entry at N+1 covers k = 1..N.
  const std::size_t m = last_index();
  if (m >= 1) {
    // a^4 + 2 a^2 a'^2 - 3/16 in terms of y = a^2 - 1/4
    const double y = a_sq_[m] - 0.25;
    const double y1 = a_sq_[m - 1] - 0.25;
    sq_acc_ += y;
    quartic_acc_ += y + 0.5 * y1 + y * (y + 2.0 * y1);
  }
  a_sq_.push_back(value);
  centered_sq_.push_back(sq_acc_.value());
  centered_quartic_.push_back(quartic_acc_.value());
}

double CoeffSequence::raw_sq_sum(std::size_t n) const {
  const double terms = n >= 1 ? static_cast<double>(n - 1) : 0.0;
  return 0.25 * terms + centered_sq_[n];
}

double CoeffSequence::raw_quartic_sum(std::size_t n) const {
  const double terms = n >= 1 ? static_cast<double>(n - 1) : 0.0;
  return 0.1875 * terms + centered_quartic_[n];
}

double step(const CoeffSequence& state, std::size_t n) {
  const FreudParams& p = state.params();
  const double an = state.a_tilde_sq(n);
  if (!(an > kDivergenceGuard && an < 1.0 - kDivergenceGuard)) {
    throw DivergedTrial(n, an);
  }
  // Identity rewritten in y_k = a~_k^2 - 1/4 and the centered sums; the parts
  // growing like n cancel symbolically, leaving O(1) terms.
  const double y = an - 0.25;
  const double yp = state.a_tilde_sq(n - 1) - 0.25;
  const double c1 = state.centered_sq_sum(n);
  const double c2 = state.centered_quartic_sum(n);
  const double xt2 = p.x_tilde0_sq;
  const double nn = static_cast<double>(n);
  const double big_n = nn + p.alpha + p.beta + p.gamma + 2.0;
  const double odd = odd_indicator(static_cast<long long>(n));
  const double lead = p.alpha * xt2 + (nn + p.beta + 1.0) * (xt2 + 1.0) + p.gamma;

  const double constant = 0.375 * (p.alpha + p.beta + p.gamma) - 0.5 * (p.alpha + p.beta) * xt2 -
                          0.5 * (p.beta + p.gamma) + (2.0 * p.beta + 1.0) * xt2 * odd;
  const double rest = constant + big_n * (0.5 * yp + 2.0 * y + 2.0 * y * (yp + y)) - 2.0 * y * lead +
                      y * (nn - 1.0) + 2.0 * (2.0 * y - xt2 - 0.5) * c1 - 0.5 * (y + yp) - 2.0 * y * yp +
                      2.0 * c2;
  const double next = 0.25 - rest / (2.0 * big_n * an);

  if (!(next > kDivergenceGuard && next < 1.0 - kDivergenceGuard)) {
    throw DivergedTrial(n + 1, next);
  }
  return next;
}

CoeffSequence run(const FreudParams& params, double a1_sq, std::size_t n_max) {
  if (n_max < 1) {
    throw DomainError("run needs n_max >= 1");
  }
  if (!(a1_sq > kDivergenceGuard && a1_sq < 1.0 - kDivergenceGuard)) {
    throw DivergedTrial(1, a1_sq);
  }
  CoeffSequence seq(params, n_max);
  seq.append(a1_sq);
  for (std::size_t n = 1; n < n_max; ++n) {
    seq.append(step(seq, n));
  }
  return seq;
}

double residual_eq5(const CoeffSequence& seq, std::size_t n) {
  if (n < 1 || n + 1 > seq.last_index()) {
    throw DomainError(fmt::format("residual_eq5 needs 1 <= n <= N-1 (n={}, N={})", n, seq.last_index()));
  }
  using ld = long double;
  const FreudParams& p = seq.params();
  const ld an = seq.a_tilde_sq(n);
  const ld anm1 = seq.a_tilde_sq(n - 1);
  const ld anp1 = seq.a_tilde_sq(n + 1);
  const ld nn = static_cast<ld>(n);
  const ld s1 = 0.25L * (nn - 1.0L) + seq.centered_sq_sum(n);
  const ld s2 = 0.1875L * (nn - 1.0L) + seq.centered_quartic_sum(n);
  const ld xt2 = p.x_tilde0_sq;
  const ld alpha = p.alpha;
  const ld beta = p.beta;
  const ld gamma = p.gamma;
  const ld big_n = nn + alpha + beta + gamma + 2.0L;
  const ld odd = odd_indicator(static_cast<long long>(n));

  const ld value = 2.0L * big_n * an * (anm1 + an + anp1) -
                   2.0L * (alpha * xt2 + (nn + beta + 1.0L) * (xt2 + 1.0L) + gamma) * an +
                   2.0L * (2.0L * an - xt2 - 1.0L) * s1 + nn * xt2 - 2.0L * an * anm1 + 2.0L * s2 +
                   (2.0L * beta + 1.0L) * xt2 * odd;
  return static_cast<double>(value);
}

ContractedCoeffs contract(const CoeffSequence& seq) {
  const std::size_t big_n = seq.last_index();
  ContractedCoeffs out;
  const std::size_t a_max = big_n / 2;
  out.a.assign(a_max + 1, 0.0);
  for (std::size_t n = 1; n <= a_max; ++n) {
    out.a[n] = 2.0 * std::sqrt(seq.a_tilde_sq(2 * n - 1)) * std::sqrt(seq.a_tilde_sq(2 * n));
  }
  if (big_n >= 1) {
    const std::size_t b_max = (big_n - 1) / 2;
    out.b.assign(b_max + 1, 0.0);
    for (std::size_t n = 0; n <= b_max; ++n) {
      out.b[n] = -1.0 + 2.0 * seq.a_tilde_sq(2 * n) + 2.0 * seq.a_tilde_sq(2 * n + 1);
    }
  }
  return out;
}

}  // namespace freudrec
