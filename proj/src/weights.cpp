#include "freudrec/weights.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "freudrec/errors.hpp"

namespace freudrec {

namespace {

void require_exponent(double value, const char* name) {
  if (!(value > -1.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("{} = {} must satisfy {} > -1 for integrability", name, value, name));
  }
}

}  // namespace

const WeightParams& validate(const WeightParams& params) {
  require_exponent(params.alpha, "alpha");
  require_exponent(params.beta, "beta");
  require_exponent(params.gamma, "gamma");
  if (!(params.x0 > -1.0 && params.x0 < 1.0)) {
    throw DomainError(fmt::format("x0 = {} must lie strictly inside (-1, 1)", params.x0));
  }
  if (!(params.A > 0.0) || !std::isfinite(params.A)) {
    throw DomainError(fmt::format("scale A = {} must be positive", params.A));
  }
  if (!(params.B > 0.0) || !std::isfinite(params.B)) {
    throw DomainError(fmt::format("scale B = {} must be positive", params.B));
  }
  return params;
}

double jump_lambda(double A, double B) {
  return (std::log(B) - std::log(A)) / (2.0 * std::numbers::pi);
}

EvenWeightParams derive_even(const WeightParams& params) {
  validate(params);
  const double scale = std::exp2(params.alpha + params.beta + params.gamma + 1.0);
  EvenWeightParams even;
  even.x_tilde0 = std::sqrt(0.5 * (1.0 + params.x0));
  even.A_tilde = scale * params.A;
  even.B_tilde = scale * params.B;
  even.theta0 = std::acos(params.x0);
  even.lambda = jump_lambda(params.A, params.B);
  return even;
}

double classical_an_sq(std::size_t n, double alpha, double gamma) {
  if (n == 0) {
    throw DegenerateCase("classical_an_sq is defined for n >= 1");
  }
  const double nn = static_cast<double>(n);
  const double g_odd = gamma * odd_indicator(static_cast<long long>(n));
  const double d1 = 2.0 * nn + 2.0 * alpha + gamma + 1.0;
  const double d2 = 2.0 * nn + 2.0 * alpha + gamma - 1.0;
  if (d1 == 0.0 || d2 == 0.0) {
    throw DegenerateCase(fmt::format("denominator vanishes at n={}, alpha={}, gamma={}", n, alpha, gamma));
  }
  return (nn + 2.0 * alpha + g_odd) * (nn + g_odd) / (d1 * d2);
}

}  // namespace freudrec
