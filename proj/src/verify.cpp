#include "freudrec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <fmt/format.h>

#include "freudrec/calibration.hpp"
#include "freudrec/errors.hpp"
#include "freudrec/freud_recurrence.hpp"
#include "freudrec/oracle.hpp"

namespace freudrec {

namespace {

double max_scaled_eq5(const CoeffSequence& seq) {
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 <= seq.last_index(); ++n) {
    worst = std::max(worst, std::abs(residual_eq5(seq, n)) / std::max(1.0, static_cast<double>(n)));
  }
  return worst;
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

template <typename F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return check(name, false, fmt::format("threw: {}", e.what()));
  }
}

// Contracted a_n^2 against a closed form, plus |b_n|, for n <= n_max.
std::pair<double, double> closed_form_errors(const CoeffSequence& seq, std::size_t n_max, double alpha, double gamma) {
  const ContractedCoeffs c = contract(seq);
  double rel = 0.0;
  double b_abs = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double exact = classical_an_sq(n, alpha, gamma);
    rel = std::max(rel, std::abs(c.a[n] * c.a[n] - exact) / exact);
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    b_abs = std::max(b_abs, std::abs(c.b[n]));
  }
  return {rel, b_abs};
}

CheckResult symmetric_closed_form(const std::string& name, const WeightParams& params, bool perturb) {
  return guarded(name, [&] {
    constexpr std::size_t kMax = 1000;
    const FreudParams p = freud_params(params);
    CoeffSequence seq = run(p, a1_sq_from_weights(params), 2 * kMax + 1);
    if (perturb) {
      std::vector<double> values(seq.a_tilde_sq().begin(), seq.a_tilde_sq().end());
      values[11] += 1e-6;
      seq = CoeffSequence::from_values(p, values);
    }
    const auto [rel, b_abs] = closed_form_errors(seq, kMax, params.alpha, params.gamma);
    const bool ok = rel <= 1e-10 && b_abs <= 1e-10;
    return check(name, ok, fmt::format("max rel err a_n^2 = {:.3e}, max |b_n| = {:.3e} (n <= {})", rel, b_abs, kMax));
  });
}

CheckResult oracle_check(const WeightParams& params) {
  const std::string name = fmt::format("oracle cross-check ({}, {}, {}, {}, {}, {})", params.alpha, params.beta,
                                       params.gamma, params.x0, params.A, params.B);
  return guarded(name, [&] {
    const OracleComparison cmp = cross_validate(params);
    const bool ok = cmp.max_rel_error_a <= 1e-8 && cmp.max_rel_error_b <= 1e-8 && cmp.max_eq5_residual <= 1e-11;
    return check(name, ok,
                 fmt::format("a: {:.3e}, b: {:.3e}, a1^2: {:.3e}, identity residual: {:.3e}", cmp.max_rel_error_a,
                             cmp.max_rel_error_b, cmp.a1_sq_error, cmp.max_eq5_residual));
  });
}

}  // namespace

std::vector<WeightParams> cross_validation_grid() {
  return {
      {0.3, -0.2, 0.7, 0.25, 1.0, 2.0},
      {0.0, 0.0, 1.0, 0.5, 1.0, 1.0},
      {-0.4, 0.5, 0.3, -0.6, 2.0, 1.0},
      {0.0, 0.0, 0.5, 0.5, 1.0, 3.0},
      {0.5, 0.5, 1.5, 0.0, 1.0, 1.0},
  };
}

OracleComparison cross_validate(const WeightParams& params, std::size_t n_max) {
  OracleComparison out;
  out.params = params;
  out.n_max = n_max;

  const StieltjesCoeffs ref = stieltjes_coeffs(discretize(params), n_max);
  const double a1 = a1_sq_from_weights(params);
  const CoeffSequence seq = run(freud_params(params), a1, 2 * n_max + 2);
  const ContractedCoeffs got = contract(seq);

  for (std::size_t n = 1; n <= n_max; ++n) {
    out.max_rel_error_a = std::max(out.max_rel_error_a, std::abs(got.a[n] - ref.a[n]) / ref.a[n]);
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.max_rel_error_b =
        std::max(out.max_rel_error_b, std::abs(got.b[n] - ref.b[n]) / std::max(std::abs(ref.b[n]), kBFloor));
  }
  out.a1_sq_error = std::abs(a1 - 0.5 * (1.0 + ref.b[0]));
  out.max_eq5_residual = max_scaled_eq5(seq);
  return out;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results;

  results.push_back(
      symmetric_closed_form("Legendre closed form", WeightParams{0.0, 0.0, 0.0, 0.3, 1.0, 1.0}, options.inject_perturbation));
  results.push_back(symmetric_closed_form("symmetric Jacobi closed form (alpha=beta=1/2, gamma=3/2, x0=0)",
                                          WeightParams{0.5, 0.5, 1.5, 0.0, 1.0, 1.0}, false));

  results.push_back(guarded("Chebyshev fixed point", [&] {
    const WeightParams params{-0.5, -0.5, 0.0, 0.2, 1.0, 1.0};
    const double a1 = a1_sq_from_weights(params);
    const CoeffSequence seq = run(freud_params(params), a1, 100000);
    double worst = 0.0;
    for (std::size_t n = 2; n <= seq.last_index(); ++n) {
      worst = std::max(worst, std::abs(seq.a_tilde_sq(n) - 0.25));
    }
    const bool ok = std::abs(a1 - 0.5) <= 1e-14 && worst <= 1e-12;
    return check("Chebyshev fixed point", ok,
                 fmt::format("|a1^2 - 1/2| = {:.3e}, max |a_n^2 - 1/4| = {:.3e} (n <= 1e5)", std::abs(a1 - 0.5), worst));
  }));

  if (options.grid) {
    const std::vector<WeightParams> grid = cross_validation_grid();
    std::vector<std::future<CheckResult>> jobs;
    jobs.reserve(grid.size());
    for (const WeightParams& params : grid) {
      jobs.push_back(std::async(std::launch::async, [params] { return oracle_check(params); }));
    }
    for (auto& job : jobs) {
      results.push_back(job.get());
    }
  } else {
    results.push_back(oracle_check(cross_validation_grid().front()));
  }
  return results;
}

}  // namespace freudrec
