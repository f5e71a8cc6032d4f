#include "freudrec/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "freudrec/errors.hpp"
#include "freudrec/tail_fit.hpp"

namespace freudrec {

namespace {

// Splits the complement handed over by tanh_sinh (a - x on the left half,
// b - x on the right half) into the two endpoint distances.
struct Distances {
  double left;
  double right;
};

Distances distances(double xc, double width) {
  if (xc < 0.0) {
    return {-xc, width + xc};
  }
  return {width - xc, xc};
}

double panel_integral(boost::math::quadrature::tanh_sinh<double>& rule, auto&& f, double lo, double hi,
                      const QuadratureSpec& spec, const char* what) {
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double width = hi - lo;
  const double value = rule.integrate(
      [&](double x, double xc) {
        const Distances d = distances(xc, width);
        return f(x, d.left, d.right);
      },
      lo, hi, spec.target_rel_error, &error, &l1, &levels);
  // the reported L1 is scaled to [lo, hi], the error estimate is not
  error *= 0.5 * width;
  if (!std::isfinite(value) || error > spec.target_rel_error * std::max(l1, std::abs(value)) * 10.0) {
    throw QuadratureFailure(fmt::format("{} panel: estimated error {} after {} levels (integral {})", what, error,
                                        levels, value));
  }
  return value;
}

// Fit of a centered-sum tail against the oscillation structure; returns the
// constant term.
double fit_limit(const CoeffSequence& seq, bool quartic, std::size_t lo, std::size_t hi, double lambda) {
  const FreudParams& p = seq.params();
  const std::size_t stride = sampling_stride(hi - lo + 1, kMaxTailPoints, p.theta0);
  std::vector<std::size_t> idx;
  for (std::size_t n = lo; n <= hi; n += stride) {
    idx.push_back(n);
  }
  const double scale = static_cast<double>(lo);
  const double offset = quartic ? 0.1875 : 0.25;
  Eigen::MatrixXd X(idx.size(), 5);
  Eigen::VectorXd r(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::size_t n = idx[i];
    const double nn = static_cast<double>(n);
    const double psi = nn * p.theta0 - 2.0 * lambda * std::log(nn);
    X(i, 0) = 1.0;
    X(i, 1) = ((n % 2 == 0) ? 1.0 : -1.0) * scale / nn;
    X(i, 2) = std::cos(psi) * scale / nn;
    X(i, 3) = std::sin(psi) * scale / nn;
    X(i, 4) = scale / nn;
    r(i) = (quartic ? seq.centered_quartic_sum(n) : seq.centered_sq_sum(n)) - offset;
  }
  const Eigen::VectorXd c = X.colPivHouseholderQr().solve(r);
  return c(0);
}

double window_mean(const CoeffSequence& seq, bool quartic, std::size_t lo, std::size_t hi) {
  CompensatedSum acc;
  const double offset = quartic ? 0.1875 : 0.25;
  for (std::size_t n = lo; n <= hi; ++n) {
    acc += (quartic ? seq.centered_quartic_sum(n) : seq.centered_sq_sum(n)) - offset;
  }
  return acc.value() / static_cast<double>(hi - lo + 1);
}

double lambda_or_zero(double xi, const FreudParams& p) {
  if (std::abs(std::sin(p.theta0)) < 1e-6) {
    return 0.0;
  }
  return lambda_from_xi(xi, p);
}

}  // namespace

double moment(const WeightParams& params, int power, const QuadratureSpec& spec) {
  validate(params);
  if (power != 0 && power != 2) {
    throw DomainError(fmt::format("moment power must be 0 or 2 (got {})", power));
  }
  if (!(spec.target_rel_error >= 1e-14)) {
    throw DomainError(fmt::format("quadrature target {} is below double precision", spec.target_rel_error));
  }
  const EvenWeightParams even = derive_even(params);
  const double xt = even.x_tilde0;
  const double e_origin = 2.0 * params.beta + 1.0 + power;
  const double a = params.alpha;
  const double g = params.gamma;

  boost::math::quadrature::tanh_sinh<double> rule(spec.max_levels);

  // |x| < x~0: distance to 0 is x itself, x~0^2 - x^2 = (x~0 - x)(x~0 + x).
  auto inner = [&](double x, double dl, double dr) {
    return std::pow(dl, e_origin) * std::pow(dr * (xt + x), g) * std::pow((1.0 - x) * (1.0 + x), a);
  };
  // |x| > x~0: x^2 - x~0^2 = (x - x~0)(x + x~0), 1 - x^2 = (1 - x)(1 + x).
  auto outer = [&](double x, double dl, double dr) {
    return std::pow(x, e_origin) * std::pow(dl * (x + xt), g) * std::pow(dr * (1.0 + x), a);
  };

  const double in = panel_integral(rule, inner, 0.0, xt, spec, "inner");
  const double out = panel_integral(rule, outer, xt, 1.0, spec, "outer");
  return 2.0 * (even.B_tilde * in + even.A_tilde * out);
}

double a1_sq_from_weights(const WeightParams& params, const QuadratureSpec& spec) {
  return moment(params, 2, spec) / moment(params, 0, spec);
}

LimitEstimate estimate_limits(const CoeffSequence& seq, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0)) {
    throw DomainError(fmt::format("window fraction {} must lie in (0, 1)", window_fraction));
  }
  const std::size_t big_n = seq.last_index();
  if (big_n < 1000) {
    throw DomainError(fmt::format("limit estimation needs N >= 1000 (N = {})", big_n));
  }
  const FreudParams& p = seq.params();
  const auto lo = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil((1.0 - window_fraction) * static_cast<double>(big_n))));
  const std::size_t hi = big_n;

  LimitEstimate est;
  est.xi = window_mean(seq, false, lo, hi);
  est.lambda = lambda_or_zero(est.xi, p);
  for (int pass = 0; pass < 2; ++pass) {
    est.xi = fit_limit(seq, false, lo, hi, est.lambda);
    est.lambda = lambda_or_zero(est.xi, p);
  }
  est.eta = fit_limit(seq, true, lo, hi, est.lambda);
  return est;
}

double xi_estimate(const CoeffSequence& seq, double window_fraction) {
  return estimate_limits(seq, window_fraction).xi;
}

double eta_estimate(const CoeffSequence& seq, double window_fraction) {
  return estimate_limits(seq, window_fraction).eta;
}

double lambda_from_xi(double xi, const FreudParams& p) {
  const double s = std::sin(p.theta0);
  if (std::abs(s) < 1e-6) {
    throw IllConditioned(fmt::format("sin(theta0) = {} is too small to resolve lambda", s));
  }
  return -(4.0 * xi + p.alpha - p.beta + p.gamma * p.x0) / (2.0 * s);
}

double lambda_estimate(const CoeffSequence& seq, double window_fraction) {
  return lambda_from_xi(xi_estimate(seq, window_fraction), seq.params());
}

double solve_a1_for_lambda(const FreudParams& target, std::size_t n_max, const ShootingOptions& options) {
  if (n_max < 10000) {
    throw DomainError(fmt::format("shooting needs N >= 10000 (N = {})", n_max));
  }
  if (!std::isfinite(target.lambda)) {
    throw DomainError("target lambda must be finite");
  }
  if (std::abs(std::sin(target.theta0)) < 1e-6) {
    throw IllConditioned("sin(theta0) is too small to resolve lambda");
  }

  // Admissible starting values form one interval; lambda decreases across
  // it. Trials outside diverge within a few steps.
  const double margin = options.bracket_margin;
  std::vector<double> survivors;
  for (std::size_t i = 0; i < options.scan_points; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(options.scan_points);
    const double trial = margin + (1.0 - 2.0 * margin) * t;
    try {
      run(target, trial, options.scan_length);
      survivors.push_back(trial);
    } catch (const DivergedTrial&) {
    }
  }
  if (survivors.empty()) {
    throw BracketFailure("no starting value in the scan produced a bounded recurrence");
  }

  auto lambda_at = [&](double a1) -> std::optional<double> {
    try {
      const CoeffSequence seq = run(target, a1, n_max);
      return lambda_estimate(seq, options.window_fraction);
    } catch (const DivergedTrial&) {
      return std::nullopt;
    }
  };

  double anchor = survivors[survivors.size() / 2];
  if (!lambda_at(anchor)) {
    const auto it = std::find_if(survivors.begin(), survivors.end(), [&](double s) { return lambda_at(s).has_value(); });
    if (it == survivors.end()) {
      throw BracketFailure("no starting value survived a full-length run");
    }
    anchor = *it;
  }

  double lo = margin;        // lambda above target (or diverged below the interval)
  double hi = 1.0 - margin;  // lambda below target (or diverged above it)
  for (std::size_t iter = 0; iter < options.max_iterations && hi - lo > options.a1_tolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const std::optional<double> lam = lambda_at(mid);
    const bool go_right = lam ? (*lam > target.lambda) : (mid < anchor);
    (go_right ? lo : hi) = mid;
  }

  const double root = 0.5 * (lo + hi);
  const std::optional<double> lam = lambda_at(root);
  if (!lam || std::abs(*lam - target.lambda) > options.lambda_tolerance) {
    throw BracketFailure(fmt::format("lambda = {} is not reachable: bisection ended at a1^2 = {} with lambda_hat = {}",
                                     target.lambda, root, lam ? fmt::format("{}", *lam) : std::string("diverged")));
  }
  return root;
}

}  // namespace freudrec
