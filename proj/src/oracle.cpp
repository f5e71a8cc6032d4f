#include "freudrec/oracle.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "freudrec/compensated_sum.hpp"
#include "freudrec/errors.hpp"

namespace freudrec {

DiscreteMeasure gauss_jacobi(std::size_t m, double a, double b) {
  if (m == 0 || !(a > -1.0) || !(b > -1.0)) {
    throw DomainError(fmt::format("gauss_jacobi needs m >= 1 and exponents > -1 (m={}, a={}, b={})", m, a, b));
  }
  // Jacobi matrix of the monic Jacobi polynomials (Golub-Welsch).
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (std::size_t k = 1; k < m; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
    double beta_k;
    if (k == 1) {
      beta_k = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      beta_k = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta_k);
  }
  const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  DiscreteMeasure rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) {
    throw QuadratureFailure("Golub-Welsch eigenproblem did not converge");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double v = eig.eigenvectors()(0, static_cast<Eigen::Index>(i));
    rule.nodes[i] = eig.eigenvalues()(static_cast<Eigen::Index>(i));
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

DiscreteMeasure discretize(const WeightParams& params, std::size_t points_per_panel) {
  validate(params);
  if (points_per_panel < 20) {
    throw DomainError(fmt::format("discretize needs at least 20 points per panel (got {})", points_per_panel));
  }
  const double x0 = params.x0;
  DiscreteMeasure measure;
  measure.nodes.reserve(2 * points_per_panel);
  measure.weights.reserve(2 * points_per_panel);

  // [-1, x0]: beta at t = -1 (x = -1), gamma at t = +1 (x = x0); (1-x)^alpha is smooth.
  {
    const double h = 0.5 * (1.0 + x0);
    const DiscreteMeasure gj = gauss_jacobi(points_per_panel, params.gamma, params.beta);
    const double scale = params.B * std::pow(h, params.beta + params.gamma + 1.0);
    for (std::size_t i = 0; i < points_per_panel; ++i) {
      const double t = gj.nodes[i];
      measure.nodes.push_back(-1.0 + h * (1.0 + t));
      measure.weights.push_back(scale * gj.weights[i] * std::pow((1.0 - x0) + h * (1.0 - t), params.alpha));
    }
  }
  // [x0, 1]: gamma at t = -1 (x = x0), alpha at t = +1 (x = 1); (1+x)^beta is smooth.
  {
    const double h = 0.5 * (1.0 - x0);
    const DiscreteMeasure gj = gauss_jacobi(points_per_panel, params.alpha, params.gamma);
    const double scale = params.A * std::pow(h, params.alpha + params.gamma + 1.0);
    for (std::size_t i = 0; i < points_per_panel; ++i) {
      const double t = gj.nodes[i];
      measure.nodes.push_back(x0 + h * (1.0 + t));
      measure.weights.push_back(scale * gj.weights[i] * std::pow((1.0 + x0) + h * (1.0 + t), params.beta));
    }
  }
  for (std::size_t i = 0; i < measure.nodes.size(); ++i) {
    if (!(measure.weights[i] > 0.0) || (i > 0 && !(measure.nodes[i] > measure.nodes[i - 1]))) {
      throw QuadratureFailure(fmt::format("discretization produced an invalid node/weight at {}", i));
    }
  }
  return measure;
}

namespace {

double inner(const std::vector<double>& w, const std::vector<double>& f, const std::vector<double>& g) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i] * f[i] * g[i];
  }
  return acc.value();
}

}  // namespace

StieltjesCoeffs stieltjes_coeffs(const DiscreteMeasure& measure, std::size_t n_max) {
  const std::size_t m = measure.nodes.size();
  if (n_max > 40) {
    throw DomainError(fmt::format("stieltjes_coeffs is limited to n_max <= 40 (got {})", n_max));
  }
  if (m < 4 * n_max || m == 0 || measure.weights.size() != m) {
    throw DomainError(fmt::format("measure with {} nodes is too small for n_max = {}", m, n_max));
  }
  const std::vector<double>& x = measure.nodes;
  const std::vector<double>& w = measure.weights;

  std::vector<double> ones(m, 1.0);
  const double mu0 = inner(w, ones, ones);
  std::vector<double> prev(m, 0.0);
  std::vector<double> cur(m, 1.0 / std::sqrt(mu0));
  std::vector<double> xcur(m);
  std::vector<double> next(m);

  StieltjesCoeffs out;
  out.a.assign(n_max + 1, 0.0);
  out.b.assign(n_max + 1, 0.0);
  for (std::size_t n = 0;; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      xcur[i] = x[i] * cur[i];
    }
    out.b[n] = inner(w, xcur, cur);
    if (n == n_max) {
      break;
    }
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = xcur[i] - out.b[n] * cur[i] - out.a[n] * prev[i];
    }
    // One pass of reorthogonalization against the last two members.
    const double c_cur = inner(w, next, cur);
    const double c_prev = inner(w, next, prev);
    for (std::size_t i = 0; i < m; ++i) {
      next[i] -= c_cur * cur[i] + c_prev * prev[i];
    }
    const double norm_sq = inner(w, next, next);
    if (!(norm_sq > 0.0)) {
      throw LossOfOrthogonality(fmt::format("a_{}^2 = {} is not positive", n + 1, norm_sq));
    }
    const double a_next = std::sqrt(norm_sq);
    out.a[n + 1] = a_next;
    for (std::size_t i = 0; i < m; ++i) {
      prev[i] = cur[i];
      cur[i] = next[i] / a_next;
    }
  }
  return out;
}

}  // namespace freudrec
