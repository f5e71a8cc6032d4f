#include "freudrec/tail_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "freudrec/compensated_sum.hpp"
#include "freudrec/errors.hpp"

namespace freudrec {

namespace {

double alternating(std::size_t n) { return (n % 2 == 0) ? 1.0 : -1.0; }

struct LeastSquares {
  Eigen::VectorXd coef;
  double rms = 0.0;
  double condition = 0.0;
};

LeastSquares solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& r) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  LeastSquares out;
  out.coef = qr.solve(r);
  out.rms = std::sqrt((X * out.coef - r).squaredNorm() / static_cast<double>(r.size()));
  const auto cols = X.cols();
  const Eigen::MatrixXd R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
  const auto& sv = svd.singularValues();
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

std::size_t sampling_stride(std::size_t count, std::size_t max_points, double theta0) {
  if (max_points == 0 || count <= max_points) {
    return 1;
  }
  std::size_t stride = (count + max_points - 1) / max_points;
  if (stride % 2 == 0) {
    ++stride;
  }
  const double floor = 0.5 * std::abs(std::sin(theta0));
  for (int tries = 0; tries < 64; ++tries, stride += 2) {
    if (std::abs(std::sin(static_cast<double>(stride) * theta0)) >= floor) {
      return stride;
    }
  }
  return 1;
}

TailSample tail_sample(const CoeffSequence& seq, std::size_t lo, std::size_t hi, std::size_t max_points) {
  const std::size_t big_n = seq.last_index();
  lo = std::max<std::size_t>(lo, 2);
  hi = std::min(hi, big_n);
  TailSample sample;
  if (lo > hi || max_points == 0) {
    return sample;
  }
  const std::size_t stride = sampling_stride(hi - lo + 1, max_points, seq.params().theta0);
  for (std::size_t n = lo; n <= hi; n += stride) {
    sample.indices.push_back(n);
    sample.y.push_back(seq.a_tilde_sq(n) - 0.25);
  }
  return sample;
}

TailSample tail_sample(const CoeffSequence& seq) {
  const std::size_t big_n = seq.last_index();
  return tail_sample(seq, big_n / 2, big_n);
}

CenteredDeviations centered_deviations(const CoeffSequence& seq, std::optional<TailLimits> limits) {
  const std::size_t big_n = seq.last_index();
  CenteredDeviations dev;
  dev.y.resize(big_n + 1);
  dev.z.assign(big_n + 1, 0.0);
  dev.u.assign(big_n + 1, 0.0);
  for (std::size_t n = 0; n <= big_n; ++n) {
    dev.y[n] = seq.a_tilde_sq(n) - 0.25;
  }
  if (limits) {
    for (std::size_t n = 1; n <= big_n; ++n) {
      dev.z[n] = seq.centered_sq_sum(n) - 0.25 - limits->xi;
      dev.u[n] = seq.centered_quartic_sum(n) - 0.1875 - limits->eta;
    }
    return dev;
  }
  CompensatedSum z_tail;
  CompensatedSum u_tail;
  for (std::size_t n = big_n; n >= 1; --n) {
    const double y = dev.y[n];
    const double yprev = dev.y[n - 1];
    z_tail += y;
    u_tail += 1.5 * y + y * y + 2.0 * y * yprev;
    dev.z[n] = -z_tail.value();
    dev.u[n] = -0.5 * yprev - u_tail.value();
  }
  return dev;
}

double residual_eq9(const CoeffSequence& seq, const CenteredDeviations& dev, std::size_t n) {
  const std::size_t big_n = seq.last_index();
  if (n < 2 || n + 1 > big_n || dev.y.size() != big_n + 1) {
    throw DomainError(fmt::format("residual_eq9 needs 2 <= n <= N-1 (n={}, N={})", n, big_n));
  }
  const FreudParams& p = seq.params();
  const double x0 = p.x0;
  const double nn = static_cast<double>(n);
  const double big = nn + p.alpha + p.beta + p.gamma + 2.0;
  const double sgn = alternating(n);
  const double yn = dev.y[n];
  const double zn = dev.z[n];
  const double un = dev.u[n];
  const double jump = (x0 + 1.0) * (p.beta + 0.5) * sgn;

  const double lhs = dev.y[n + 1] - 2.0 * x0 * yn + dev.y[n - 1];
  const double first = (jump + 2.0 * (x0 + 2.0) * zn + dev.y[n - 1] - 4.0 * un) / big;
  const double second = 16.0 * yn / (1.0 + 4.0 * yn) *
                        ((2.0 * x0 + 1.0) / 4.0 - p.lambda * std::sin(p.theta0) + jump + 2.0 * (x0 + 3.0) * zn -
                         4.0 * un) /
                        (4.0 * big);
  const double third = 4.0 * (2.0 * x0 + 1.0) * yn * yn / (1.0 + 4.0 * yn);
  return lhs - (first - second - third);
}

FitResult fit_form10(const TailSample& sample, double beta, double theta0, double lambda) {
  constexpr double kEdge = 1e-3;
  if (theta0 < kEdge || theta0 > std::numbers::pi - kEdge) {
    throw IllConditioned(fmt::format("theta0 = {} is too close to 0 or pi: the cosine and alternating terms coincide",
                                     theta0));
  }
  const std::size_t m = sample.indices.size();
  if (m < kMinFitPoints || sample.y.size() != m) {
    throw DomainError(fmt::format("fit needs at least {} samples with matching y values (got {} indices, {} values)",
                                  kMinFitPoints, m, sample.y.size()));
  }
  Eigen::MatrixXd X(m, 3);
  Eigen::VectorXd r(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = sample.indices[i];
    const double nn = static_cast<double>(n);
    const double psi = nn * theta0 - 2.0 * lambda * std::log(nn);
    const double sgn = alternating(n);
    X(i, 0) = std::cos(psi);
    X(i, 1) = std::sin(psi);
    X(i, 2) = sgn;
    r(i) = sample.y[i] * nn + 0.5 * (beta + 0.5) * sgn;
  }
  const LeastSquares ls = solve_ls(X, r);
  FitResult fit;
  fit.K_hat = std::hypot(ls.coef(0), ls.coef(1));
  fit.phi_hat = wrap_phase(std::atan2(ls.coef(1), ls.coef(0)));
  fit.c_alt = -0.5 * (beta + 0.5) + ls.coef(2);
  fit.rms_residual = ls.rms;
  fit.condition = ls.condition;
  return fit;
}

ConjectureFit fit_conjecture(const ContractedCoeffs& coeffs, std::size_t lo, std::size_t hi, double theta0,
                             double lambda) {
  lo = std::max<std::size_t>(lo, 1);
  hi = std::min({hi, coeffs.a.size() - 1, coeffs.b.size() - 1});
  if (hi < lo + 2) {
    throw DomainError(fmt::format("conjecture fit needs at least 3 indices (got [{}, {}])", lo, hi));
  }
  const std::size_t count = hi - lo + 1;
  const std::size_t stride = (count + kMaxTailPoints - 1) / kMaxTailPoints;
  std::vector<std::size_t> idx;
  for (std::size_t n = lo; n <= hi; n += stride) {
    idx.push_back(n);
  }
  const double s = std::sin(theta0);
  Eigen::MatrixXd Xa(idx.size(), 2);
  Eigen::MatrixXd Xb(idx.size(), 2);
  Eigen::VectorXd ra(idx.size());
  Eigen::VectorXd rb(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double nn = static_cast<double>(idx[i]);
    const double chirp = 2.0 * lambda * std::log(4.0 * nn * s);
    const double pa = 2.0 * nn * theta0 - chirp;
    const double pb = (2.0 * nn + 1.0) * theta0 - chirp;
    Xa(i, 0) = std::cos(pa);
    Xa(i, 1) = std::sin(pa);
    Xb(i, 0) = std::cos(pb);
    Xb(i, 1) = std::sin(pb);
    ra(i) = -(coeffs.a[idx[i]] - 0.5) * nn;
    rb(i) = -0.5 * coeffs.b[idx[i]] * nn;
  }
  const LeastSquares la = solve_ls(Xa, ra);
  const LeastSquares lb = solve_ls(Xb, rb);
  ConjectureFit fit;
  fit.M_from_a = std::hypot(la.coef(0), la.coef(1));
  fit.Phi_from_a = wrap_phase(std::atan2(la.coef(1), la.coef(0)));
  fit.M_from_b = std::hypot(lb.coef(0), lb.coef(1));
  fit.Phi_from_b = wrap_phase(std::atan2(lb.coef(1), lb.coef(0)));
  fit.rms_a = la.rms;
  fit.rms_b = lb.rms;
  return fit;
}

FitComparison compare(const FitResult& fit, const ConjectureConstants& pred, double beta, double noise_floor) {
  FitComparison out;
  out.alt_error = std::abs(fit.c_alt + 0.5 * (beta + 0.5));
  out.rms_residual = fit.rms_residual;
  if (pred.K > 0.0) {
    out.amplitude_rel_error = std::abs(fit.K_hat - pred.K) / pred.K;
    if (pred.phi) {
      out.phase_error = phase_distance(fit.phi_hat, *pred.phi);
    }
  } else {
    out.amplitude_consistent_with_zero = fit.K_hat <= noise_floor;
  }
  return out;
}

}  // namespace freudrec
