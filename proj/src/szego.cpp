#include "freudrec/szego.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "freudrec/errors.hpp"

namespace freudrec {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Past |z| = 15 the truncated Stirling series is below 1e-17.
constexpr double kStirlingRadius = 15.0;

double amplitude_root(const FreudParams& p) {
  return std::sqrt(0.25 * p.gamma * p.gamma + p.lambda * p.lambda);
}

// 2 arg Gamma(gamma/2 + i lambda) + arg(gamma/2 + i lambda), the part the two
// phase formulas share.
double gamma_phase(const FreudParams& p) {
  const double re = 0.5 * p.gamma;
  return 2.0 * log_gamma_imag(re, p.lambda) + std::atan2(p.lambda, re);
}

}  // namespace

double wrap_phase(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) {
    r += 2.0 * kPi;
  }
  return r;
}

double phase_distance(double a, double b) {
  const double d = std::abs(wrap_phase(a - b));
  return std::min(d, 2.0 * kPi - d);
}

double log_gamma_imag(double re, double im) {
  if (im == 0.0) {
    if (re <= 0.0 && re == std::floor(re)) {
      throw PoleError(fmt::format("Gamma has a pole at {}", re));
    }
    // Gamma is real; its sign alternates between consecutive negative poles.
    if (re > 0.0) {
      return 0.0;
    }
    return (static_cast<long long>(std::floor(re)) % 2 != 0) ? kPi : 0.0;
  }
  std::complex<double> z(re, im);
  double shift = 0.0;
  while (std::abs(z) < kStirlingRadius || z.real() < 1.0) {
    shift += std::arg(z);
    z += 1.0;
  }
  // Im[(z - 1/2) log z - z] plus the asymptotic correction series.
  const std::complex<double> logz = std::log(z);
  double value = std::imag((z - 0.5) * logz) - z.imag();
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> term = inv;
  std::complex<double> series = 0.0;
  for (double c : kStirling) {
    series += c * term;
    term *= inv2;
  }
  value += series.imag();
  return value - shift;
}

double arg_gamma(double re, double im) { return wrap_phase(log_gamma_imag(re, im)); }

SzegoConstants kappa_ratios(const FreudParams& p) {
  const double s = std::sin(p.theta0);
  const double c2 = std::cos(2.0 * p.theta0);
  const double s2 = std::sin(2.0 * p.theta0);
  const double amb = p.alpha - p.beta;
  const double lam = p.lambda;
  const double g = p.gamma;
  const double jump = g * p.x0 + 2.0 * lam * s;

  SzegoConstants out;
  out.kappa1 = amb + jump;
  out.kappa2 = 0.5 * amb * amb + 0.5 * (p.alpha + p.beta + 1.0) + amb * jump +
               (0.25 * g * (g + 2.0) - lam * lam) * c2 + lam * (g + 1.0) * s2 + 0.25 * g * g + lam * lam;
  out.xi = -0.25 * out.kappa1;
  out.eta = (out.kappa1 * out.kappa1 - 4.0 * out.kappa1 - 2.0 * out.kappa2) / 16.0;
  return out;
}

std::pair<double, std::optional<double>> predict_K_phi(const FreudParams& p) {
  const double root = amplitude_root(p);
  const double K = root * std::sin(0.5 * p.theta0);
  if (root == 0.0) {
    return {0.0, std::nullopt};
  }
  const double phi = (p.alpha + 1.0 + 0.5 * p.gamma) * kPi -
                     (p.alpha + p.beta + p.gamma + 0.5) * p.theta0 +
                     2.0 * p.lambda * std::log(2.0 * std::sin(p.theta0)) - gamma_phase(p);
  return {K, wrap_phase(phi)};
}

std::pair<double, std::optional<double>> predict_M_Phi(const FreudParams& p) {
  const double root = amplitude_root(p);
  const double M = 0.5 * root * std::sin(p.theta0);
  if (root == 0.0) {
    return {0.0, std::nullopt};
  }
  const double Phi = (p.alpha + 0.5 * p.gamma) * kPi - (p.alpha + p.beta + p.gamma) * p.theta0 - gamma_phase(p);
  return {M, wrap_phase(Phi)};
}

ConjectureConstants conjecture_constants(const FreudParams& p) {
  ConjectureConstants c;
  std::tie(c.K, c.phi) = predict_K_phi(p);
  std::tie(c.M, c.Phi) = predict_M_Phi(p);
  return c;
}

std::pair<double, double> conjectured_coeffs(std::size_t n, const FreudParams& p) {
  if (n == 0) {
    throw DomainError("conjectured_coeffs needs n >= 1");
  }
  const auto [M, Phi] = predict_M_Phi(p);
  if (!Phi) {
    return {0.5, 0.0};
  }
  const double nn = static_cast<double>(n);
  const double chirp = 2.0 * p.lambda * std::log(4.0 * nn * std::sin(p.theta0));
  const double a = 0.5 - M / nn * std::cos(2.0 * nn * p.theta0 - chirp - *Phi);
  const double b = -2.0 * M / nn * std::cos((2.0 * nn + 1.0) * p.theta0 - chirp - *Phi);
  return {a, b};
}

}  // namespace freudrec
