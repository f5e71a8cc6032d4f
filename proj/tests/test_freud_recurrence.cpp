#include <cmath>
#include <cstring>
#include <vector>

#include <doctest.h>

#include "freudrec/calibration.hpp"
#include "freudrec/errors.hpp"
#include "freudrec/freud_recurrence.hpp"
#include "freudrec/verify.hpp"
#include "freudrec/weights.hpp"

using namespace freudrec;

namespace {

CoeffSequence calibrated_run(const WeightParams& w, std::size_t n_max) {
  return run(freud_params(w), a1_sq_from_weights(w), n_max);
}

std::vector<WeightParams> acceptance_sets() {
  std::vector<WeightParams> sets = cross_validation_grid();
  sets.push_back({0.0, 0.0, 0.0, 0.3, 1.0, 1.0});
  sets.push_back({-0.5, -0.5, 0.0, 0.3, 1.0, 1.0});
  sets.push_back({0.0, 0.0, 1.0, 0.5, 1.0, 2.0});
  return sets;
}

}  // namespace

TEST_SUITE("freud_recurrence") {

TEST_CASE("Chebyshev fixed point") {
  const FreudParams p = freud_params(WeightParams{-0.5, -0.5, 0.0, 0.4, 1.0, 1.0});
  const CoeffSequence seq = run(p, 0.5, 100000);
  CHECK(seq.a_tilde_sq(0) == 0.0);
  CHECK(seq.a_tilde_sq(2) == doctest::Approx(0.25).epsilon(1e-15));
  double worst = 0.0;
  for (std::size_t n = 2; n <= seq.last_index(); ++n) {
    worst = std::max(worst, std::abs(seq.a_tilde_sq(n) - 0.25));
  }
  CHECK(worst <= 1e-12);
  double worst_res = 0.0;
  for (std::size_t n = 1; n <= 10000; ++n) {
    worst_res = std::max(worst_res, std::abs(residual_eq5(seq, n)));
  }
  CHECK(worst_res <= 1e-12);
}

TEST_CASE("gamma = 0 with equal scales matches the classical even-weight coefficients") {
  // w~ = |x|^(2 beta + 1) (1 - x^2)^alpha for every x0 when gamma = 0, A = B
  for (const auto& [alpha, beta] : {std::pair{0.0, 0.0}, {0.5, -0.3}, {-0.4, 1.2}, {2.0, 0.7}}) {
    for (double x0 : {-0.7, 0.0, 0.6}) {
      CAPTURE(alpha);
      CAPTURE(beta);
      CAPTURE(x0);
      const CoeffSequence seq = calibrated_run(WeightParams{alpha, beta, 0.0, x0, 1.0, 1.0}, 2000);
      double worst = 0.0;
      for (std::size_t n = 1; n <= 2000; ++n) {
        const double ref = classical_an_sq(n, alpha, 2.0 * beta + 1.0);
        worst = std::max(worst, std::abs(seq.a_tilde_sq(n) - ref) / ref);
      }
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("symmetric weights match the classical formula and have b_n = 0") {
  // w = |x|^gamma (1 - x^2)^alpha
  for (const auto& [alpha, gamma] : {std::pair{0.0, 1.0}, {0.5, 1.5}, {-0.3, 0.4}}) {
    CAPTURE(alpha);
    CAPTURE(gamma);
    const CoeffSequence seq = calibrated_run(WeightParams{alpha, alpha, gamma, 0.0, 1.0, 1.0}, 2001);
    const ContractedCoeffs c = contract(seq);
    double worst_a = 0.0;
    double worst_b = 0.0;
    for (std::size_t n = 1; n <= 1000; ++n) {
      const double ref = classical_an_sq(n, alpha, gamma);
      worst_a = std::max(worst_a, std::abs(c.a[n] * c.a[n] - ref) / ref);
    }
    for (double b : c.b) {
      worst_b = std::max(worst_b, std::abs(b));
    }
    CHECK(worst_a <= 1e-10);
    CHECK(worst_b <= 1e-10);
  }
}

TEST_CASE("w = |x| gives a_1^2 = 1/2 after contraction") {
  const FreudParams p = freud_params(WeightParams{0.0, 0.0, 1.0, 0.0, 1.0, 1.0});
  const CoeffSequence seq = run(p, 0.5, 3);
  const ContractedCoeffs c = contract(seq);
  CHECK(c.a[1] * c.a[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(c.b[0]) <= 1e-15);
  CHECK(std::abs(c.b[1]) <= 1e-14);
}

TEST_CASE("step solves the identity for the next coefficient") {
  const WeightParams w{0.3, -0.2, 0.7, 0.25, 1.0, 2.0};
  const CoeffSequence seq = calibrated_run(w, 4000);
  const std::vector<double> base(seq.a_tilde_sq().begin(), seq.a_tilde_sq().end());
  for (std::size_t n : {1u, 2u, 3u, 10u, 57u, 500u, 2999u}) {
    CAPTURE(n);
    const double next = seq.a_tilde_sq(n + 1);
    CHECK(std::abs(step(seq, n) - next) <= 1e-15);
    // the identity is linear in a~_{n+1}^2; its root from two displaced evaluations
    const double delta = 1e-3;
    auto shifted = [&](double d) {
      std::vector<double> v(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(n + 2));
      v[n + 1] += d;
      return residual_eq5(CoeffSequence::from_values(seq.params(), v), n);
    };
    const double r_plus = shifted(delta);
    const double r_minus = shifted(-delta);
    const double root = next + delta - r_plus * (2.0 * delta) / (r_plus - r_minus);
    CHECK(std::abs(root - next) <= 1e-12);
  }
}

TEST_CASE("identity residual stays at rounding level along runs") {
  for (const WeightParams& w : acceptance_sets()) {
    const CoeffSequence seq = calibrated_run(w, 20000);
    double worst = 0.0;
    for (std::size_t n = 1; n < seq.last_index(); ++n) {
      worst = std::max(worst, std::abs(residual_eq5(seq, n)) / std::max(1.0, static_cast<double>(n)));
    }
    CAPTURE(w.alpha);
    CAPTURE(w.x0);
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("perturbing one coefficient shows up in the residual") {
  const CoeffSequence seq = calibrated_run(WeightParams{0.0, 0.0, 0.0, 0.25, 1.0, 1.0}, 2000);
  std::vector<double> v(seq.a_tilde_sq().begin(), seq.a_tilde_sq().end());
  const std::size_t m = 1000;
  CHECK(std::abs(residual_eq5(seq, m)) <= 1e-11 * m);
  v[m] += 1e-6;
  const CoeffSequence bad = CoeffSequence::from_values(seq.params(), v);
  CHECK(std::abs(residual_eq5(bad, m)) > 1e-7);
}

TEST_CASE("running sums match a direct extended-precision sum") {
  const CoeffSequence seq = calibrated_run(WeightParams{-0.4, 0.5, 0.3, -0.6, 2.0, 1.0}, 100000);
  long double c1 = 0.0L;
  long double c2 = 0.0L;
  double worst_centered = 0.0;
  double worst_quartic = 0.0;
  double worst_raw = 0.0;
  for (std::size_t n = 1; n <= seq.last_index(); ++n) {
    const long double m = static_cast<long double>(n - 1);
    const long double s1 = m / 4.0L + c1;
    worst_centered = std::max(worst_centered, static_cast<double>(std::abs(seq.centered_sq_sum(n) - c1)));
    worst_quartic = std::max(worst_quartic, static_cast<double>(std::abs(seq.centered_quartic_sum(n) - c2)));
    worst_raw = std::max(worst_raw, static_cast<double>(std::abs(seq.raw_sq_sum(n) - s1) / std::max(1.0L, s1)));
    const long double a = seq.a_tilde_sq(n);
    const long double ap = seq.a_tilde_sq(n - 1);
    c1 += a - 0.25L;
    c2 += a * a + 2.0L * a * ap - 0.1875L;
  }
  CHECK(worst_centered <= 1e-13);
  CHECK(worst_quartic <= 1e-13);
  CHECK(worst_raw <= 1e-15);
}

TEST_CASE("from_values reproduces the running sums of a run") {
  const CoeffSequence seq = calibrated_run(WeightParams{0.3, -0.2, 0.7, 0.25, 1.0, 2.0}, 5000);
  const CoeffSequence copy = CoeffSequence::from_values(seq.params(), seq.a_tilde_sq());
  REQUIRE(copy.last_index() == seq.last_index());
  for (std::size_t n = 0; n <= seq.last_index(); n += 7) {
    CHECK(copy.centered_sq_sum(n) == seq.centered_sq_sum(n));
    CHECK(copy.centered_quartic_sum(n) == seq.centered_quartic_sum(n));
  }
  const std::vector<double> bad{0.1, 0.2};
  CHECK_THROWS_AS(CoeffSequence::from_values(seq.params(), bad), DomainError);
}

TEST_CASE("runs are bit-reproducible") {
  const FreudParams p = freud_params(WeightParams{0.0, 0.0, 1.0, 0.5, 1.0, 2.0});
  const CoeffSequence a = run(p, 0.2850877192982456, 50000);
  const CoeffSequence b = run(p, 0.2850877192982456, 50000);
  REQUIRE(a.a_tilde_sq().size() == b.a_tilde_sq().size());
  CHECK(std::memcmp(a.a_tilde_sq().data(), b.a_tilde_sq().data(), a.a_tilde_sq().size_bytes()) == 0);
}

TEST_CASE("boundedness and O(1/n) decay on acceptance parameter sets") {
  for (const WeightParams& w : acceptance_sets()) {
    CAPTURE(w.alpha);
    CAPTURE(w.gamma);
    CAPTURE(w.x0);
    const CoeffSequence seq = calibrated_run(w, 100000);
    const ContractedCoeffs c = contract(seq);
    bool inside = true;
    for (std::size_t n = 1; n <= seq.last_index(); ++n) {
      inside = inside && seq.a_tilde_sq(n) > 0.0 && seq.a_tilde_sq(n) < 1.0;
    }
    for (std::size_t n = 1; n < c.a.size(); ++n) {
      inside = inside && c.a[n] > 0.0 && c.a[n] < 1.0;
    }
    for (double b : c.b) {
      inside = inside && b > -1.0 && b < 1.0;
    }
    CHECK(inside);
    double scaled = 0.0;
    for (std::size_t n = 50000; n <= 100000; ++n) {
      scaled = std::max(scaled, static_cast<double>(n) * std::abs(seq.a_tilde_sq(n) - 0.25));
    }
    CHECK(scaled < 10.0);
  }
}

TEST_CASE("wrong starting values diverge with the failing index") {
  const FreudParams p = freud_params(WeightParams{});
  try {
    (void)run(p, 0.9, 1000);
    FAIL("expected divergence");
  } catch (const DivergedTrial& e) {
    CHECK(e.index() == 2);
  }
  CHECK_THROWS_AS((void)run(p, 1.5, 10), DivergedTrial);
  CHECK_THROWS_AS((void)run(p, 0.0, 10), DivergedTrial);
  CHECK_THROWS_AS((void)run(p, 1.0 / 3.0, 0), DomainError);
  const CoeffSequence seq = run(p, 1.0 / 3.0, 10);
  CHECK_THROWS_AS((void)residual_eq5(seq, 10), DomainError);
  CHECK_THROWS_AS((void)residual_eq5(seq, 0), DomainError);
}

TEST_CASE("contraction") {
  const FreudParams p = freud_params(WeightParams{});
  SUBCASE("constant 1/2") {
    const std::vector<double> v{0.0, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25};
    const ContractedCoeffs c = contract(CoeffSequence::from_values(p, v));
    REQUIRE(c.a.size() == 4);
    REQUIRE(c.b.size() == 4);
    CHECK(c.a[0] == 0.0);
    for (std::size_t n = 1; n < c.a.size(); ++n) {
      CHECK(c.a[n] == 0.5);
    }
    // b_0 carries a~_0^2 = 0
    CHECK(c.b[0] == -0.5);
    for (std::size_t n = 1; n < c.b.size(); ++n) {
      CHECK(c.b[n] == 0.0);
    }
  }
  SUBCASE("Chebyshev") {
    const CoeffSequence seq = run(freud_params(WeightParams{-0.5, -0.5, 0.0, 0.0, 1.0, 1.0}), 0.5, 21);
    const ContractedCoeffs c = contract(seq);
    CHECK(c.a[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    for (std::size_t n = 2; n < c.a.size(); ++n) {
      CHECK(c.a[n] == doctest::Approx(0.5).epsilon(1e-14));
    }
  }
  SUBCASE("lengths") {
    const CoeffSequence even = run(p, 1.0 / 3.0, 10);
    CHECK(contract(even).a.size() == 6);
    CHECK(contract(even).b.size() == 5);
    const CoeffSequence odd = run(p, 1.0 / 3.0, 11);
    CHECK(contract(odd).a.size() == 6);
    CHECK(contract(odd).b.size() == 6);
  }
}

}
