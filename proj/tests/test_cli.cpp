#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "freudrec/cli.hpp"
#include "freudrec/report.hpp"

using namespace freudrec;
using freudrec::cli::Format;
using freudrec::cli::RunConfig;

namespace {

struct Output {
  int code;
  std::string out;
  std::string err;
};

template <typename F>
Output invoke(F&& cmd, const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cmd(config, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

RunConfig config_for(const WeightParams& w, std::size_t n) {
  RunConfig c;
  c.weight = w;
  c.n = n;
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("coefficient table for Legendre") {
  const Output o = invoke(cli::cmd_coeffs, config_for(WeightParams{0.0, 0.0, 0.0, 0.2, 1.0, 1.0}, 100));
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == std::vector<std::string>{"n", "a_tilde_sq", "a", "b"});
  for (std::size_t n = 0; n <= 100; ++n) {
    const auto& r = rows[n + 1];
    REQUIRE(r.size() == 4);
    CHECK(std::stoul(r[0]) == n);
    const bool has_a = n >= 1 && n <= 49;
    const bool has_b = n <= 49;
    CHECK(r[2].empty() != has_a);
    CHECK(r[3].empty() != has_b);
    if (has_a) {
      const double nn = static_cast<double>(n);
      const double a = std::stod(r[2]);
      CHECK(std::abs(a * a - nn * nn / (4.0 * nn * nn - 1.0)) <= 1e-12);
    }
    if (has_b) {
      CHECK(std::abs(std::stod(r[3])) <= 1e-12);
    }
  }
}

TEST_CASE("coefficient table for Chebyshev") {
  const Output o = invoke(cli::cmd_coeffs, config_for(WeightParams{-0.5, -0.5, 0.0, 0.6, 1.0, 1.0}, 50));
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  for (std::size_t n = 2; n <= 50; ++n) {
    CHECK(std::abs(std::stod(rows[n + 1][1]) - 0.25) <= 1e-14);
  }
}

TEST_CASE("numbers round-trip and output is deterministic") {
  RunConfig c = config_for(WeightParams{0.3, -0.2, 0.7, 0.25, 1.0, 2.0}, 40);
  const Output first = invoke(cli::cmd_coeffs, c);
  const Output second = invoke(cli::cmd_coeffs, c);
  CHECK(first.out == second.out);
  for (const auto& r : parse_csv(first.out)) {
    if (r[0] == "n" || r[1].empty()) {
      continue;
    }
    const double v = std::stod(r[1]);
    CHECK(format_double(v) == r[1]);
    CHECK(std::stod(format_double(v)) == v);
  }
  c.format = Format::record;
  const Output rec = invoke(cli::cmd_coeffs, c);
  const nlohmann::json j = nlohmann::json::parse(rec.out);
  CHECK(j["N"] == 40);
  CHECK(j["rows"].size() == 41);
  CHECK(j["rows"][0]["a"].is_null());
  CHECK(j["rows"][40]["b"].is_null());
  CHECK(j["params"]["lambda"].get<double>() == doctest::Approx(std::log(2.0) / (2.0 * std::numbers::pi)));
}

TEST_CASE("requested lambda drives the calibration") {
  RunConfig c = config_for(WeightParams{0.3, -0.2, 0.7, 0.25, 1.0, 1.0}, 10);
  c.target_lambda = std::log(2.0) / (2.0 * std::numbers::pi);
  c.format = Format::record;
  const Output o = invoke(cli::cmd_coeffs, c);
  REQUIRE(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  CHECK(j["calibration"] == "lambda");
  CHECK(j["params"]["A"].is_null());
  CHECK(std::abs(j["a1_sq"].get<double>() - 0.23872135783293018972) <= 1e-5);
}

TEST_CASE("fit report for the oscillating case") {
  RunConfig c = config_for(WeightParams{0.0, 0.0, 1.0, 0.5, 1.0, 1.0}, 200000);
  c.format = Format::record;
  const Output o = invoke(cli::cmd_fit, c);
  REQUIRE(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  for (const char* key : {"params", "run", "window", "estimates", "predictions", "deltas", "flags"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["predictions"]["K"].get<double>() == doctest::Approx(0.25));
  CHECK(j["deltas"]["K_rel"].get<double>() <= 0.02);
  CHECK(j["deltas"]["phi"].get<double>() <= 0.05);
  CHECK(std::abs(j["deltas"]["c_alt"].get<double>()) <= 1e-2);
  CHECK(j["flags"]["amplitude_consistent_with_zero"] == false);
}

TEST_CASE("fit report flags a vanishing amplitude") {
  RunConfig c = config_for(WeightParams{0.0, 0.0, 0.0, 0.3, 1.0, 1.0}, 20000);
  c.format = Format::record;
  const Output o = invoke(cli::cmd_fit, c);
  REQUIRE(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  CHECK(j["flags"]["amplitude_consistent_with_zero"] == true);
  CHECK(j["predictions"]["phi"].is_null());
  CHECK(j["deltas"]["K_rel"].is_null());
}

TEST_CASE("fit of a synthetic input file") {
  const std::string path = std::string(FREUDREC_TEST_TMP) + "/synthetic_tail.csv";
  const double theta0 = std::acos(0.2);
  const double lambda = -0.35;
  {
    std::ofstream f(path);
    f << "n,y\n";
    for (int n = 500; n <= 3000; ++n) {
      const double nn = n;
      const double y = -(0.7 + 0.5) * ((n % 2 == 0) ? 1.0 : -1.0) / (2.0 * nn) +
                       0.4 * std::cos(nn * theta0 - 2.0 * lambda * std::log(nn) + 2.2) / nn;
      f << n << "," << format_double(y) << "\n";
    }
  }
  RunConfig c;
  c.weight = WeightParams{0.0, 0.7, 0.0, 0.2, 1.0, 1.0};
  c.target_lambda = lambda;
  c.input = path;
  c.format = Format::record;
  const Output o = invoke(cli::cmd_fit, c);
  REQUIRE(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  CHECK(std::abs(j["estimates"]["K_hat"].get<double>() - 0.4) <= 1e-10);
  CHECK(std::abs(j["estimates"]["phi_hat"].get<double>() + 2.2) <= 1e-10);
  CHECK(std::abs(j["estimates"]["c_alt"].get<double>() + 0.6) <= 1e-10);
  std::remove(path.c_str());
}

TEST_CASE("errors produce a diagnostic and a nonzero exit") {
  RunConfig bad = config_for(WeightParams{-2.0, 0.0, 0.0, 0.0, 1.0, 1.0}, 10);
  Output o = invoke(cli::cmd_coeffs, bad);
  CHECK(o.code != 0);
  CHECK(o.err.find("alpha") != std::string::npos);
  CHECK(o.out.empty());

  o = invoke(cli::cmd_fit, config_for(WeightParams{}, 5000));
  CHECK(o.code != 0);
  CHECK(o.err.find("10000") != std::string::npos);

  RunConfig far = config_for(WeightParams{0.3, -0.2, 0.7, 0.25, 1.0, 1.0}, 10000);
  far.target_lambda = 1e3;
  o = invoke(cli::cmd_coeffs, far);
  CHECK(o.code != 0);
  CHECK(o.err.find("not reachable") != std::string::npos);

  RunConfig window = config_for(WeightParams{}, 20000);
  window.window_fraction = 1.5;
  CHECK(invoke(cli::cmd_fit, window).code != 0);

  RunConfig missing;
  missing.input = std::string(FREUDREC_TEST_TMP) + "/does_not_exist.csv";
  o = invoke(cli::cmd_fit, missing);
  CHECK(o.code != 0);
  CHECK(o.err.find("cannot open") != std::string::npos);
}

TEST_CASE("verify") {
  RunConfig c;
  Output o = invoke(cli::cmd_verify, c);
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);

  c.inject_perturbation = true;
  o = invoke(cli::cmd_verify, c);
  CHECK(o.code != 0);
  CHECK(o.err.find("Legendre") != std::string::npos);

  RunConfig grid;
  grid.grid = true;
  grid.format = Format::record;
  o = invoke(cli::cmd_verify, grid);
  CHECK(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  int oracle_checks = 0;
  for (const auto& check : j["checks"]) {
    oracle_checks += check["check"].get<std::string>().find("oracle") != std::string::npos ? 1 : 0;
  }
  CHECK(oracle_checks == 5);
  CHECK(j["passed"] == true);
}

}
