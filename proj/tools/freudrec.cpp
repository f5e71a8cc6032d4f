#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "freudrec/cli.hpp"

namespace {

void add_common(CLI::App& cmd, freudrec::cli::RunConfig& config, std::optional<double>& lambda,
                std::string& format, std::string& out_path) {
  cmd.add_option("--alpha", config.weight.alpha, "exponent at +1 (> -1)")->capture_default_str();
  cmd.add_option("--beta", config.weight.beta, "exponent at -1 (> -1)")->capture_default_str();
  cmd.add_option("--gamma", config.weight.gamma, "exponent at x0 (> -1)")->capture_default_str();
  cmd.add_option("--x0", config.weight.x0, "interior singular point in (-1, 1)")->capture_default_str();
  cmd.add_option("--A", config.weight.A, "scale on (x0, 1)")->capture_default_str();
  cmd.add_option("--B", config.weight.B, "scale on (-1, x0)")->capture_default_str();
  cmd.add_option("--lambda", lambda,
                 "requested jump log(B/A)/(2 pi); when given it overrides --A/--B and a~_1^2 is found by shooting");
  cmd.add_option("--n", config.n, "largest index N of a~_n^2")->capture_default_str();
  cmd.add_option("--window", config.window_fraction, "tail window fraction: n in [(1-w) N, N]")
      ->capture_default_str();
  cmd.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "record"}))->capture_default_str();
  cmd.add_option("--out", out_path, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurrence coefficients of generalized Jacobi weights from Freud's equations"};
  app.require_subcommand(1);

  freudrec::cli::RunConfig config;
  std::optional<double> lambda;
  std::string format = "csv";
  std::string out_path;
  std::string input;

  CLI::App* coeffs = app.add_subcommand("coeffs", "table of (n, a~_n^2, a_n, b_n)");
  CLI::App* fit = app.add_subcommand("fit", "fit the O(1/n) tail and compare with the predicted constants");
  CLI::App* verify = app.add_subcommand("verify", "closed-form and oracle self-checks; exit 0 iff all pass");
  for (CLI::App* cmd : {coeffs, fit, verify}) {
    add_common(*cmd, config, lambda, format, out_path);
  }
  fit->add_option("--input", input, "fit (n, y_n) pairs read from a comma-separated file instead of a run");
  verify->add_flag("--grid", config.grid, "cross-check the Stieltjes oracle on the five-point grid");
  verify->add_flag("--inject-perturbation", config.inject_perturbation, "test hook: corrupt one coefficient")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  config.target_lambda = lambda;
  config.format = format == "record" ? freudrec::cli::Format::record : freudrec::cli::Format::csv;
  if (!input.empty()) {
    config.input = input;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  if (coeffs->parsed()) {
    return freudrec::cli::cmd_coeffs(config, out, std::cerr);
  }
  if (fit->parsed()) {
    return freudrec::cli::cmd_fit(config, out, std::cerr);
  }
  return freudrec::cli::cmd_verify(config, out, std::cerr);
}
