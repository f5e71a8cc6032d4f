#include "freudrec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "freudrec/errors.hpp"
#include "freudrec/freud_recurrence.hpp"
#include "freudrec/report.hpp"
#include "freudrec/szego.hpp"
#include "freudrec/tail_fit.hpp"
#include "freudrec/verify.hpp"

namespace freudrec::cli {

namespace {

struct Calibrated {
  FreudParams params;
  double a1_sq = 0.0;
  const char* source = "weights";
};

Calibrated calibrate(const RunConfig& config) {
  Calibrated c;
  if (config.target_lambda) {
    const WeightParams& w = config.weight;
    c.params = freud_params(w.alpha, w.beta, w.gamma, w.x0, *config.target_lambda);
    c.a1_sq = solve_a1_for_lambda(c.params, std::max(config.n, kShootingLength));
    c.source = "lambda";
  } else {
    c.params = freud_params(config.weight);
    c.a1_sq = a1_sq_from_weights(config.weight);
  }
  return c;
}

Record params_record(const RunConfig& config, const Calibrated& c) {
  Record r;
  r["alpha"] = config.weight.alpha;
  r["beta"] = config.weight.beta;
  r["gamma"] = config.weight.gamma;
  r["x0"] = config.weight.x0;
  if (config.target_lambda) {
    r["A"] = nullptr;
    r["B"] = nullptr;
  } else {
    r["A"] = config.weight.A;
    r["B"] = config.weight.B;
  }
  r["lambda"] = c.params.lambda;
  r["theta0"] = c.params.theta0;
  return r;
}

Record optional_number(const std::optional<double>& v) { return v ? Record(*v) : Record(nullptr); }

void emit(const RunConfig& config, const Record& record, std::ostream& out) {
  if (config.format == Format::record) {
    write_record(out, record);
  } else {
    write_record_csv(out, record);
  }
}

TailSample read_tail_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError(fmt::format("cannot open input file '{}'", path));
  }
  TailSample sample;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double n = 0.0;
    double y = 0.0;
    if (!(fields >> n >> y)) {
      if (sample.indices.empty() && line_no == 1) {
        continue;  // header
      }
      throw DomainError(fmt::format("{}:{}: expected two numeric columns (n, y_n)", path, line_no));
    }
    if (n < 2.0 || n != std::floor(n) || (!sample.indices.empty() && n <= static_cast<double>(sample.indices.back()))) {
      throw DomainError(fmt::format("{}:{}: indices must be integers >= 2 in increasing order", path, line_no));
    }
    sample.indices.push_back(static_cast<std::size_t>(n));
    sample.y.push_back(y);
  }
  return sample;
}

Record fit_record(const FitResult& fit) {
  Record r;
  r["K_hat"] = fit.K_hat;
  r["phi_hat"] = fit.phi_hat;
  r["c_alt"] = fit.c_alt;
  r["rms_residual"] = fit.rms_residual;
  r["condition"] = fit.condition;
  return r;
}

int fit_synthetic(const RunConfig& config, std::ostream& out) {
  const TailSample sample = read_tail_file(*config.input);
  const WeightParams& w = config.weight;
  const double lambda = config.target_lambda ? *config.target_lambda : jump_lambda(w.A, w.B);
  const double theta0 = std::acos(w.x0);
  const FitResult fit = fit_form10(sample, w.beta, theta0, lambda);
  Record report;
  report["input"] = *config.input;
  report["samples"] = sample.indices.size();
  report["beta"] = w.beta;
  report["theta0"] = theta0;
  report["lambda"] = lambda;
  report["estimates"] = fit_record(fit);
  emit(config, report, out);
  return 0;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

void validate_config(const RunConfig& config, bool needs_long_run) {
  if (config.target_lambda) {
    const WeightParams& w = config.weight;
    validate(WeightParams{w.alpha, w.beta, w.gamma, w.x0, 1.0, 1.0});
    if (!std::isfinite(*config.target_lambda)) {
      throw DomainError("--lambda must be finite");
    }
  } else {
    validate(config.weight);
  }
  if (config.n < 1) {
    throw DomainError("--n must be at least 1");
  }
  if (needs_long_run && config.n < 10000) {
    throw DomainError(fmt::format("fit needs --n >= 10000 (got {})", config.n));
  }
  if (!(config.window_fraction > 0.0 && config.window_fraction < 1.0)) {
    throw DomainError(fmt::format("--window must lie in (0, 1) (got {})", config.window_fraction));
  }
}

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config, false);
    const Calibrated c = calibrate(config);
    const CoeffSequence seq = run(c.params, c.a1_sq, config.n);
    const ContractedCoeffs cc = contract(seq);
    const std::size_t contracted_max = (config.n - 1) / 2;

    if (config.format == Format::csv) {
      out << "n,a_tilde_sq,a,b\n";
      for (std::size_t n = 0; n <= seq.last_index(); ++n) {
        out << n << "," << format_double(seq.a_tilde_sq(n)) << ",";
        if (n >= 1 && n <= contracted_max) {
          out << format_double(cc.a[n]);
        }
        out << ",";
        if (n <= contracted_max) {
          out << format_double(cc.b[n]);
        }
        out << "\n";
      }
      return 0;
    }
    Record report;
    report["params"] = params_record(config, c);
    report["calibration"] = c.source;
    report["a1_sq"] = c.a1_sq;
    report["N"] = config.n;
    Record rows = Record::array();
    for (std::size_t n = 0; n <= seq.last_index(); ++n) {
      Record row;
      row["n"] = n;
      row["a_tilde_sq"] = seq.a_tilde_sq(n);
      row["a"] = (n >= 1 && n <= contracted_max) ? Record(cc.a[n]) : Record(nullptr);
      row["b"] = n <= contracted_max ? Record(cc.b[n]) : Record(nullptr);
      rows.push_back(std::move(row));
    }
    report["rows"] = std::move(rows);
    write_record(out, report);
    return 0;
  });
}

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.input) {
      return fit_synthetic(config, out);
    }
    validate_config(config, true);
    const Calibrated c = calibrate(config);
    const CoeffSequence seq = run(c.params, c.a1_sq, config.n);
    const FreudParams& p = c.params;

    const LimitEstimate limits = estimate_limits(seq, config.window_fraction);
    const std::size_t big_n = seq.last_index();
    const auto lo = static_cast<std::size_t>(std::ceil((1.0 - config.window_fraction) * static_cast<double>(big_n)));
    const TailSample sample = tail_sample(seq, lo, big_n);
    const FitResult fit = fit_form10(sample, p.beta, p.theta0, p.lambda);
    const ConjectureFit cfit = fit_conjecture(contract(seq), lo / 2, big_n / 2, p.theta0, p.lambda);

    const SzegoConstants szego = kappa_ratios(p);
    const ConjectureConstants pred = conjecture_constants(p);
    const FitComparison cmp = compare(fit, pred, p.beta);

    Record report;
    report["params"] = params_record(config, c);
    report["run"] = {{"N", big_n}, {"a1_sq", c.a1_sq}, {"calibration", c.source}};
    report["window"] = {{"lo", sample.indices.front()}, {"hi", sample.indices.back()}, {"points", sample.indices.size()}};

    Record est;
    est["lambda_hat"] = limits.lambda;
    est["xi_hat"] = limits.xi;
    est["eta_hat"] = limits.eta;
    est.update(fit_record(fit));
    est["M_hat"] = cfit.M_from_a;
    est["Phi_hat"] = cfit.Phi_from_a;
    report["estimates"] = std::move(est);

    Record prd;
    prd["xi"] = szego.xi;
    prd["eta"] = szego.eta;
    prd["K"] = pred.K;
    prd["phi"] = optional_number(pred.phi);
    prd["M"] = pred.M;
    prd["Phi"] = optional_number(pred.Phi);
    prd["c_alt"] = -0.5 * (p.beta + 0.5);
    report["predictions"] = std::move(prd);

    Record delta;
    delta["lambda"] = limits.lambda - p.lambda;
    delta["xi"] = limits.xi - szego.xi;
    delta["eta"] = limits.eta - szego.eta;
    delta["K_rel"] = optional_number(cmp.amplitude_rel_error);
    delta["phi"] = optional_number(cmp.phase_error);
    delta["c_alt"] = cmp.alt_error;
    delta["M_rel"] = pred.M > 0.0 ? Record(std::abs(cfit.M_from_a - pred.M) / pred.M) : Record(nullptr);
    delta["Phi"] = pred.Phi ? Record(phase_distance(cfit.Phi_from_a, *pred.Phi)) : Record(nullptr);
    report["deltas"] = std::move(delta);
    report["flags"] = {{"amplitude_consistent_with_zero", cmp.amplitude_consistent_with_zero}};
    emit(config, report, out);
    return 0;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<CheckResult> results =
        run_verification(VerifyOptions{config.grid, config.inject_perturbation});
    bool all = true;
    Record report = Record::array();
    for (const CheckResult& r : results) {
      all = all && r.passed;
      if (config.format == Format::csv) {
        continue;
      }
      report.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (config.format == Format::record) {
      write_record(out, Record{{"checks", report}, {"passed", all}});
    } else {
      out << "check,status,detail\n";
      for (const CheckResult& r : results) {
        out << '"' << r.name << "\"," << (r.passed ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
      }
    }
    if (!all) {
      for (const CheckResult& r : results) {
        if (!r.passed) {
          err << "failed: " << r.name << " (" << r.detail << ")\n";
        }
      }
      return 1;
    }
    return 0;
  });
}

}  // namespace freudrec::cli
