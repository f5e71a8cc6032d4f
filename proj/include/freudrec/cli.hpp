#pragma once

// Subcommands of the freudrec tool, callable in-process.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "freudrec/calibration.hpp"
#include "freudrec/weights.hpp"

namespace freudrec::cli {

enum class Format { csv, record };

struct RunConfig {
  WeightParams weight;
  std::optional<double> target_lambda;  // overrides A and B when set
  std::size_t n = 1000;
  double window_fraction = kDefaultWindowFraction;
  Format format = Format::csv;
  std::optional<std::string> input;  // fit: (n, y_n) file instead of a run
  bool grid = false;                 // verify
  bool inject_perturbation = false;  // verify test hook
};

/// Run length used to calibrate a requested lambda when N itself is short.
inline constexpr std::size_t kShootingLength = 100000;

/// Throws DomainError when the configuration is inconsistent.
void validate_config(const RunConfig& config, bool needs_long_run);

/// Each returns the process exit code; diagnostics go to `err`.
int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace freudrec::cli
