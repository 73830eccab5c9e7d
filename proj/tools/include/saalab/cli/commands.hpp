#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "saalab/estimators.hpp"

namespace saalab::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kSimulationError = 3,
  kInsufficientData = 4,
  kViolation = 5,
};

// Inequality margins below this count as violations.
inline constexpr double kMarginTolerance = 1e-10;

struct RunOptions {
  std::string config_path;
  unsigned workers = 1;
  std::optional<std::string> output_override;
  std::optional<std::string> svg_path;
};

struct FitOptions {
  std::string csv_path;
  RateWindow window;
  std::optional<ErrorKind> kind;
};

struct BoundsOptions {
  double epsilon = 0.25;
  double eta = 1.0;
  double L = 0.45016;
  std::vector<double> lambdas{0.25, 0.5, 0.75};
  std::uint64_t n_max = 100000;
};

struct CheckOptions {
  std::string problem_id;
  std::uint64_t samples = 1000;
  std::uint64_t draws_per_point = 1000;
  std::uint64_t seed = 1;
  std::optional<double> monotonicity_L;
  std::optional<double> coercivity_L;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err);
int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);

// --workers when given, else SAA_LAB_WORKERS, else hardware concurrency.
unsigned resolve_worker_count(std::optional<unsigned> flag);

}  // namespace saalab::cli
