#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "saalab/estimators.hpp"
#include "saalab/problem.hpp"
#include "saalab/schedule.hpp"
#include "saalab/test_function.hpp"
#include "saalab/vector.hpp"

namespace saalab::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Flat `key = value` experiment description. Vectors and lists are
// comma-separated; `#` starts a comment.
//
//   problem          rotation | quadratic          (required)
//   initial          comma-separated reals          (required)
//   mu, sigma        quadratic noise parameters     (default 1,-1 and 1)
//   epsilon, eta     learning rate eta * n^(eps-1)  (default 0.25, 1)
//   batch_size       integer or per-step table      (default 1)
//   psi              sin_sum | linear               (default sin_sum)
//   psi_coefficients coefficients of linear psi     (default e_1)
//   checkpoints      sorted unique step indices     (default 1,2,4,...,4096)
//   samples          trajectories, >= 2             (default 10000)
//   seed             64-bit master seed             (default 1)
//   kind             weak | strong | both           (default weak)
//   output           CSV path                       (default series.csv)
//   fit_window       n_min:n_max for the rate fit   (default all)
struct ExperimentConfig {
  std::string problem_id;
  ProblemParams problem_params;
  double epsilon = 0.25;
  double eta = 1.0;
  std::vector<std::uint32_t> batch_sizes{1};
  Vector initial;
  std::string psi_id = "sin_sum";
  std::optional<Vector> psi_coefficients;
  std::vector<std::uint64_t> checkpoints;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::vector<ErrorKind> kinds{ErrorKind::weak};
  std::string output_path = "series.csv";
  std::optional<RateWindow> fit_window;

  Schedule schedule() const;
  TestFunction psi() const;
};

std::vector<std::uint64_t> default_checkpoints();

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// "a:b" with a <= b.
RateWindow parse_window(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace saalab::cli
