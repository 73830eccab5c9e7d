#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "saalab/cli/commands.hpp"
#include "saalab/cli/config.hpp"

namespace cli = saalab::cli;

int main(int argc, char** argv) {
  CLI::App app{"saa-lab: weak and strong error experiments for stochastic approximation"};
  app.require_subcommand(1);

  cli::RunOptions run;
  std::optional<unsigned> workers;
  auto* run_cmd = app.add_subcommand("run", "Simulate a config and write the error CSV");
  run_cmd->add_option("config", run.config_path, "Config file (key = value)")->required();
  run_cmd->add_option("--workers", workers, "Worker threads (env SAA_LAB_WORKERS)");
  run_cmd->add_option("--output", run.output_override, "Override the config's output path");
  run_cmd->add_option("--svg", run.svg_path, "Write a log-log SVG chart");

  cli::FitOptions fit;
  std::string window = "1:18446744073709551615";
  std::string fit_kind;
  auto* fit_cmd = app.add_subcommand("fit", "Fit log|error| against log n from a CSV");
  fit_cmd->add_option("csv", fit.csv_path, "CSV written by run")->required();
  fit_cmd->add_option("--window", window, "n_min:n_max");
  fit_cmd->add_option("--kind", fit_kind, "weak or strong (default: first kind in file)");

  cli::BoundsOptions bounds;
  std::string lambdas = "0.25,0.5,0.75";
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate K(lambda) and the weak-error inequalities");
  bounds_cmd->add_option("--epsilon", bounds.epsilon)->capture_default_str();
  bounds_cmd->add_option("--eta", bounds.eta)->capture_default_str();
  bounds_cmd->add_option("--L", bounds.L)->capture_default_str();
  bounds_cmd->add_option("--lambda", lambdas, "Comma-separated lambdas")->capture_default_str();
  bounds_cmd->add_option("--n-max", bounds.n_max)->capture_default_str();

  cli::CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Probe a problem's hypotheses numerically");
  check_cmd->add_option("problem", check.problem_id, "rotation or quadratic")->required();
  check_cmd->add_option("--samples", check.samples)->capture_default_str();
  check_cmd->add_option("--draws", check.draws_per_point, "MC draws per growth probe")
      ->capture_default_str();
  check_cmd->add_option("--seed", check.seed)->capture_default_str();
  check_cmd->add_option("--L", check.monotonicity_L, "Override the monotonicity constant");
  check_cmd->add_option("--L-coercivity", check.coercivity_L,
                        "Override the coercivity constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  if (*run_cmd) {
    run.workers = cli::resolve_worker_count(workers);
    return cli::cmd_run(run, std::cout, std::cerr);
  }
  if (*fit_cmd) {
    try {
      fit.window = cli::parse_window(window);
      if (!fit_kind.empty()) {
        fit.kind = saalab::parse_error_kind(fit_kind);
        if (!fit.kind) throw std::invalid_argument("--kind must be weak or strong");
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kConfigError;
    }
    return cli::cmd_fit(fit, std::cout, std::cerr);
  }
  if (*bounds_cmd) {
    try {
      bounds.lambdas = cli::parse_real_list(lambdas);
    } catch (const std::exception& e) {
      std::cerr << "error: --lambda: " << e.what() << '\n';
      return cli::kConfigError;
    }
    return cli::cmd_bounds(bounds, std::cout, std::cerr);
  }
  return cli::cmd_check(check, std::cout, std::cerr);
}
