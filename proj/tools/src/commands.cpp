#include "saalab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "saalab/bounds.hpp"
#include "saalab/cli/config.hpp"
#include "saalab/cli/csv.hpp"
#include "saalab/cli/svg.hpp"
#include "saalab/engine.hpp"
#include "saalab/problem.hpp"

namespace saalab::cli {

unsigned resolve_worker_count(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("SAA_LAB_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Rate exponent the theory guarantees: 2 eps - 1 (weak), eps - 1 (strong).
double theory_exponent(ErrorKind kind, double epsilon) {
  return kind == ErrorKind::weak ? 2.0 * epsilon - 1.0 : epsilon - 1.0;
}

// For g(x) = M (x - Xi): E[Theta_n] - Xi = prod (I + gamma_k M) (xi - Xi), so a
// linear psi has an exact weak error. Returns the number of rows whose MC
// estimate sits more than 3 half-widths away, or nullopt if not applicable.
std::optional<std::size_t> oracle_violations(const ExperimentConfig& cfg, const Problem& problem,
                                             const ErrorSeries& weak) {
  if (cfg.psi_id != "linear" || !problem.mean_matrix()) return std::nullopt;
  const TestFunction psi = cfg.psi();
  const Vector offset = cfg.initial - problem.equilibrium();
  const Vector zero(offset.dim(), 0.0);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < weak.checkpoints.size(); ++i) {
    const Vector mean =
        mean_recursion_oracle(*problem.mean_matrix(), cfg.schedule(), offset, weak.checkpoints[i]);
    const double exact = psi.value(mean) - psi.value(zero);
    if (std::abs(weak.estimates[i] - exact) > 3.0 * weak.half_widths[i]) ++bad;
  }
  return bad;
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  std::shared_ptr<const Problem> problem;
  try {
    cfg = load_config(options.config_path);
    if (options.output_override) cfg.output_path = *options.output_override;
    problem = make_problem(cfg.problem_id, cfg.problem_params);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kConfigError;
  }

  const Schedule schedule = cfg.schedule();
  std::vector<Observable> observables;
  for (const auto kind : cfg.kinds) {
    observables.push_back(kind == ErrorKind::weak
                              ? weak_observable(cfg.psi(), problem->equilibrium())
                              : strong_observable(problem->equilibrium()));
  }

  McOptions mc;
  mc.samples = cfg.samples;
  mc.seed = cfg.seed;
  mc.workers = options.workers;
  std::vector<ErrorSeries> series;
  try {
    series = mc_error_series(*problem, schedule, cfg.initial, cfg.checkpoints, observables, mc);
  } catch (const SimulationError& e) {
    err << "error: simulation failed: " << e.what() << '\n';
    return kSimulationError;
  } catch (const std::exception& e) {
    err << "error: simulation failed: " << e.what() << '\n';
    return kSimulationError;
  }

  {
    std::ofstream csv(cfg.output_path, std::ios::binary);
    if (!csv) {
      err << "error: config key 'output': cannot write '" << cfg.output_path << "'\n";
      return kConfigError;
    }
    write_series_csv(csv, series, schedule);
  }

  const RateWindow window = cfg.fit_window.value_or(RateWindow{});
  out << "problem=" << cfg.problem_id << '\n'
      << "samples=" << cfg.samples << '\n'
      << "seed=" << cfg.seed << '\n'
      << "csv=" << cfg.output_path << '\n';
  std::optional<RateFit> first_fit;
  for (const auto& s : series) {
    const std::string kind(to_string(s.kind));
    const double exponent = theory_exponent(s.kind, cfg.epsilon);
    out << kind << ".theory_exponent=" << format_real(exponent) << '\n'
        << kind << ".envelope_constant=" << format_real(envelope_constant(s, exponent, window))
        << '\n';
    try {
      const RateFit fit = fit_rate(s, window);
      out << kind << ".fit_slope=" << format_real(fit.slope) << '\n'
          << kind << ".fit_intercept=" << format_real(fit.intercept) << '\n'
          << kind << ".fit_r_squared=" << format_real(fit.r_squared) << '\n'
          << kind << ".fit_usable_points=" << fit.usable_points << '\n';
      if (&s == &series.front()) first_fit = fit;
    } catch (const InsufficientData& e) {
      out << kind << ".fit=unavailable (" << e.what() << ")\n";
    }
    if (s.kind == ErrorKind::weak) {
      if (const auto bad = oracle_violations(cfg, *problem, s)) {
        out << "weak.oracle_rows_outside_3hw=" << *bad << '\n';
      }
    }
  }
  out << "note=envelope_constant is an empirical stand-in for the unknown theoretical constant\n";

  if (options.svg_path) {
    std::ofstream svg(*options.svg_path);
    if (!svg) {
      err << "error: cannot write '" << *options.svg_path << "'\n";
      return kConfigError;
    }
    write_loglog_svg(svg, series.front(), first_fit);
  }
  return kOk;
}

int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err) {
  ErrorSeries series;
  try {
    std::ifstream in(options.csv_path);
    if (!in) throw CsvSchemaError("cannot open '" + options.csv_path + "'");
    series = read_series_csv(in, options.kind);
  } catch (const CsvSchemaError& e) {
    err << "error: csv: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    const RateFit fit = fit_rate(series, options.window);
    out << "kind=" << to_string(series.kind) << '\n'
        << "slope=" << format_real(fit.slope) << '\n'
        << "intercept=" << format_real(fit.intercept) << '\n'
        << "r_squared=" << format_real(fit.r_squared) << '\n'
        << "usable_points=" << fit.usable_points << '\n';
  } catch (const InsufficientData& e) {
    err << "error: no usable checkpoints: " << e.what() << '\n';
    return kInsufficientData;
  }
  return kOk;
}

int cmd_bounds(const BoundsOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<Schedule> schedule;
  try {
    schedule.emplace(o.epsilon, o.eta);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (!(o.L > 0.0) || o.n_max < 100 || o.lambdas.empty()) {
    err << "error: need L > 0, n_max >= 100 and at least one lambda\n";
    return kConfigError;
  }
  for (double lambda : o.lambdas) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
      err << "error: lambda must lie in (0, 1), got " << format_real(lambda) << '\n';
      return kConfigError;
    }
  }

  bool violated = false;
  auto check = [&](const std::string& what, double margin) {
    if (margin < -kMarginTolerance) {
      violated = true;
      err << "violation: " << what << " margin=" << format_real(margin) << '\n';
    }
  };

  out << "epsilon=" << format_real(o.epsilon) << " eta=" << format_real(o.eta)
      << " L=" << format_real(o.L) << " n_max=" << o.n_max << '\n';
  double best = std::numeric_limits<double>::infinity();
  double best_lambda = 0.0;
  for (double lambda : o.lambdas) {
    KLambdaResult k;
    try {
      k = k_lambda({lambda, o.epsilon, o.eta, o.L}, o.n_max);
    } catch (const SupNotBracketed& e) {
      err << "error: " << e.what() << '\n';
      return kInsufficientData;
    }
    out << "K lambda=" << format_real(lambda) << " value=" << format_real(k.value)
        << " argmax=" << k.argmax << " tail_limit=" << format_real(k.tail_limit) << '\n';
    check("K(lambda) >= tail limit", k.value - k.tail_limit);
    if (k.value < best) {
      best = k.value;
      best_lambda = lambda;
    }
  }
  out << "K_min=" << format_real(best) << " lambda=" << format_real(best_lambda) << '\n';

  int row = 0;
  auto sum_row = [&](double nu, std::uint64_t l) {
    const auto b = partial_sum_bounds(nu, l);
    const double margin = std::min(b.sum - b.lower, b.upper - b.sum);
    out << "bound[" << row++ << "] partial_sum nu=" << format_real(nu) << " l=" << l
        << " lower=" << format_real(b.lower) << " sum=" << format_real(b.sum)
        << " upper=" << format_real(b.upper) << " margin=" << format_real(margin) << '\n';
    check("partial_sum", margin);
  };
  auto integral_row = [&](double L, const TimeGrid& grid, std::size_t k) {
    const auto r = discrete_integral_bound(L, grid, k);
    out << "bound[" << row++ << "] discrete_integral L=" << format_real(L) << " k=" << k
        << " lhs=" << format_real(r.lhs) << " rhs=" << format_real(r.rhs)
        << " margin=" << format_real(r.margin) << '\n';
    check("discrete_integral", r.margin);
  };

  sum_row(0.0, 5);
  for (std::uint64_t l : {1u, 100u, 10000u}) sum_row(1.0 - o.epsilon, l);
  integral_row(1.0, TimeGrid({0.0, 1.0}), 2);
  const TimeGrid grid = TimeGrid::from_schedule(*schedule, 5000);
  for (std::size_t k : {2u, 5u, 50u, 500u, 5000u}) integral_row(o.L, grid, k);

  out << "note=C(T) is not computed; weak envelopes use an empirical constant\n";
  return violated ? kViolation : kOk;
}

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  std::shared_ptr<const Problem> problem;
  try {
    problem = make_problem(o.problem_id);
  } catch (const UnknownProblem& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (o.samples == 0 || o.draws_per_point == 0) {
    err << "error: samples and draws must be >= 1\n";
    return kConfigError;
  }
  RngStream rng(o.seed, 0);
  const double mono_L = o.monotonicity_L.value_or(problem->monotonicity_L());
  const double coer_L = o.coercivity_L.value_or(problem->coercivity_L());
  const double mono = check_monotonicity(*problem, o.samples, rng, mono_L);
  const double coer = check_coercivity(*problem, o.samples, rng, coer_L);
  const double ratio = check_growth(*problem, o.samples, o.draws_per_point, rng);
  const double growth_margin = problem->growth_c() - ratio;

  auto status = [](double margin) { return margin >= -kMarginTolerance ? "pass" : "FAIL"; };
  out << "problem=" << problem->id() << '\n'
      << "monotonicity L=" << format_real(mono_L) << " worst_margin=" << format_real(mono)
      << " status=" << status(mono) << '\n'
      << "coercivity L=" << format_real(coer_L) << " worst_margin=" << format_real(coer)
      << " status=" << status(coer) << '\n'
      << "growth c=" << format_real(problem->growth_c()) << " worst_ratio=" << format_real(ratio)
      << " margin=" << format_real(growth_margin) << " status=" << status(growth_margin) << '\n';
  const bool ok = std::min({mono, coer, growth_margin}) >= -kMarginTolerance;
  return ok ? kOk : kViolation;
}

}  // namespace saalab::cli
