#include "saalab/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "saalab/engine.hpp"

namespace saalab {

std::string_view to_string(ErrorKind kind) noexcept {
  return kind == ErrorKind::weak ? "weak" : "strong";
}

std::optional<ErrorKind> parse_error_kind(std::string_view text) noexcept {
  if (text == "weak") return ErrorKind::weak;
  if (text == "strong") return ErrorKind::strong;
  return std::nullopt;
}

double ErrorSeries::abs_estimate(std::size_t i) const { return std::abs(estimates.at(i)); }

bool ErrorSeries::signal_dominates(std::size_t i) const {
  return abs_estimate(i) > kSignalDominance * half_widths.at(i);
}

Observable weak_observable(const TestFunction& psi, const Vector& equilibrium) {
  const double at_equilibrium = psi.value(equilibrium);
  return {ErrorKind::weak,
          [psi, at_equilibrium](const Vector& x) { return psi.value(x) - at_equilibrium; }};
}

Observable strong_observable(const Vector& equilibrium) {
  return {ErrorKind::strong,
          [equilibrium](const Vector& x) { return squared_norm(x - equilibrium); }};
}

namespace {

// Welford accumulator; merge() is Chan's pairwise update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) noexcept {
    if (other.count == 0.0) return;
    if (count == 0.0) {
      *this = other;
      return;
    }
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * (other.count / total);
    m2 += other.m2 + delta * delta * (count * other.count / total);
    count = total;
  }
};

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::vector<ErrorSeries> mc_error_series(const Problem& problem, const Schedule& schedule,
                                         const Vector& initial,
                                         std::span<const std::uint64_t> checkpoints,
                                         std::span<const Observable> observables,
                                         const McOptions& options) {
  validate_checkpoints(checkpoints);
  if (options.samples < 2) throw std::invalid_argument("Monte Carlo needs samples >= 2");
  if (options.chunk_size == 0) throw std::invalid_argument("chunk_size must be >= 1");
  if (initial.dim() != problem.dimension()) {
    throw DimensionMismatch(problem.dimension(), initial.dim());
  }

  const std::size_t n_cp = checkpoints.size();
  const std::size_t n_obs = observables.size();
  const std::uint64_t n_chunks = (options.samples + options.chunk_size - 1) / options.chunk_size;

  // chunk -> [observable * n_cp + checkpoint]
  std::vector<std::vector<Moments>> partial(n_chunks, std::vector<Moments>(n_obs * n_cp));
  std::vector<std::exception_ptr> failures(n_chunks);
  std::atomic<std::uint64_t> next_chunk{0};
  const StepPlan plan(schedule, checkpoints.back());

  auto work = [&] {
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= n_chunks) return;
      auto& acc = partial[chunk];
      const std::uint64_t begin = chunk * options.chunk_size;
      const std::uint64_t end = std::min(options.samples, begin + options.chunk_size);
      std::uint64_t current = begin;
      try {
        for (; current < end; ++current) {
          RngStream rng(options.seed, current);
          run_path(problem, plan, initial, checkpoints, rng,
                   [&](std::size_t cp, std::uint64_t, std::span<const double> x) {
                     const Vector state(x);
                     for (std::size_t o = 0; o < n_obs; ++o) {
                       acc[o * n_cp + cp].add(observables[o].evaluate(state));
                     }
                   });
        }
      } catch (const SimulationError&) {
        failures[chunk] = std::current_exception();
      } catch (const NonFiniteValue& e) {
        failures[chunk] = std::make_exception_ptr(
            SimulationError(e.what(), options.seed, current, 0));
      } catch (...) {
        failures[chunk] = std::current_exception();
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(options.workers), n_chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Moments> total(n_obs * n_cp);
  for (const auto& chunk : partial) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k].merge(chunk[k]);
  }

  std::vector<ErrorSeries> out;
  out.reserve(n_obs);
  const double n = static_cast<double>(options.samples);
  for (std::size_t o = 0; o < n_obs; ++o) {
    ErrorSeries s;
    s.kind = observables[o].kind;
    s.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    s.samples = options.samples;
    s.seed = options.seed;
    for (std::size_t cp = 0; cp < n_cp; ++cp) {
      const Moments& m = total[o * n_cp + cp];
      const double variance = std::max(0.0, m.m2 / (n - 1.0));
      s.estimates.push_back(m.mean);
      s.half_widths.push_back(kZ95 * std::sqrt(variance / n));
    }
    out.push_back(std::move(s));
  }
  return out;
}

ErrorSeries weak_error_mc(const Problem& problem, const Schedule& schedule,
                          const Vector& initial, const TestFunction& psi,
                          std::span<const std::uint64_t> checkpoints, const McOptions& options) {
  const Observable obs[] = {weak_observable(psi, problem.equilibrium())};
  return mc_error_series(problem, schedule, initial, checkpoints, obs, options).front();
}

ErrorSeries strong_error_mc(const Problem& problem, const Schedule& schedule,
                            const Vector& initial, std::span<const std::uint64_t> checkpoints,
                            const McOptions& options) {
  const Observable obs[] = {strong_observable(problem.equilibrium())};
  return mc_error_series(problem, schedule, initial, checkpoints, obs, options).front();
}

Vector mean_recursion_oracle(const Matrix2& M, const Schedule& schedule, const Vector& initial,
                             std::uint64_t n) {
  if (initial.dim() != 2) throw DimensionMismatch(2, initial.dim());
  double x0 = initial[0];
  double x1 = initial[1];
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double gamma = schedule.step_size(k);
    const double y0 = x0 + gamma * (M(0, 0) * x0 + M(0, 1) * x1);
    const double y1 = x1 + gamma * (M(1, 0) * x0 + M(1, 1) * x1);
    x0 = y0;
    x1 = y1;
  }
  return Vector{x0, x1};
}

namespace {

std::string list_filtered(const ErrorSeries& series, RateWindow window) {
  std::string out;
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    const auto n = series.checkpoints[i];
    if (!window.contains(n)) continue;
    if (n >= 1 && series.signal_dominates(i)) continue;
    if (!out.empty()) out += ", ";
    out += std::to_string(n);
  }
  return out.empty() ? "none" : out;
}

template <typename Visit>
void for_each_usable(const ErrorSeries& series, RateWindow window, Visit&& visit) {
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    const auto n = series.checkpoints[i];
    if (n >= 1 && window.contains(n) && series.signal_dominates(i)) visit(i, n);
  }
}

}  // namespace

RateFit fit_rate(const ErrorSeries& series, RateWindow window) {
  std::vector<double> xs;
  std::vector<double> ys;
  for_each_usable(series, window, [&](std::size_t i, std::uint64_t n) {
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(series.abs_estimate(i)));
  });
  if (xs.size() < 3) {
    throw InsufficientData("rate fit needs >= 3 usable checkpoints, found " +
                           std::to_string(xs.size()) +
                           "; filtered checkpoints: " + list_filtered(series, window));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.usable_points = xs.size();
  return fit;
}

double envelope_constant(const ErrorSeries& series, double exponent, RateWindow window) {
  double worst = 0.0;
  for_each_usable(series, window, [&](std::size_t i, std::uint64_t n) {
    worst = std::max(worst, series.abs_estimate(i) * std::pow(static_cast<double>(n), -exponent));
  });
  return worst;
}

}  // namespace saalab
