#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "saalab/problem.hpp"
#include "saalab/schedule.hpp"
#include "saalab/test_function.hpp"
#include "saalab/vector.hpp"

namespace saalab {

enum class ErrorKind { weak, strong };

std::string_view to_string(ErrorKind kind) noexcept;
std::optional<ErrorKind> parse_error_kind(std::string_view text) noexcept;

// z-value of the two-sided 95% normal interval.
inline constexpr double kZ95 = 1.96;
// Checkpoints enter fits and envelopes only if |estimate| > this * half_width.
inline constexpr double kSignalDominance = 3.0;

// Per-checkpoint Monte Carlo estimates. Weak series store the signed
// E[psi(Theta_n)] - psi(Xi); strong series store E||Theta_n - Xi||^2.
struct ErrorSeries {
  ErrorKind kind = ErrorKind::weak;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> estimates;
  std::vector<double> half_widths;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  double abs_estimate(std::size_t i) const;
  // |estimate| > 3 * half_width.
  bool signal_dominates(std::size_t i) const;
};

struct McOptions {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 1;
  // Trajectories per reduction chunk. Results depend on this value but not
  // on `workers`.
  std::uint64_t chunk_size = 1024;
};

// A per-trajectory observable evaluated at every checkpoint.
struct Observable {
  ErrorKind kind;
  std::function<double(const Vector&)> evaluate;
};

Observable weak_observable(const TestFunction& psi, const Vector& equilibrium);
Observable strong_observable(const Vector& equilibrium);

// One pass of `options.samples` trajectories (trajectory i uses
// RngStream(seed, i)); every observable is averaged at every checkpoint.
// Chunks reduce in chunk-index order, so the result is bitwise independent of
// the worker count.
std::vector<ErrorSeries> mc_error_series(const Problem& problem, const Schedule& schedule,
                                         const Vector& initial,
                                         std::span<const std::uint64_t> checkpoints,
                                         std::span<const Observable> observables,
                                         const McOptions& options);

ErrorSeries weak_error_mc(const Problem& problem, const Schedule& schedule,
                          const Vector& initial, const TestFunction& psi,
                          std::span<const std::uint64_t> checkpoints, const McOptions& options);

ErrorSeries strong_error_mc(const Problem& problem, const Schedule& schedule,
                            const Vector& initial, std::span<const std::uint64_t> checkpoints,
                            const McOptions& options);

// prod_{k=1}^n (I + gamma_k M) initial, applied in increasing k: the exact
// E[Theta_n] when G is linear in x with mean matrix M.
Vector mean_recursion_oracle(const Matrix2& M, const Schedule& schedule, const Vector& initial,
                             std::uint64_t n);

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateWindow {
  std::uint64_t n_min = 1;
  std::uint64_t n_max = UINT64_MAX;

  bool contains(std::uint64_t n) const noexcept { return n >= n_min && n <= n_max; }
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  RateWindow window;
  std::size_t usable_points = 0;
};

// OLS of log|estimate| on log n over checkpoints n >= 1 in `window` that pass
// the signal-dominance filter. Throws InsufficientData below 3 points.
RateFit fit_rate(const ErrorSeries& series, RateWindow window = {});

// max over usable checkpoints in `window` of |estimate_n| * n^{-exponent};
// 0 when nothing is usable.
double envelope_constant(const ErrorSeries& series, double exponent, RateWindow window = {});

}  // namespace saalab
