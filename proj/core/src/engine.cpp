#include "saalab/engine.hpp"

#include <algorithm>
#include <cmath>

namespace saalab {

SimulationError::SimulationError(const std::string& what, std::uint64_t seed,
                                 std::uint64_t trajectory_index, std::uint64_t step)
    : std::runtime_error(what + " (seed=" + std::to_string(seed) +
                         ", trajectory=" + std::to_string(trajectory_index) +
                         ", step=" + std::to_string(step) + ")"),
      seed_(seed),
      trajectory_index_(trajectory_index),
      step_(step) {}

namespace {

void advance_or_throw(const Problem& problem, std::span<double> x, std::span<const double> gamma,
                      std::span<const std::uint32_t> batch, std::uint64_t first_step,
                      RngStream& rng) {
  if (const auto failed = problem.advance(x, gamma, batch, first_step, rng)) {
    throw SimulationError("non-finite stochastic field G", rng.seed(), rng.stream_id(), *failed);
  }
}

}  // namespace

void validate_checkpoints(std::span<const std::uint64_t> checkpoints) {
  if (checkpoints.empty()) throw std::invalid_argument("checkpoint list is empty");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
}

Vector step(const Vector& state, std::uint64_t n, const Schedule& schedule,
            const Problem& problem, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("step index must be >= 1");
  if (state.dim() != problem.dimension()) {
    throw DimensionMismatch(problem.dimension(), state.dim());
  }
  state.require_finite("SAA state");
  std::vector<double> next(state.values());
  const double gamma = schedule.step_size(n);
  const std::uint32_t batch = schedule.batch_size(n - 1);
  advance_or_throw(problem, next, {&gamma, 1}, {&batch, 1}, n, rng);
  return Vector(std::move(next));
}

StepPlan::StepPlan(const Schedule& schedule, std::uint64_t last_step)
    : gamma_(last_step + 1, 0.0), batch_(last_step + 1, 0), draws_(last_step + 1, 0) {
  for (std::uint64_t n = 1; n <= last_step; ++n) {
    gamma_[n] = schedule.step_size(n);
    batch_[n] = schedule.batch_size(n - 1);
    draws_[n] = draws_[n - 1] + batch_[n];
  }
}

std::uint64_t run_path(const Problem& problem, const Schedule& schedule, const Vector& initial,
                       std::span<const std::uint64_t> checkpoints, RngStream& rng,
                       const CheckpointVisitor& visit) {
  validate_checkpoints(checkpoints);
  return run_path(problem, StepPlan(schedule, checkpoints.back()), initial, checkpoints, rng,
                  visit);
}

std::uint64_t run_path(const Problem& problem, const StepPlan& plan, const Vector& initial,
                       std::span<const std::uint64_t> checkpoints, RngStream& rng,
                       const CheckpointVisitor& visit) {
  validate_checkpoints(checkpoints);
  if (checkpoints.back() > plan.last_step()) {
    throw std::invalid_argument("step plan is shorter than the last checkpoint");
  }
  if (initial.dim() != problem.dimension()) {
    throw DimensionMismatch(problem.dimension(), initial.dim());
  }
  std::vector<double> x(initial.values());
  std::uint64_t done = 0;
  for (std::size_t cp = 0; cp < checkpoints.size(); ++cp) {
    const std::uint64_t target = checkpoints[cp];
    if (target > done) {
      advance_or_throw(problem, x, plan.gammas(done + 1, target), plan.batches(done + 1, target),
                       done + 1, rng);
      done = target;
    }
    visit(cp, target, x);
  }
  return plan.draws_through(done);
}

Trajectory simulate_trajectory(const Problem& problem, const Schedule& schedule,
                               const Vector& initial, std::span<const std::uint64_t> checkpoints,
                               std::uint64_t seed, std::uint64_t trajectory_index) {
  Trajectory traj{schedule, {}, seed, trajectory_index, 0};
  traj.states.emplace(0, initial);
  RngStream rng(seed, trajectory_index);
  traj.noise_draws = run_path(problem, schedule, initial, checkpoints, rng,
                              [&](std::size_t, std::uint64_t n, std::span<const double> x) {
                                traj.states.insert_or_assign(n, Vector(x));
                              });
  return traj;
}

Vector interpolate(const Trajectory& trajectory, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("interpolate: t must be >= 0");
  const std::uint64_t last = trajectory.states.rbegin()->first;
  const TimeGrid grid = TimeGrid::from_schedule(trajectory.schedule, last + 1);
  const std::size_t m = grid.floor_index(t);

  auto state_at = [&](std::size_t idx) -> const Vector& {
    auto it = trajectory.states.find(idx);
    if (it == trajectory.states.end()) {
      throw MissingCheckpoint("interpolate: grid state " + std::to_string(idx) +
                              " was not recorded; add checkpoints " + std::to_string(m) +
                              " and " + std::to_string(m + 1));
    }
    return it->second;
  };

  const Vector& lo = state_at(m);
  if (grid[m] == t) return lo;
  const Vector& hi = state_at(m + 1);
  const double w = (t - grid[m]) / (grid[m + 1] - grid[m]);
  return (1.0 - w) * lo + w * hi;
}

}  // namespace saalab
