#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "saalab/problem.hpp"
#include "saalab/rng.hpp"
#include "saalab/schedule.hpp"
#include "saalab/vector.hpp"

namespace saalab {

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, std::uint64_t seed, std::uint64_t trajectory_index,
                  std::uint64_t step);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trajectory_index() const noexcept { return trajectory_index_; }
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t seed_;
  std::uint64_t trajectory_index_;
  std::uint64_t step_;
};

class MissingCheckpoint : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// One SAA step: state + gamma_n * (1/M_{n-1}) sum_{j=1}^{M_{n-1}} G(state, Z_{n,j}).
// Draws Z_{n,1..M} from `rng` in batch order. Throws SimulationError if G is
// non-finite.
Vector step(const Vector& state, std::uint64_t n, const Schedule& schedule,
            const Problem& problem, RngStream& rng);

// Step sizes gamma_1..gamma_N and batch sizes M_0..M_{N-1}, computed once and
// shared by every trajectory of a run.
class StepPlan {
 public:
  StepPlan(const Schedule& schedule, std::uint64_t last_step);

  std::uint64_t last_step() const noexcept { return gamma_.size() - 1; }
  double gamma(std::uint64_t n) const noexcept { return gamma_[n]; }
  std::uint32_t batch(std::uint64_t n) const noexcept { return batch_[n]; }
  // Entries for steps first..last inclusive.
  std::span<const double> gammas(std::uint64_t first, std::uint64_t last) const noexcept {
    return {gamma_.data() + first, last - first + 1};
  }
  std::span<const std::uint32_t> batches(std::uint64_t first, std::uint64_t last) const noexcept {
    return {batch_.data() + first, last - first + 1};
  }
  // Noise draws consumed by steps 1..n.
  std::uint64_t draws_through(std::uint64_t n) const noexcept { return draws_[n]; }

 private:
  std::vector<double> gamma_;         // index n, entry 0 unused
  std::vector<std::uint32_t> batch_;  // index n holds M_{n-1}
  std::vector<std::uint64_t> draws_;
};

// Called at each checkpoint with (checkpoint position, step index, state).
using CheckpointVisitor =
    std::function<void(std::size_t, std::uint64_t, std::span<const double>)>;

// Runs steps 1..checkpoints.back() in place on a preallocated state and calls
// `visit` at every checkpoint (including 0 if listed). Returns the number of
// noise draws consumed.
std::uint64_t run_path(const Problem& problem, const Schedule& schedule, const Vector& initial,
                       std::span<const std::uint64_t> checkpoints, RngStream& rng,
                       const CheckpointVisitor& visit);
// As above with a precomputed plan covering checkpoints.back().
std::uint64_t run_path(const Problem& problem, const StepPlan& plan, const Vector& initial,
                       std::span<const std::uint64_t> checkpoints, RngStream& rng,
                       const CheckpointVisitor& visit);

struct Trajectory {
  Schedule schedule;
  std::map<std::uint64_t, Vector> states;
  std::uint64_t seed = 0;
  std::uint64_t trajectory_index = 0;
  std::uint64_t noise_draws = 0;
};

// Simulates one trajectory with RngStream(seed, trajectory_index). The state
// at step 0 is always recorded. Checkpoints must be sorted and non-empty.
Trajectory simulate_trajectory(const Problem& problem, const Schedule& schedule,
                               const Vector& initial, std::span<const std::uint64_t> checkpoints,
                               std::uint64_t seed, std::uint64_t trajectory_index);

// Piecewise-linear interpolant of the recorded grid states at time t.
// Throws MissingCheckpoint unless both bracketing grid states were recorded.
Vector interpolate(const Trajectory& trajectory, double t);

void validate_checkpoints(std::span<const std::uint64_t> checkpoints);

}  // namespace saalab
