#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace saalab {

class InvalidSchedule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Neumaier-compensated running sum. Addition order is the caller's; the
// result is reproducible for a fixed order.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Polynomially decaying learning rate gamma_n = eta * n^(epsilon - 1) with
// mini-batch sizes M_m (batch averaged in step m + 1).
//
// Batch sizes are given as a table indexed by m; indices past the end of
// the table reuse the last entry, so a one-entry table is a constant size.
class Schedule {
 public:
  Schedule(double epsilon, double eta, std::vector<std::uint32_t> batch_sizes = {1});

  double epsilon() const noexcept { return epsilon_; }
  double eta() const noexcept { return eta_; }
  std::span<const std::uint32_t> batch_table() const noexcept { return batch_sizes_; }

  // gamma_n = eta * n^(epsilon - 1), n >= 1.
  double step_size(std::uint64_t n) const;
  // M_m, m >= 0.
  std::uint32_t batch_size(std::uint64_t m) const noexcept;

 private:
  double epsilon_;
  double eta_;
  std::vector<std::uint32_t> batch_sizes_;
};

// t_m = eta * sum_{n=1}^m n^(epsilon-1), summed in index order with
// compensation. t_0 = 0.
double grid_time(std::uint64_t m, const Schedule& schedule);

// Strictly increasing grid t_0 = 0 < t_1 < ... < t_K.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> points);
  // Grid t_0..t_K of `schedule`; bitwise equal to grid_time(m) for each m.
  static TimeGrid from_schedule(const Schedule& schedule, std::size_t last_index);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double back() const { return points_.back(); }

  // Index of the largest grid point <= t (t beyond the last point maps to
  // the last index). Throws std::invalid_argument for negative or NaN t.
  std::size_t floor_index(double t) const;

 private:
  std::vector<double> points_;
};

// Largest grid point <= t; exact grid points map to themselves.
double floor_grid(double t, const TimeGrid& grid);

}  // namespace saalab
