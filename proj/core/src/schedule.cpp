#include "saalab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace saalab {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

Schedule::Schedule(double epsilon, double eta, std::vector<std::uint32_t> batch_sizes)
    : epsilon_(epsilon), eta_(eta), batch_sizes_(std::move(batch_sizes)) {
  if (!(epsilon_ > 0.0 && epsilon_ < 0.5)) {
    throw InvalidSchedule("epsilon must lie in (0, 1/2), got " + std::to_string(epsilon_));
  }
  if (!(eta_ > 0.0) || !std::isfinite(eta_)) {
    throw InvalidSchedule("eta must be positive and finite, got " + std::to_string(eta_));
  }
  if (batch_sizes_.empty()) throw InvalidSchedule("batch size table is empty");
  for (auto m : batch_sizes_) {
    if (m < 1) throw InvalidSchedule("batch sizes must be >= 1");
  }
}

double Schedule::step_size(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("step index must be >= 1");
  return eta_ * std::pow(static_cast<double>(n), epsilon_ - 1.0);
}

std::uint32_t Schedule::batch_size(std::uint64_t m) const noexcept {
  const auto i = std::min<std::uint64_t>(m, batch_sizes_.size() - 1);
  return batch_sizes_[static_cast<std::size_t>(i)];
}

namespace {

// Shared by grid_time and TimeGrid so both produce identical bits.
template <typename Visit>
void accumulate_grid(std::uint64_t last, const Schedule& s, Visit&& visit) {
  CompensatedSum sum;
  for (std::uint64_t n = 1; n <= last; ++n) {
    sum.add(std::pow(static_cast<double>(n), s.epsilon() - 1.0));
    visit(n, s.eta() * sum.value());
  }
}

}  // namespace

double grid_time(std::uint64_t m, const Schedule& schedule) {
  double t = 0.0;
  accumulate_grid(m, schedule, [&](std::uint64_t, double v) { t = v; });
  return t;
}

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty() || points_.front() != 0.0) {
    throw std::invalid_argument("time grid must start at 0");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1]) || !std::isfinite(points_[i])) {
      throw std::invalid_argument("time grid must be strictly increasing and finite");
    }
  }
}

TimeGrid TimeGrid::from_schedule(const Schedule& schedule, std::size_t last_index) {
  std::vector<double> pts;
  pts.reserve(last_index + 1);
  pts.push_back(0.0);
  accumulate_grid(last_index, schedule, [&](std::uint64_t, double v) { pts.push_back(v); });
  return TimeGrid(std::move(pts));
}

std::size_t TimeGrid::floor_index(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("floor_grid: t must be >= 0");
  const auto it = std::upper_bound(points_.begin(), points_.end(), t);
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

double floor_grid(double t, const TimeGrid& grid) { return grid[grid.floor_index(t)]; }

}  // namespace saalab
