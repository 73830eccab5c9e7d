#include "saalab/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace saalab {

namespace {

constexpr double kSqrt2OverPi = std::numbers::sqrt2 / std::numbers::pi;

Vector gaussian_probe(std::size_t dim, RngStream& rng) {
  std::vector<double> v(dim);
  for (double& x : v) x = kProbeScale * rng.normal();
  return Vector(std::move(v));
}

void require_dim(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim) throw DimensionMismatch(dim, x.size());
}

}  // namespace

Problem::Problem(Vector equilibrium, double monotonicity_L, double coercivity_L,
                 double growth_c, std::optional<Matrix2> mean_matrix)
    : equilibrium_(std::move(equilibrium)),
      monotonicity_L_(monotonicity_L),
      coercivity_L_(coercivity_L),
      growth_c_(growth_c),
      mean_matrix_(mean_matrix) {}

void Problem::batch_field(std::span<const double> x, std::uint32_t batch, RngStream& rng,
                          std::span<double> out) const {
  std::vector<double> noise(noise_size());
  std::vector<double> g(dimension());
  const std::size_t d = out.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::uint32_t j = 0; j < batch; ++j) {
    sample_noise(rng, noise);
    field(x, noise, g);
    for (std::size_t i = 0; i < d; ++i) out[i] += g[i];
  }
  if (batch > 1) {
    const double inv = 1.0 / static_cast<double>(batch);
    for (std::size_t i = 0; i < d; ++i) out[i] *= inv;
  }
}

std::optional<std::uint64_t> Problem::advance(std::span<double> x, std::span<const double> gamma,
                                              std::span<const std::uint32_t> batch,
                                              std::uint64_t first_step, RngStream& rng) const {
  std::vector<double> acc(x.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    batch_field(x, batch[k], rng, acc);
    for (double a : acc) {
      if (!std::isfinite(a)) return first_step + k;
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += gamma[k] * acc[i];
  }
  return std::nullopt;
}

Vector Problem::sample_field(const Vector& x, RngStream& rng) const {
  std::vector<double> noise(noise_size());
  std::vector<double> out(dimension());
  sample_noise(rng, noise);
  field(x.span(), noise, out);
  return Vector(std::move(out));
}

double rotation_sample(double u) {
  return std::numbers::pi / 4.0 + std::numbers::pi * u;
}

std::pair<double, double> rotation_cos_sin(double u) {
  // s = 3pi/4 + 2 phi keeps the libm argument inside its fast range.
  const double phi = std::numbers::pi / 2.0 * (u - 0.5);
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);
  const double c2 = (cp - sp) * (cp + sp);
  const double s2 = 2.0 * sp * cp;
  constexpr double h = std::numbers::sqrt2 / 2.0;
  return {-h * (c2 + s2), h * (c2 - s2)};
}

Vector rotation_G(const Vector& x, double s) {
  if (x.dim() != 2) throw DimensionMismatch(2, x.dim());
  const double c = std::cos(s);
  const double sn = std::sin(s);
  return Vector{c * x[0] - sn * x[1], sn * x[0] + c * x[1]};
}

Vector rotation_g(const Vector& x) {
  if (x.dim() != 2) throw DimensionMismatch(2, x.dim());
  return Vector{kSqrt2OverPi * (-x[0] - x[1]), kSqrt2OverPi * (x[0] - x[1])};
}

Matrix2 rotation_mean_matrix() {
  return Matrix2::scaled_rotation(-kSqrt2OverPi, kSqrt2OverPi);
}

RotationProblem::RotationProblem()
    : Problem(Vector{0.0, 0.0}, kSqrt2OverPi, std::numbers::pi * std::numbers::sqrt2 / 4.0,
              1.0, rotation_mean_matrix()) {}

void RotationProblem::sample_noise(RngStream& rng, std::span<double> noise) const {
  noise[0] = rotation_sample(rng.uniform());
}

void RotationProblem::field(std::span<const double> x, std::span<const double> noise,
                            std::span<double> out) const {
  require_dim(x, 2);
  const double c = std::cos(noise[0]);
  const double s = std::sin(noise[0]);
  out[0] = c * x[0] - s * x[1];
  out[1] = s * x[0] + c * x[1];
}

Vector RotationProblem::mean_field(const Vector& x) const { return rotation_g(x); }

namespace {

// Averaged rotation field at (x0, x1) over `batch` draws.
inline void rotation_batch(double x0, double x1, std::uint32_t batch, RngStream& rng, double& a0,
                           double& a1) {
  a0 = 0.0;
  a1 = 0.0;
  for (std::uint32_t j = 0; j < batch; ++j) {
    const auto [c, s] = rotation_cos_sin(rng.uniform());
    a0 += c * x0 - s * x1;
    a1 += s * x0 + c * x1;
  }
  if (batch > 1) {
    const double inv = 1.0 / static_cast<double>(batch);
    a0 *= inv;
    a1 *= inv;
  }
}

}  // namespace

void RotationProblem::batch_field(std::span<const double> x, std::uint32_t batch, RngStream& rng,
                                  std::span<double> out) const {
  require_dim(x, 2);
  rotation_batch(x[0], x[1], batch, rng, out[0], out[1]);
}

std::optional<std::uint64_t> RotationProblem::advance(std::span<double> x,
                                                      std::span<const double> gamma,
                                                      std::span<const std::uint32_t> batch,
                                                      std::uint64_t first_step,
                                                      RngStream& rng) const {
  require_dim(x, 2);
  double x0 = x[0];
  double x1 = x[1];
  std::optional<std::uint64_t> failed;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    double a0;
    double a1;
    rotation_batch(x0, x1, batch[k], rng, a0, a1);
    if (!std::isfinite(a0) || !std::isfinite(a1)) {
      failed = first_step + k;
      break;
    }
    x0 += gamma[k] * a0;
    x1 += gamma[k] * a1;
  }
  x[0] = x0;
  x[1] = x1;
  return failed;
}

namespace {

double quadratic_growth_c(const Vector& mu, double sigma) {
  // ||mu - x||^2 <= max(1, ||mu||)^2 (1 + ||x||)^2 and d sigma^2 <= d sigma^2 (1 + ||x||)^2.
  const double m = std::max(1.0, norm(mu));
  return m * m + static_cast<double>(mu.dim()) * sigma * sigma;
}

std::optional<Matrix2> quadratic_linear_part(const Vector& mu) {
  if (mu.dim() != 2) return std::nullopt;
  return Matrix2::scaled_rotation(-1.0, 0.0);
}

}  // namespace

QuadraticProblem::QuadraticProblem(Vector mu, double sigma)
    : Problem(mu, 1.0, 1.0, quadratic_growth_c(mu, sigma), quadratic_linear_part(mu)),
      mu_(std::move(mu)),
      sigma_(sigma) {
  if (mu_.dim() == 0) throw std::invalid_argument("quadratic problem needs dim >= 1");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) {
    throw std::invalid_argument("quadratic problem needs finite sigma >= 0");
  }
}

void QuadraticProblem::sample_noise(RngStream& rng, std::span<double> noise) const {
  for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = mu_[i] + sigma_ * rng.normal();
}

void QuadraticProblem::field(std::span<const double> x, std::span<const double> noise,
                             std::span<double> out) const {
  require_dim(x, mu_.dim());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = noise[i] - x[i];
}

Vector QuadraticProblem::mean_field(const Vector& x) const { return mu_ - x; }

void QuadraticProblem::batch_field(std::span<const double> x, std::uint32_t batch,
                                   RngStream& rng, std::span<double> out) const {
  require_dim(x, mu_.dim());
  const std::size_t d = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::uint32_t j = 0; j < batch; ++j) {
    for (std::size_t i = 0; i < d; ++i) out[i] += (mu_[i] + sigma_ * rng.normal()) - x[i];
  }
  if (batch > 1) {
    const double inv = 1.0 / static_cast<double>(batch);
    for (std::size_t i = 0; i < d; ++i) out[i] *= inv;
  }
}

std::optional<std::uint64_t> QuadraticProblem::advance(std::span<double> x,
                                                       std::span<const double> gamma,
                                                       std::span<const std::uint32_t> batch,
                                                       std::uint64_t first_step,
                                                       RngStream& rng) const {
  require_dim(x, mu_.dim());
  if (x.size() != 2) return Problem::advance(x, gamma, batch, first_step, rng);
  double x0 = x[0];
  double x1 = x[1];
  std::optional<std::uint64_t> failed;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    double a0 = 0.0;
    double a1 = 0.0;
    for (std::uint32_t j = 0; j < batch[k]; ++j) {
      a0 += (mu_[0] + sigma_ * rng.normal()) - x0;
      a1 += (mu_[1] + sigma_ * rng.normal()) - x1;
    }
    if (batch[k] > 1) {
      const double inv = 1.0 / static_cast<double>(batch[k]);
      a0 *= inv;
      a1 *= inv;
    }
    if (!std::isfinite(a0) || !std::isfinite(a1)) {
      failed = first_step + k;
      break;
    }
    x0 += gamma[k] * a0;
    x1 += gamma[k] * a1;
  }
  x[0] = x0;
  x[1] = x1;
  return failed;
}

std::shared_ptr<const Problem> quadratic_problem(Vector mu, double sigma) {
  return std::make_shared<QuadraticProblem>(std::move(mu), sigma);
}

std::shared_ptr<const Problem> rotation_problem() {
  return std::make_shared<RotationProblem>();
}

std::shared_ptr<const Problem> make_problem(std::string_view id, const ProblemParams& params) {
  if (id == "rotation") return rotation_problem();
  if (id == "quadratic") return quadratic_problem(params.mu, params.sigma);
  throw UnknownProblem("unknown problem '" + std::string(id) +
                       "' (expected rotation or quadratic)");
}

double check_monotonicity(const Problem& problem, std::size_t pair_samples, RngStream& rng,
                          std::optional<double> L) {
  const double l = L.value_or(problem.monotonicity_L());
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pair_samples; ++i) {
    const Vector x = gaussian_probe(problem.dimension(), rng);
    const Vector y = gaussian_probe(problem.dimension(), rng);
    const Vector d = x - y;
    const Vector dg = problem.mean_field(x) - problem.mean_field(y);
    worst = std::min(worst, -l * squared_norm(d) - dot(d, dg));
  }
  return worst;
}

double check_coercivity(const Problem& problem, std::size_t samples, RngStream& rng,
                        std::optional<double> L) {
  const double l = L.value_or(problem.coercivity_L());
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector x = gaussian_probe(problem.dimension(), rng);
    const Vector gx = problem.mean_field(x);
    worst = std::min(worst, -l * squared_norm(gx) - dot(x - problem.equilibrium(), gx));
  }
  return worst;
}

double check_growth(const Problem& problem, std::size_t samples,
                    std::size_t mc_draws_per_point, RngStream& rng) {
  if (samples == 0 || mc_draws_per_point == 0) {
    throw std::invalid_argument("check_growth needs samples, draws >= 1");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector x = gaussian_probe(problem.dimension(), rng);
    double acc = 0.0;
    for (std::size_t j = 0; j < mc_draws_per_point; ++j) {
      acc += squared_norm(problem.sample_field(x, rng));
    }
    const double scale = 1.0 + norm(x);
    worst = std::max(worst, acc / static_cast<double>(mc_draws_per_point) / (scale * scale));
  }
  return worst;
}

}  // namespace saalab
