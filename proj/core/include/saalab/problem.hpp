#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "saalab/rng.hpp"
#include "saalab/vector.hpp"

namespace saalab {

// A stochastic gradient field: noise sampler Z, field G(x, Z), closed-form
// mean field g(x) = E[G(x, Z)], equilibrium Xi with g(Xi) = 0, and the
// constants of the dissipativity and growth hypotheses.
//
// Sign convention: the engine always *adds* gamma_n * G. An SGD problem for
// an objective F therefore defines G = -grad F.
//
// Noise is a flat block of noise_size() reals per draw. Problems are
// immutable; all randomness comes from the caller's RngStream.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string_view id() const noexcept = 0;
  virtual std::size_t dimension() const noexcept = 0;
  virtual std::size_t noise_size() const noexcept = 0;

  virtual void sample_noise(RngStream& rng, std::span<double> noise) const = 0;
  // out = G(x, noise). `out` must not alias `x`.
  virtual void field(std::span<const double> x, std::span<const double> noise,
                     std::span<double> out) const = 0;
  virtual Vector mean_field(const Vector& x) const = 0;
  // out = (1/batch) sum_j G(x, Z_j) with Z_1..Z_batch drawn in order from
  // `rng`. Overrides consume draws in the same order as the default and may
  // differ from it only by rounding.
  virtual void batch_field(std::span<const double> x, std::uint32_t batch, RngStream& rng,
                           std::span<double> out) const;
  // Runs steps first_step .. first_step + gamma.size() - 1 in place, step
  // first_step + k using gamma[k] and batch[k]. Returns the first step whose
  // averaged field was non-finite, leaving x at the state before it.
  // Overrides must agree bitwise with repeated batch_field updates.
  virtual std::optional<std::uint64_t> advance(std::span<double> x, std::span<const double> gamma,
                                               std::span<const std::uint32_t> batch,
                                               std::uint64_t first_step, RngStream& rng) const;

  const Vector& equilibrium() const noexcept { return equilibrium_; }
  // <x - y, g(x) - g(y)> <= -L ||x - y||^2.
  double monotonicity_L() const noexcept { return monotonicity_L_; }
  // <x - Xi, g(x)> <= -L ||g(x)||^2.
  double coercivity_L() const noexcept { return coercivity_L_; }
  // E||G(x, Z)||^2 <= c (1 + ||x||)^2.
  double growth_c() const noexcept { return growth_c_; }
  // Linear part of g when g is affine with a 2x2 linear part.
  const std::optional<Matrix2>& mean_matrix() const noexcept { return mean_matrix_; }

  Vector sample_field(const Vector& x, RngStream& rng) const;

 protected:
  Problem(Vector equilibrium, double monotonicity_L, double coercivity_L, double growth_c,
          std::optional<Matrix2> mean_matrix);

 private:
  Vector equilibrium_;
  double monotonicity_L_;
  double coercivity_L_;
  double growth_c_;
  std::optional<Matrix2> mean_matrix_;
};

// Angle uniform on [pi/4, 5pi/4): pi/4 + pi * u.
double rotation_sample(double u);
// (cos, sin) of rotation_sample(u), evaluated as 3pi/4 + 2 phi with
// |phi| <= pi/4; within 1e-15 of std::cos / std::sin.
std::pair<double, double> rotation_cos_sin(double u);
// A(s) x with A(s) the rotation by s.
Vector rotation_G(const Vector& x, double s);
// E[A(Z)] x = (sqrt2/pi) (-x1 - x2, x1 - x2).
Vector rotation_g(const Vector& x);
// (sqrt2/pi) ((-1,-1),(1,-1)) = (2/pi) A(3pi/4).
Matrix2 rotation_mean_matrix();

// Random rotation in R^2: G(x, s) = A(s) x, s ~ U[pi/4, 5pi/4).
// L_mono = sqrt2/pi, L_coer = pi sqrt2 / 4, c = 1, Xi = 0.
class RotationProblem final : public Problem {
 public:
  RotationProblem();

  std::string_view id() const noexcept override { return "rotation"; }
  std::size_t dimension() const noexcept override { return 2; }
  std::size_t noise_size() const noexcept override { return 1; }
  void sample_noise(RngStream& rng, std::span<double> noise) const override;
  void field(std::span<const double> x, std::span<const double> noise,
             std::span<double> out) const override;
  Vector mean_field(const Vector& x) const override;
  void batch_field(std::span<const double> x, std::uint32_t batch, RngStream& rng,
                   std::span<double> out) const override;  std::optional<std::uint64_t> advance(std::span<double> x, std::span<const double> gamma,
                                       std::span<const std::uint32_t> batch,
                                       std::uint64_t first_step, RngStream& rng) const override;
};

// SGD on F(theta, z) = |theta - z|^2 / 2 with z = mu + sigma * w,
// w ~ N(0, I): G(theta, z) = z - theta, g(theta) = mu - theta, Xi = mu.
class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(Vector mu, double sigma);

  std::string_view id() const noexcept override { return "quadratic"; }
  std::size_t dimension() const noexcept override { return mu_.dim(); }
  std::size_t noise_size() const noexcept override { return mu_.dim(); }
  void sample_noise(RngStream& rng, std::span<double> noise) const override;
  void field(std::span<const double> x, std::span<const double> noise,
             std::span<double> out) const override;
  Vector mean_field(const Vector& x) const override;
  void batch_field(std::span<const double> x, std::uint32_t batch, RngStream& rng,
                   std::span<double> out) const override;
  std::optional<std::uint64_t> advance(std::span<double> x, std::span<const double> gamma,
                                       std::span<const std::uint32_t> batch,
                                       std::uint64_t first_step, RngStream& rng) const override;

  const Vector& mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 private:
  Vector mu_;
  double sigma_;
};

std::shared_ptr<const Problem> quadratic_problem(Vector mu, double sigma);
std::shared_ptr<const Problem> rotation_problem();

class UnknownProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemParams {
  Vector mu{1.0, -1.0};
  double sigma = 1.0;
};

// Registry lookup by id: "rotation" or "quadratic".
std::shared_ptr<const Problem> make_problem(std::string_view id,
                                            const ProblemParams& params = {});

// Probe points are drawn from N(0, 10^2 I).
inline constexpr double kProbeScale = 10.0;

// min over random pairs of -L||x-y||^2 - <x-y, g(x)-g(y)>.
double check_monotonicity(const Problem& problem, std::size_t pair_samples, RngStream& rng,
                          std::optional<double> L = std::nullopt);
// min over random x of -L||g(x)||^2 - <x - Xi, g(x)>.
double check_coercivity(const Problem& problem, std::size_t samples, RngStream& rng,
                        std::optional<double> L = std::nullopt);
// max over random x of MC-estimated E||G(x,Z)||^2 / (1 + ||x||)^2.
double check_growth(const Problem& problem, std::size_t samples,
                    std::size_t mc_draws_per_point, RngStream& rng);

}  // namespace saalab
