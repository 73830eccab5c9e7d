#pragma once

#include <functional>
#include <stdexcept>

#include "saalab/test_function.hpp"
#include "saalab/vector.hpp"

namespace saalab {

using MeanField = std::function<Vector(const Vector&)>;

inline constexpr double kDefaultFlowStep = 1e-3;
inline constexpr double kDefaultFdStep = 1e-4;

class FlowSingularity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowResult {
  Vector endpoint;
  double t = 0.0;
  std::size_t steps_used = 0;
  // Infinity-norm distance to a rerun with half the step size.
  double estimated_error = 0.0;
};

// theta_t = theta + int_0^t g(theta_s) ds by classical RK4 with fixed step
// min(h, remaining time).
FlowResult integrate_flow(const MeanField& g, const Vector& theta, double t,
                          double h = kDefaultFlowStep);

// e^{at} (cos(bt) I + sin(bt) J) theta for M = a I + b J, J = ((0,-1),(1,0)).
Vector linear_flow_exact(const Matrix2& M, const Vector& theta, double t);

// ||x - y|| e^{L t} - ||theta_t^x - theta_t^y||. L < 0 for a contracting flow.
double check_contraction(const MeanField& g, const Vector& x, const Vector& y, double t,
                         double L, double h = kDefaultFlowStep);

// ||theta_b(theta_a(v)) - theta_{a+b}(v)||.
double check_semigroup(const MeanField& g, const Vector& theta, double a, double b,
                       double h = kDefaultFlowStep);

// |d/dt u - <grad_theta u, g(theta)>| for u(t, theta) = psi(theta_t^theta), all
// derivatives by central differences of step fd_step.
double kolmogorov_residual(const TestFunction& psi, const MeanField& g, double t,
                           const Vector& theta, double fd_step = kDefaultFdStep,
                           double h = kDefaultFlowStep);

// Integrates until ||g(theta_t)|| < tol, throwing NonConvergence at t_max.
Vector find_equilibrium(const MeanField& g, const Vector& x0, double t_max, double tol,
                        double h = kDefaultFlowStep);

}  // namespace saalab
