#include "saalab/flow.hpp"

#include <cmath>
#include <string>

namespace saalab {

namespace {

Vector rk4_step(const MeanField& g, const Vector& x, double h) {
  const Vector k1 = g(x);
  const Vector k2 = g(x + (0.5 * h) * k1);
  const Vector k3 = g(x + (0.5 * h) * k2);
  const Vector k4 = g(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Run {
  Vector endpoint;
  std::size_t steps;
};

Run rk4_run(const MeanField& g, const Vector& theta, double t, double h) {
  Vector x = theta;
  double done = 0.0;
  std::size_t steps = 0;
  while (done < t) {
    const double dt = std::min(h, t - done);
    try {
      x = rk4_step(g, x, dt);
    } catch (const NonFiniteValue&) {
      throw FlowSingularity("flow left the finite range at t = " + std::to_string(done));
    }
    done = (dt == h) ? done + h : t;
    ++steps;
  }
  return {std::move(x), steps};
}

double flow_distance(const MeanField& g, const Vector& x, const Vector& y, double t, double h) {
  return norm(integrate_flow(g, x, t, h).endpoint - integrate_flow(g, y, t, h).endpoint);
}

}  // namespace

FlowResult integrate_flow(const MeanField& g, const Vector& theta, double t, double h) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("flow horizon must be >= 0");
  if (!(h > 0.0)) throw std::invalid_argument("flow step must be > 0");
  Run coarse = rk4_run(g, theta, t, h);
  const Run fine = rk4_run(g, theta, t, 0.5 * h);
  const double err = max_abs_diff(coarse.endpoint, fine.endpoint);
  return {std::move(coarse.endpoint), t, coarse.steps, err};
}

Vector linear_flow_exact(const Matrix2& M, const Vector& theta, double t) {
  const double a = M(0, 0);
  const double b = M(1, 0);
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  if (std::abs(M(1, 1) - a) > 1e-14 * scale || std::abs(M(0, 1) + b) > 1e-14 * scale) {
    throw std::invalid_argument("linear_flow_exact: matrix is not of the form aI + bJ");
  }
  if (theta.dim() != 2) throw DimensionMismatch(2, theta.dim());
  const double growth = std::exp(a * t);
  const double c = std::cos(b * t);
  const double s = std::sin(b * t);
  return Vector{growth * (c * theta[0] - s * theta[1]), growth * (s * theta[0] + c * theta[1])};
}

double check_contraction(const MeanField& g, const Vector& x, const Vector& y, double t,
                         double L, double h) {
  return norm(x - y) * std::exp(L * t) - flow_distance(g, x, y, t, h);
}

double check_semigroup(const MeanField& g, const Vector& theta, double a, double b, double h) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("semigroup times must be >= 0");
  const Vector mid = integrate_flow(g, theta, a, h).endpoint;
  const Vector composed = integrate_flow(g, mid, b, h).endpoint;
  const Vector direct = integrate_flow(g, theta, a + b, h).endpoint;
  return norm(composed - direct);
}

double kolmogorov_residual(const TestFunction& psi, const MeanField& g, double t,
                           const Vector& theta, double fd_step, double h) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be > 0");
  auto u = [&](double time, const Vector& x) {
    return psi.value(integrate_flow(g, x, time, h).endpoint);
  };
  // At t = 0 a one-sided stencil would leave the domain; u(s, .) for s < 0
  // is the backward flow, which the integrator does not provide.
  double dudt;
  if (t >= fd_step) {
    dudt = (u(t + fd_step, theta) - u(t - fd_step, theta)) / (2.0 * fd_step);
  } else {
    // Second-order forward difference.
    dudt = (-3.0 * u(t, theta) + 4.0 * u(t + fd_step, theta) - u(t + 2.0 * fd_step, theta)) /
           (2.0 * fd_step);
  }
  const Vector field = g(theta);
  double transport = 0.0;
  for (std::size_t i = 0; i < theta.dim(); ++i) {
    Vector plus = theta;
    Vector minus = theta;
    plus[i] += fd_step;
    minus[i] -= fd_step;
    transport += (u(t, plus) - u(t, minus)) / (2.0 * fd_step) * field[i];
  }
  return std::abs(dudt - transport);
}

Vector find_equilibrium(const MeanField& g, const Vector& x0, double t_max, double tol,
                        double h) {
  if (!(tol > 0.0) || !(h > 0.0)) throw std::invalid_argument("tol and h must be > 0");
  Vector x = x0;
  double t = 0.0;
  while (norm(g(x)) >= tol) {
    if (t >= t_max) {
      throw NonConvergence("find_equilibrium: ||g|| = " + std::to_string(norm(g(x))) +
                           " >= tol after t = " + std::to_string(t));
    }
    const double dt = std::min(h, t_max - t);
    try {
      x = rk4_step(g, x, dt);
    } catch (const NonFiniteValue&) {
      throw FlowSingularity("flow left the finite range at t = " + std::to_string(t));
    }
    t += dt;
  }
  return x;
}

}  // namespace saalab
