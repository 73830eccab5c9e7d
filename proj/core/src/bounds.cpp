#include "saalab/bounds.hpp"

#include <cmath>

namespace saalab {

PartialSumBounds partial_sum_bounds(double nu, std::uint64_t l) {
  if (!(nu >= 0.0 && nu < 1.0)) throw std::invalid_argument("nu must lie in [0, 1)");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  CompensatedSum sum;
  for (std::uint64_t n = 1; n <= l; ++n) sum.add(std::pow(static_cast<double>(n), -nu));
  const double p = 1.0 - nu;
  const double ld = static_cast<double>(l);
  return {(std::pow(ld + 1.0, p) - 1.0) / p, sum.value(), (std::pow(ld, p) - nu) / p};
}

namespace {

// (e^{-x} - 1 + x) / x^2, stable as x -> 0.
double phi(double x) {
  if (x < 0.1) {
    // sum_{j>=0} (-x)^j / (j+2)!, truncated after j = 8.
    double term = 0.5;
    double acc = 0.5;
    for (int j = 1; j <= 8; ++j) {
      term *= -x / (j + 2);
      acc += term;
    }
    return acc;
  }
  return (std::expm1(-x) + x) / (x * x);
}

}  // namespace

BoundReport discrete_integral_bound(double L, const TimeGrid& grid, std::size_t k) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be > 0");
  if (k < 2 || k > grid.size()) {
    throw std::out_of_range("k must lie in [2, " + std::to_string(grid.size()) + "]");
  }
  const double T = grid[k - 1];
  CompensatedSum lhs;
  CompensatedSum rhs;
  for (std::size_t n = 1; n <= k - 1; ++n) {
    const double a = grid[n - 1];
    const double b = grid[n];
    const double width = b - a;
    const double damp = std::exp(-L * (T - b));
    // int_a^b e^{-L(T-t)} (t - a) dt
    //   = e^{-L(T-b)} ((b-a)/L - 1/L^2) + e^{-L(T-a)}/L^2
    //   = e^{-L(T-b)} (b-a)^2 phi(L (b-a)).
    lhs.add(damp * width * width * phi(L * width));
    rhs.add(0.5 * damp * width * width);
  }
  BoundReport r;
  r.lhs = lhs.value();
  r.rhs = rhs.value();
  r.margin = r.rhs - r.lhs;
  r.parameters = {{"L", L}, {"k", static_cast<double>(k)}, {"t_k", T}};
  return r;
}

double kappa(const KLambdaParams& p, std::uint64_t n) {
  const double a = p.L * p.eta / p.epsilon;
  const double nd = static_cast<double>(n);
  const double prefactor =
      p.eta * p.eta * std::exp(p.L * p.eta + a) / (2.0 * (1.0 - 2.0 * p.epsilon));
  const double bracket =
      2.0 * std::exp(-a * (1.0 - std::pow(p.lambda, p.epsilon)) * std::pow(nd, p.epsilon)) +
      std::pow(nd - 1.0, 2.0 * p.epsilon - 2.0);
  return prefactor * (std::pow(nd, 1.0 - 2.0 * p.epsilon) * bracket +
                      std::pow(p.lambda, 2.0 * p.epsilon - 1.0));
}

KLambdaResult k_lambda(const KLambdaParams& p, std::uint64_t n_max) {
  if (!(p.lambda > 0.0 && p.lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  if (!(p.epsilon > 0.0 && p.epsilon < 0.5)) {
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  }
  if (!(p.eta > 0.0) || !(p.L > 0.0)) throw std::invalid_argument("eta and L must be > 0");
  if (n_max < 100) throw std::invalid_argument("n_max must be >= 100");

  KLambdaResult r;
  r.value = kappa(p, 2);
  r.argmax = 2;
  const std::uint64_t tail_start = n_max - n_max / 10;
  double prev = r.value;
  for (std::uint64_t n = 3; n <= n_max; ++n) {
    const double k = kappa(p, n);
    if (k > r.value) {
      r.value = k;
      r.argmax = n;
    }
    if (n > tail_start && k > prev) {
      throw SupNotBracketed("kappa increases at n = " + std::to_string(n) +
                            " inside the tail of [2, " + std::to_string(n_max) +
                            "]; rerun with a larger n_max");
    }
    prev = k;
  }
  const double a = p.L * p.eta / p.epsilon;
  r.tail_limit = p.eta * p.eta * std::exp(p.L * p.eta + a) *
                 std::pow(p.lambda, 2.0 * p.epsilon - 1.0) / (2.0 * (1.0 - 2.0 * p.epsilon));
  return r;
}

double init_decay_term(std::uint64_t n, const Schedule& schedule, double L) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return std::pow(static_cast<double>(n), 1.0 - 2.0 * schedule.epsilon()) *
         std::exp(-L * grid_time(n - 1, schedule));
}

WeakEnvelope weak_envelope(std::uint64_t n, double K, double C_emp, double init_norm,
                           double psi_grad_sup, const Schedule& schedule, double L) {
  const double rate = std::pow(static_cast<double>(n), 2.0 * schedule.epsilon() - 1.0);
  WeakEnvelope e;
  e.bias_term = rate * K * C_emp;
  e.init_term = rate * init_decay_term(n, schedule, L) * psi_grad_sup * init_norm;
  e.total = e.bias_term + e.init_term;
  return e;
}

}  // namespace saalab
