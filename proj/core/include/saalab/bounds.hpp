#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "saalab/schedule.hpp"

namespace saalab {

// lhs <= rhs is a proven inequality; margin = rhs - lhs.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::map<std::string, double> parameters;
};

struct PartialSumBounds {
  double lower = 0.0;
  double sum = 0.0;
  double upper = 0.0;
};

// sum_{n=1}^l n^{-nu} bracketed by (1/(1-nu))((l+1)^{1-nu} - 1) and
// (1/(1-nu))(l^{1-nu} - nu), for nu in [0, 1), l >= 1.
PartialSumBounds partial_sum_bounds(double nu, std::uint64_t l);

// For grid points t_1 = 0 < t_2 < ... (1-based, so t_k = grid[k-1]):
//   lhs = int_0^{t_k} e^{-L(t_k - t)} (t - floor(t)) dt, in closed form,
//   rhs = (1/2) sum_{n=1}^{k-1} e^{-L(t_k - t_{n+1})} (t_{n+1} - t_n)^2.
BoundReport discrete_integral_bound(double L, const TimeGrid& grid, std::size_t k);

struct KLambdaParams {
  double lambda = 0.5;
  double epsilon = 0.25;
  double eta = 1.0;
  double L = 0.45;
};

// kappa(n) for n >= 2, whose supremum over n is K(lambda).
double kappa(const KLambdaParams& p, std::uint64_t n);

class SupNotBracketed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KLambdaResult {
  double value = 0.0;         // max_{2 <= n <= n_max} kappa(n)
  std::uint64_t argmax = 2;
  double tail_limit = 0.0;    // lim_{n -> inf} kappa(n)
};

// Scans kappa over [2, n_max] and certifies that kappa is non-increasing on
// the last 10% of the range; otherwise throws SupNotBracketed.
KLambdaResult k_lambda(const KLambdaParams& p, std::uint64_t n_max);

struct WeakEnvelope {
  double total = 0.0;
  // n^{2eps-1} K C
  double bias_term = 0.0;
  // n^{2eps-1} * n^{1-2eps} e^{-L t_{n-1}} sup||psi'|| ||xi - Xi||
  double init_term = 0.0;
};

// n^{2eps-1} [K C + n^{1-2eps} e^{-L t_{n-1}} sup||psi'|| ||xi - Xi||], n >= 1.
WeakEnvelope weak_envelope(std::uint64_t n, double K, double C_emp, double init_norm,
                           double psi_grad_sup, const Schedule& schedule, double L);

// n^{1-2eps} e^{-L t_{n-1}}.
double init_decay_term(std::uint64_t n, const Schedule& schedule, double L);

}  // namespace saalab
