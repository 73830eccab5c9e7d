#include "saalab/test_function.hpp"

#include <cmath>
#include <stdexcept>

namespace saalab {

TestFunction::TestFunction(TestFunctionKind kind, std::string name, Value value,
                           Gradient gradient, double gradient_bound, double hessian_bound)
    : kind_(kind),
      name_(std::move(name)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      gradient_bound_(gradient_bound),
      hessian_bound_(hessian_bound) {
  if (!(hessian_bound_ >= 0.0) || !std::isfinite(hessian_bound_) ||
      !(gradient_bound_ >= 0.0) || !std::isfinite(gradient_bound_)) {
    throw std::invalid_argument("test function bounds must be finite and >= 0");
  }
}

TestFunction TestFunction::linear(Vector coefficients) {
  const double grad_norm = norm(coefficients);
  auto value = [a = coefficients](const Vector& x) { return dot(a, x); };
  auto gradient = [a = coefficients](const Vector& x) {
    if (x.dim() != a.dim()) throw DimensionMismatch(a.dim(), x.dim());
    return a;
  };
  return TestFunction(TestFunctionKind::linear, "linear", std::move(value),
                      std::move(gradient), grad_norm, 0.0);
}

TestFunction TestFunction::sin_sum(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("sin_sum needs dim >= 1");
  auto total = [dim](const Vector& x) {
    if (x.dim() != dim) throw DimensionMismatch(dim, x.dim());
    double s = 0.0;
    for (double xi : x.values()) s += xi;
    return s;
  };
  auto value = [total](const Vector& x) { return std::sin(total(x)); };
  auto gradient = [total, dim](const Vector& x) { return Vector(dim, std::cos(total(x))); };
  // psi'' = -sin(sum) * 1 1^T, whose operator norm is at most d.
  return TestFunction(TestFunctionKind::sin_sum, "sin_sum", std::move(value),
                      std::move(gradient), std::sqrt(static_cast<double>(dim)),
                      static_cast<double>(dim));
}

TestFunction TestFunction::custom(std::string name, Value value, Gradient gradient,
                                  double gradient_bound, double hessian_bound) {
  return TestFunction(TestFunctionKind::custom, std::move(name), std::move(value),
                      std::move(gradient), gradient_bound, hessian_bound);
}

}  // namespace saalab
