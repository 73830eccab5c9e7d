#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "saalab/flow.hpp"
#include "saalab/problem.hpp"

namespace saalab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

const MeanField kRot = [](const Vector& x) { return rotation_g(x); };
const Vector kMu{1.0, -1.0};
const MeanField kQuad = [](const Vector& x) { return kMu - x; };

Vector quad_exact(const Vector& theta, double t) { return kMu + std::exp(-t) * (theta - kMu); }

TEST(IntegrateFlow, ZeroHorizon) {
  const FlowResult r = integrate_flow(kRot, Vector{0.3, 0.4}, 0.0);
  EXPECT_EQ(r.endpoint, (Vector{0.3, 0.4}));
  EXPECT_EQ(r.steps_used, 0u);
}

TEST(IntegrateFlow, RotationMatchesExact) {
  const Vector theta{1.0, 0.0};
  const FlowResult r = integrate_flow(kRot, theta, 1.0, 1e-3);
  const Vector exact = linear_flow_exact(rotation_mean_matrix(), theta, 1.0);
  EXPECT_LE(max_abs_diff(r.endpoint, exact), 1e-8);
  EXPECT_EQ(r.steps_used, 1000u);
  EXPECT_LE(r.estimated_error, 1e-8);
}

TEST(IntegrateFlow, QuadraticMatchesExact) {
  for (double t : {0.5, 1.0, 3.7}) {
    const Vector theta{4.0, 2.0};
    EXPECT_LE(max_abs_diff(integrate_flow(kQuad, theta, t).endpoint, quad_exact(theta, t)), 1e-8);
  }
}

TEST(IntegrateFlow, FourthOrder) {
  const Vector theta{1.0, 0.0};
  const Vector exact = linear_flow_exact(rotation_mean_matrix(), theta, 1.0);
  const double e1 = max_abs_diff(integrate_flow(kRot, theta, 1.0, 0.1).endpoint, exact);
  const double e2 = max_abs_diff(integrate_flow(kRot, theta, 1.0, 0.05).endpoint, exact);
  EXPECT_GE(e1 / e2, 12.0);
  EXPECT_LE(e1 / e2, 20.0);
}

TEST(IntegrateFlow, PartialLastStep) {
  const FlowResult r = integrate_flow(kQuad, Vector{0.0, 0.0}, 0.25, 0.1);
  EXPECT_EQ(r.steps_used, 3u);
  EXPECT_DOUBLE_EQ(r.t, 0.25);
  EXPECT_LE(max_abs_diff(r.endpoint, quad_exact(Vector{0.0, 0.0}, 0.25)), 1e-6);
}

TEST(IntegrateFlow, BlowUpIsASingularity) {
  const MeanField riccati = [](const Vector& x) { return Vector{x[0] * x[0] * x[0], 0.0}; };
  EXPECT_THROW(integrate_flow(riccati, Vector{10.0, 0.0}, 1.0, 1e-2), FlowSingularity);
}

TEST(IntegrateFlow, RejectsBadArguments) {
  EXPECT_THROW(integrate_flow(kRot, Vector{1.0, 0.0}, -1.0), std::invalid_argument);
  EXPECT_THROW(integrate_flow(kRot, Vector{1.0, 0.0}, 1.0, 0.0), std::invalid_argument);
}

TEST(LinearFlowExact, Examples) {
  const Matrix2 m = rotation_mean_matrix();
  EXPECT_EQ(linear_flow_exact(m, Vector{0.3, -2.0}, 0.0), (Vector{0.3, -2.0}));
  const double t = kPi * kPi / (2.0 * kSqrt2);
  const Vector v = linear_flow_exact(m, Vector{1.0, 0.0}, t);
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], std::exp(-kPi / 2.0), 1e-15);
}

TEST(LinearFlowExact, NormDecaysAtTheMonotonicityRate) {
  const Matrix2 m = rotation_mean_matrix();
  for (double t : {0.1, 1.0, 5.0, 20.0}) {
    for (const Vector& theta : {Vector{1.0, 0.0}, Vector{-3.0, 4.0}, Vector{0.2, 0.7}}) {
      EXPECT_NEAR(norm(linear_flow_exact(m, theta, t)), std::exp(-kSqrt2 * t / kPi) * norm(theta),
                  1e-14 * norm(theta));
    }
  }
}

TEST(LinearFlowExact, RejectsGeneralMatrices) {
  EXPECT_THROW(linear_flow_exact(Matrix2{{1.0, 2.0, 3.0, 4.0}}, Vector{1.0, 0.0}, 1.0),
               std::invalid_argument);
}

TEST(Contraction, Examples) {
  EXPECT_EQ(check_contraction(kRot, Vector{1.0, 2.0}, Vector{1.0, 2.0}, 1.0, -0.1), 0.0);
  EXPECT_NEAR(check_contraction(kRot, Vector{1.0, 0.0}, Vector{-2.0, 0.5}, 2.0, -kSqrt2 / kPi),
              0.0, 1e-8);
  EXPECT_NEAR(check_contraction(kQuad, Vector{1.0, 0.0}, Vector{0.0, 0.0}, 1.0, -1.0), 0.0, 1e-8);
  // A slower claimed rate leaves a positive margin.
  EXPECT_GT(check_contraction(kQuad, Vector{1.0, 0.0}, Vector{0.0, 0.0}, 1.0, -0.5), 0.1);
}

TEST(Semigroup, Examples) {
  EXPECT_EQ(check_semigroup(kRot, Vector{1.0, 0.0}, 0.0, 0.7), 0.0);
  EXPECT_EQ(check_semigroup(kRot, Vector{1.0, 0.0}, 0.7, 0.0), 0.0);
  EXPECT_LE(check_semigroup(kRot, Vector{1.0, 0.0}, 0.5, 0.5, 1e-3), 1e-7);
  EXPECT_LE(check_semigroup(kQuad, Vector{4.0, 2.0}, 1.0, 2.0), 1e-7);
  EXPECT_LE(max_abs_diff(integrate_flow(kQuad, Vector{4.0, 2.0}, 3.0).endpoint,
                         kMu + std::exp(-3.0) * (Vector{4.0, 2.0} - kMu)),
            1e-7);
}

TEST(Kolmogorov, Examples) {
  const TestFunction lin = TestFunction::linear(Vector{1.0, 0.0});
  const TestFunction ss = TestFunction::sin_sum(2);
  EXPECT_LE(kolmogorov_residual(lin, kRot, 0.7, Vector{0.3, -0.2}), 1e-6);
  EXPECT_LE(kolmogorov_residual(ss, kRot, 0.7, Vector{0.3, -0.2}, 1e-4), 1e-4);
  EXPECT_LE(kolmogorov_residual(ss, kRot, 0.0, Vector{0.3, -0.2}), 1e-4);
  EXPECT_LE(kolmogorov_residual(ss, kQuad, 1.3, Vector{2.0, 0.5}), 1e-4);
}

TEST(Kolmogorov, SecondOrderInTheDifferenceStep) {
  const TestFunction ss = TestFunction::sin_sum(2);
  const Vector theta{0.3, -0.2};
  const double deltas[] = {4e-2, 2e-2, 1e-2, 5e-3};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double d : deltas) {
    const double x = std::log(d);
    const double y = std::log(kolmogorov_residual(ss, kRot, 0.7, theta, d, 1e-4));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  EXPECT_GE(slope, 1.7);
  EXPECT_LE(slope, 2.3);
}

TEST(FindEquilibrium, Examples) {
  const Vector r = find_equilibrium(kRot, Vector{3.0, -4.0}, 500.0, 1e-10);
  EXPECT_LE(norm(r), 1e-9);
  const Vector q = find_equilibrium(kQuad, Vector{5.0, 5.0}, 500.0, 1e-10);
  EXPECT_LE(max_abs_diff(q, kMu), 1e-9);
  int calls = 0;
  const MeanField counted = [&](const Vector& x) {
    ++calls;
    return kMu - x;
  };
  EXPECT_EQ(find_equilibrium(counted, kMu, 10.0, 1e-12), kMu);
  EXPECT_EQ(calls, 1);
}

TEST(FindEquilibrium, NonConvergenceDiagnostic) {
  EXPECT_THROW(find_equilibrium(kRot, Vector{3.0, -4.0}, 1.0, 1e-10), NonConvergence);
}

}  // namespace
}  // namespace saalab
