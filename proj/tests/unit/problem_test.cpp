#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "saalab/problem.hpp"
#include "saalab/test_function.hpp"

namespace saalab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

TEST(Rotation, SampleMap) {
  EXPECT_DOUBLE_EQ(rotation_sample(0.0), kPi / 4);
  EXPECT_DOUBLE_EQ(rotation_sample(0.5), 3 * kPi / 4);
  EXPECT_DOUBLE_EQ(rotation_sample(0.25), kPi / 2);
}

TEST(Rotation, FieldExamples) {
  const Vector q = rotation_G(Vector{1.0, 0.0}, kPi / 2);
  EXPECT_NEAR(q[0], 0.0, 1e-15);
  EXPECT_NEAR(q[1], 1.0, 1e-15);
  const Vector h = rotation_G(Vector{1.0, 0.0}, 3 * kPi / 4);
  EXPECT_NEAR(h[0], -0.7071067811865476, 1e-15);
  EXPECT_NEAR(h[1], 0.7071067811865476, 1e-15);
}

TEST(Rotation, MeanFieldExamples) {
  EXPECT_EQ(rotation_g(Vector{0.0, 0.0}), (Vector{0.0, 0.0}));
  const Vector e1 = rotation_g(Vector{1.0, 0.0});
  EXPECT_NEAR(e1[0], -0.45015815807855303, 1e-15);
  EXPECT_NEAR(e1[1], 0.45015815807855303, 1e-15);
  const Vector ones = rotation_g(Vector{1.0, 1.0});
  EXPECT_NEAR(ones[0], -0.90031631615710606, 1e-15);
  EXPECT_NEAR(ones[1], 0.0, 1e-15);
}

TEST(Rotation, ReducedCosSinMatchesLibm) {
  for (int i = 0; i <= 1000; ++i) {
    const double u = i / 1000.0 * (1.0 - 0x1.0p-53);
    const auto [c, s] = rotation_cos_sin(u);
    EXPECT_NEAR(c, std::cos(rotation_sample(u)), 1e-15);
    EXPECT_NEAR(s, std::sin(rotation_sample(u)), 1e-15);
  }
}

// Mean of A(s) over s ~ U[pi/4, 5pi/4) by quadrature, independent of the
// closed form used in the library.
TEST(Rotation, MeanMatrixMatchesQuadrature) {
  const int n = 200000;
  long double c = 0.0L;
  long double s = 0.0L;
  for (int i = 0; i < n; ++i) {
    const long double angle = kPi / 4 + kPi * (i + 0.5L) / n;
    c += std::cos(angle);
    s += std::sin(angle);
  }
  const Matrix2 m = rotation_mean_matrix();
  EXPECT_NEAR(m(0, 0), static_cast<double>(c / n), 1e-10);
  EXPECT_NEAR(m(1, 0), static_cast<double>(s / n), 1e-10);
  EXPECT_EQ(m(0, 1), -m(1, 0));
  EXPECT_EQ(m(1, 1), m(0, 0));
}

TEST(Rotation, IdentitiesOnRandomPoints) {
  auto rng = oracle::property_rng(2);
  std::normal_distribution<double> z(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Vector x{z(rng), z(rng)};
    const Vector y{z(rng), z(rng)};
    const Vector gx = rotation_g(x);
    const double scale = 1.0 + squared_norm(x) + squared_norm(y);
    EXPECT_NEAR(dot(x - y, gx - rotation_g(y)), -kSqrt2 / kPi * squared_norm(x - y), 1e-12 * scale);
    EXPECT_NEAR(norm(gx), 2.0 / kPi * norm(x), 1e-12 * (1.0 + norm(x)));
    // G(x, s) keeps the norm.
    EXPECT_NEAR(norm(rotation_G(x, 1.0 + i * 1e-3)), norm(x), 1e-12 * (1.0 + norm(x)));
  }
}

TEST(Rotation, MonteCarloFieldMeanMatchesClosedForm) {
  const auto p = rotation_problem();
  auto pts = oracle::property_rng(3);
  std::normal_distribution<double> z(0.0, 3.0);
  for (int k = 0; k < 10; ++k) {
    const Vector x{z(pts), z(pts)};
    RngStream rng(11, k);
    const int n = 100000;
    Vector sum(2);
    Vector sum2(2);
    for (int i = 0; i < n; ++i) {
      const Vector g = p->sample_field(x, rng);
      sum += g;
      sum2 += Vector{g[0] * g[0], g[1] * g[1]};
    }
    const Vector want = p->mean_field(x);
    for (std::size_t d = 0; d < 2; ++d) {
      const double mean = sum[d] / n;
      const double sd = std::sqrt(sum2[d] / n - mean * mean);
      EXPECT_NEAR(mean, want[d], 4.0 * sd / std::sqrt(n) + 1e-12);
    }
  }
}

TEST(Quadratic, ClosedFormPieces) {
  const QuadraticProblem q(Vector{1.0, -1.0}, 1.0);
  EXPECT_EQ(q.mean_field(Vector{1.0, -1.0}), (Vector{0.0, 0.0}));
  EXPECT_EQ(q.equilibrium(), (Vector{1.0, -1.0}));
  EXPECT_EQ(q.monotonicity_L(), 1.0);
  EXPECT_EQ(q.coercivity_L(), 1.0);
  ASSERT_TRUE(q.mean_matrix().has_value());
  EXPECT_EQ(q.mean_matrix()->apply(Vector{2.0, 3.0}), (Vector{-2.0, -3.0}));
  EXPECT_DOUBLE_EQ(q.growth_c(), 2.0 + 2.0);
}

TEST(Quadratic, SecondMomentAtMu) {
  const QuadraticProblem q(Vector{1.0, -1.0}, 1.0);
  RngStream rng(5, 0);
  const int n = 1000000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = squared_norm(q.sample_field(q.mu(), rng));
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double hw = 1.96 * std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, 2.0, hw);
}

TEST(Quadratic, RejectsBadParameters) {
  EXPECT_THROW(QuadraticProblem(Vector{}, 1.0), std::invalid_argument);
  EXPECT_THROW(QuadraticProblem(Vector{0.0}, -1.0), std::invalid_argument);
}

TEST(Registry, MakeProblem) {
  EXPECT_EQ(make_problem("rotation")->id(), "rotation");
  EXPECT_EQ(make_problem("quadratic")->dimension(), 2u);
  EXPECT_THROW(make_problem("saddle"), UnknownProblem);
}

TEST(Conditions, RotationAtItsConstants) {
  const auto p = rotation_problem();
  RngStream rng(1, 0);
  EXPECT_NEAR(check_monotonicity(*p, 1000, rng), 0.0, 1e-12 * kProbeScale * kProbeScale * 40);
  EXPECT_NEAR(check_coercivity(*p, 1000, rng), 0.0, 1e-12 * kProbeScale * kProbeScale * 40);
  EXPECT_LT(check_monotonicity(*p, 1000, rng, 0.5), 0.0);
  EXPECT_LT(check_coercivity(*p, 1000, rng, 1.2), 0.0);
}

TEST(Conditions, QuadraticAtItsConstants) {
  const auto p = make_problem("quadratic");
  RngStream rng(2, 0);
  EXPECT_NEAR(check_monotonicity(*p, 1000, rng), 0.0, 1e-12 * kProbeScale * kProbeScale * 40);
  EXPECT_NEAR(check_coercivity(*p, 1000, rng), 0.0, 1e-12 * kProbeScale * kProbeScale * 40);
}

TEST(Conditions, GrowthRatios) {
  RngStream rng(3, 0);
  const double rot = check_growth(*rotation_problem(), 200, 200, rng);
  EXPECT_GT(rot, 0.0);
  EXPECT_LE(rot, 1.0);
  const QuadraticProblem centered(Vector{0.0, 0.0}, 1.0);
  const double quad = check_growth(centered, 200, 2000, rng);
  EXPECT_LE(quad, centered.growth_c());
  EXPECT_GT(quad, 0.5);
}

TEST(TestFunctions, GradientsMatchFiniteDifferences) {
  const TestFunction fns[] = {TestFunction::linear(Vector{0.5, -2.0}), TestFunction::sin_sum(2)};
  auto rng = oracle::property_rng(4);
  std::normal_distribution<double> z(0.0, 2.0);
  for (const TestFunction& psi : fns) {
    for (int i = 0; i < 50; ++i) {
      const Vector x{z(rng), z(rng)};
      const Vector grad = psi.gradient(x);
      for (std::size_t d = 0; d < 2; ++d) {
        Vector xp = x;
        Vector xm = x;
        xp[d] += 1e-6;
        xm[d] -= 1e-6;
        EXPECT_NEAR(grad[d], (psi.value(xp) - psi.value(xm)) / 2e-6, 1e-8);
      }
      EXPECT_LE(norm(grad), psi.gradient_bound() + 1e-15);
    }
  }
  EXPECT_EQ(TestFunction::sin_sum(3).hessian_bound(), 3.0);
  EXPECT_EQ(TestFunction::linear(Vector{3.0, 4.0}).gradient_bound(), 5.0);
}

}  // namespace
}  // namespace saalab
