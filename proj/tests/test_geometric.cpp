#include <gtest/gtest.h>

#include <cmath>

#include "mvquant/geometric.hpp"
#include "mvquant/kernels.hpp"
#include "mvquant/rng.hpp"
#include "test_util.hpp"

using namespace mvq;

namespace {

std::vector<Vector> points_of(const SampleSet& s) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.point(i));
  return out;
}

// Plain Weiszfeld iteration for the tau-shifted objective, no safeguards.
Vector weiszfeld_oracle(const std::vector<Vector>& xs, double tau, const Vector& u, int iters) {
  Vector z{0.1, -0.05};
  const double n = static_cast<double>(xs.size());
  for (int it = 0; it < iters; ++it) {
    double w = 0.0, ax = n * tau * u[0], ay = n * tau * u[1];
    for (const Vector& x : xs) {
      const double d = distance(z, x);
      w += 1.0 / d;
      ax += x[0] / d;
      ay += x[1] / d;
    }
    z = Vector{ax / w, ay / w};
  }
  return z;
}

}  // namespace

TEST(GeometricObjective, MatchesOracle) {
  const SampleSet s = testkit::random_sample(1, 120, 3);
  const auto xs = points_of(s);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Vector z{rng.standard_normal(), rng.standard_normal(), rng.standard_normal()};
    const UnitDirection u = UnitDirection::normalized(Vector{rng.standard_normal(), rng.standard_normal(), 0.5});
    const double tau = 0.9 * rng.uniform();
    EXPECT_NEAR(geometric_objective(z, s, QuantileOrder(tau), u), testkit::objective_oracle(xs, z, tau, u.vector()),
                1e-12);
  }
}

TEST(GeometricCdf, MatchesOracleAndExcludesCoincidentPoint) {
  const SampleSet s = testkit::random_sample(3, 200);
  const auto xs = points_of(s);
  for (std::size_t i : {0u, 7u, 199u}) {
    const Vector f = geometric_cdf(xs[i], s).value;
    const Vector g = testkit::cdf_oracle(xs, xs[i]);
    EXPECT_NEAR(f[0], g[0], 1e-13);
    EXPECT_NEAR(f[1], g[1], 1e-13);
    EXPECT_LE(f.norm(), 1.0 - 1.0 / 200.0 + 1e-12);
  }
  const Vector far = geometric_cdf(Vector{1e6, 0.0}, s).value;
  EXPECT_NEAR(far[0], 1.0, 1e-6);
}

TEST(GeometricQuantile, MedianMatchesWeiszfeldOracle) {
  const SampleSet s = testkit::random_sample(4, 150);
  const auto xs = points_of(s);
  const UnitDirection u = UnitDirection::normalized(Vector{1.0, 2.0});
  for (double tau : {0.0, 0.3, 0.8}) {
    const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(tau), u);
    ASSERT_TRUE(q.converged);
    const Vector ref = weiszfeld_oracle(xs, tau, u.vector(), 20000);
    EXPECT_NEAR(distance(q.point, ref), 0.0, 1e-6) << "tau=" << tau;
  }
}

TEST(GeometricQuantile, InversePair) {
  const SampleSet s = sample(DistributionSpec::preset("gauss"), 800, 5);
  const DirectionGrid dirs = make_direction_grid(12);
  for (double tau : {0.2, 0.6, 0.95}) {
    for (const UnitDirection& u : dirs.directions()) {
      const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(tau), u);
      ASSERT_TRUE(q.converged);
      const Vector f = geometric_cdf(q.point, s).value;
      EXPECT_NEAR(distance(f, tau * u.vector()), 0.0, 1e-7);
    }
  }
}

TEST(GeometricQuantile, LandsOnDataPoint) {
  // Five points with the centre one as the spatial median.
  const std::vector<Vector> pts{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  const SampleSet s = SampleSet::from_points(pts);
  const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(0.0), UnitDirection(Vector{1.0, 0.0}));
  EXPECT_TRUE(q.converged);
  EXPECT_NEAR(q.point.norm(), 0.0, 1e-9);
}

TEST(GeometricQuantile, UnivariateFlatMinimum) {
  const std::vector<Vector> pts{{1.0}, {2.0}, {3.0}, {4.0}, {5.0}, {6.0}, {7.0}, {8.0}};
  const SampleSet s = SampleSet::from_points(pts);
  const UnitDirection u(Vector{1.0});
  const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(0.0), u);
  // The objective is flat on [4, 5]; the left endpoint is returned.
  EXPECT_DOUBLE_EQ(q.point[0], 4.0);
  EXPECT_NEAR(geometric_objective(q.point, s, QuantileOrder(0.0), u),
              geometric_objective(Vector{4.5}, s, QuantileOrder(0.0), u), 1e-15);
}

TEST(GeometricQuantile, UnivariateFivePoints) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<Vector> pts;
  for (double x : xs) pts.push_back(Vector{x});
  const SampleSet s = SampleSet::from_points(pts);
  const UnitDirection u(Vector{1.0});
  const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(0.4), u);
  EXPECT_TRUE(q.converged);
  EXPECT_DOUBLE_EQ(q.point[0], 4.0);
  EXPECT_NEAR(geometric_objective(q.point, s, QuantileOrder(0.4), u), testkit::univariate_min_oracle(xs, 0.4), 1e-6);
}

TEST(GeometricQuantile, UnivariateMatchesCheckFunction) {
  // (1/N) sum (rho_a(X_i - z) - rho_a(X_i)) = objective with beta = 2a - 1.
  const std::vector<double> xs{-1.3, 0.2, 0.7, 2.5, 3.1, -0.4};
  for (double alpha : {0.1, 0.5, 0.85}) {
    for (double z : {-2.0, 0.0, 0.7, 1.9}) {
      double lhs = 0.0, rhs = 0.0;
      for (double x : xs) {
        lhs += check_function(x - z, alpha) - check_function(x, alpha);
        rhs += std::abs(z - x) - std::abs(x);
      }
      rhs -= (2.0 * alpha - 1.0) * z * static_cast<double>(xs.size());
      EXPECT_NEAR(lhs, rhs, 1e-12);
    }
  }
}

TEST(GeometricQuantile, Errors) {
  const std::vector<Vector> line{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
  EXPECT_THROW(geometric_quantile(SampleSet::from_points(line), QuantileOrder(0.5), UnitDirection(Vector{1.0, 0.0})),
               DegenerateSampleError);
  const SampleSet s = testkit::random_sample(1, 10);
  EXPECT_THROW(geometric_quantile(s, QuantileOrder(0.5), UnitDirection(Vector{1.0, 0.0, 0.0})), std::invalid_argument);
  EXPECT_THROW(geometric_objective(Vector{1.0}, s, QuantileOrder(0.5), UnitDirection(Vector{1.0, 0.0})),
               std::invalid_argument);
}

TEST(GeometricQuantile, ReportsNonConvergence) {
  const SampleSet s = testkit::random_sample(2, 100);
  GeometricSolverOptions opts;
  opts.max_iter = 1;
  const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(0.9), UnitDirection(Vector{1.0, 0.0}), opts);
  EXPECT_FALSE(q.converged);
  EXPECT_GT(q.gradient_norm, opts.tol);
}

TEST(GeometricQuantile, ScalarAndVectorKernelsAgree) {
  if (!kernels::isa_available(kernels::Isa::avx2)) GTEST_SKIP();
  const SampleSet s = testkit::random_sample(8, 500);
  const UnitDirection u = UnitDirection::normalized(Vector{-1.0, 0.3});
  const kernels::Isa before = kernels::active_isa();
  kernels::set_isa(kernels::Isa::scalar);
  const Vector a = geometric_quantile(s, QuantileOrder(0.7), u).point;
  kernels::set_isa(kernels::Isa::avx2);
  const Vector b = geometric_quantile(s, QuantileOrder(0.7), u).point;
  kernels::set_isa(before);
  EXPECT_NEAR(distance(a, b), 0.0, 1e-8);
}

TEST(Relabel, TableAndOrder) {
  const SampleSet s = testkit::random_sample(9, 400);
  const RelabelTable t = build_relabel_table(s);
  ASSERT_EQ(t.sorted_norms.size(), 400u);
  EXPECT_TRUE(std::is_sorted(t.sorted_norms.begin(), t.sorted_norms.end()));
  const auto xs = points_of(s);
  std::vector<double> oracle;
  for (const Vector& x : xs) oracle.push_back(testkit::cdf_oracle(xs, x).norm());
  std::sort(oracle.begin(), oracle.end());
  for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(t.sorted_norms[i], oracle[i], 1e-13);

  EXPECT_EQ(relabel_order(t, QuantileOrder(0.0)).value(), 0.0);
  EXPECT_EQ(relabel_order(t, QuantileOrder(0.5)).value(), t.sorted_norms[199]);
  EXPECT_EQ(relabel_order(t, QuantileOrder(0.501)).value(), t.sorted_norms[200]);
  double prev = 0.0;
  for (double tau = 0.01; tau < 1.0; tau += 0.01) {
    const double r = relabel_order(t, QuantileOrder(tau)).value();
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(Relabel, ContourFlagsFailures) {
  const SampleSet s = testkit::random_sample(10, 200);
  GeometricSolverOptions opts;
  opts.max_iter = 1;
  const Contour c = relabeled_geometric_contour(s, QuantileOrder(0.5), make_direction_grid(8), opts);
  EXPECT_EQ(c.vertices.size(), 8u);
  EXPECT_TRUE(c.partial());
}
