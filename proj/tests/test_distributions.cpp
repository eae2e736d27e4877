#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "mvquant/distributions.hpp"
#include "mvquant/rng.hpp"
#include "test_util.hpp"

using namespace mvq;

namespace {

struct Moments2 {
  double mx = 0, my = 0, vxx = 0, vxy = 0, vyy = 0;
};

Moments2 moments(const SampleSet& s) {
  Moments2 m;
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    m.mx += s.coord(i, 0);
    m.my += s.coord(i, 1);
  }
  m.mx /= n;
  m.my /= n;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double dx = s.coord(i, 0) - m.mx, dy = s.coord(i, 1) - m.my;
    m.vxx += dx * dx;
    m.vxy += dx * dy;
    m.vyy += dy * dy;
  }
  m.vxx /= n - 1;
  m.vxy /= n - 1;
  m.vyy /= n - 1;
  return m;
}

}  // namespace

TEST(Rng, ReproducibleAndStreamsDiffer) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 1000; ++s) seeds.insert(derive_seed(7, s));
  EXPECT_EQ(seeds.size(), 1000u);
}

TEST(Rng, VariateMoments) {
  Rng rng(5);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, se = 0, sg = 0, sg2 = 0, sc = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.standard_normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential(2.0);
    const double g = rng.gamma(0.5);
    sg += g;
    sg2 += g * g;
    sc += rng.chi_square(4.0);
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.015);
  EXPECT_NEAR(se / n, 0.5, 0.005);
  EXPECT_NEAR(sg / n, 0.5, 0.01);
  EXPECT_NEAR(sg2 / n - (sg / n) * (sg / n), 0.5, 0.02);
  EXPECT_NEAR(sc / n, 4.0, 0.04);
}

TEST(Distributions, GaussianCovariance) {
  const SampleSet s = sample(DistributionSpec::preset("gauss"), 100000, 3);
  const Moments2 m = moments(s);
  EXPECT_NEAR(m.mx, 0.0, 0.02);
  EXPECT_NEAR(m.my, 0.0, 0.02);
  EXPECT_NEAR(m.vxx, 2.0, 0.04);
  EXPECT_NEAR(m.vxy, 1.0, 0.03);
  EXPECT_NEAR(m.vyy, 1.0, 0.02);
}

TEST(Distributions, ExponentialMarginals) {
  const SampleSet s = sample(DistributionSpec::indep_exponential(Vector{1.0, 4.0}), 100000, 4);
  const Moments2 m = moments(s);
  EXPECT_NEAR(m.mx, 1.0, 0.015);
  EXPECT_NEAR(m.my, 0.25, 0.004);
  EXPECT_NEAR(m.vxy, 0.0, 0.01);
  for (double v : s.column(0)) ASSERT_GE(v, 0.0);
}

TEST(Distributions, SkewTMean) {
  // E[Y] = delta sqrt(nu / pi) Gamma((nu - 1) / 2) / Gamma(nu / 2).
  const double nu = 4.0;
  const double delta = 10.0 / std::sqrt(201.0);
  const double mean = delta * std::sqrt(nu / kPi) * std::tgamma((nu - 1) / 2) / std::tgamma(nu / 2);
  const SampleSet s = sample(DistributionSpec::preset("skewt"), 200000, 5);
  const Moments2 m = moments(s);
  EXPECT_NEAR(m.mx, mean, 0.015);
  EXPECT_NEAR(m.my, mean, 0.015);
}

TEST(Distributions, BananaMixtureMean) {
  const SampleSet s = sample(DistributionSpec::preset("banana"), 100000, 6);
  const Moments2 m = moments(s);
  EXPECT_NEAR(m.mx, 0.0, 0.03);
  EXPECT_NEAR(m.my, -0.625, 0.03);
  const GaussianMixtureSpec c = DistributionSpec::banana_components();
  ASSERT_EQ(c.weights.size(), 3u);
  EXPECT_DOUBLE_EQ(std::accumulate(c.weights.begin(), c.weights.end(), 0.0), 1.0);
}

TEST(Distributions, SameSeedSameSample) {
  for (const std::string& name : DistributionSpec::preset_names()) {
    const DistributionSpec spec = DistributionSpec::preset(name);
    const SampleSet a = sample(spec, 300, 9), b = sample(spec, 300, 9), c = sample(spec, 300, 10);
    ASSERT_EQ(a.size(), 300u);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.point(i), b.point(i)) << name;
      differs = differs || !(a.point(i) == c.point(i));
    }
    EXPECT_TRUE(differs) << name;
  }
}

TEST(Distributions, RejectsInvalidSpecs) {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(DistributionSpec::gaussian(Vector{0.0, 0.0}, bad), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(DistributionSpec::gaussian(Vector{0.0, 0.0}, asym), std::invalid_argument);
  EXPECT_THROW(DistributionSpec::gaussian(Vector{0.0}, Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
  EXPECT_THROW(DistributionSpec::indep_exponential(Vector{1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(DistributionSpec::skew_t(0.0, Vector{1.0, 1.0}), std::invalid_argument);
  GaussianSpec g{Vector{0.0, 0.0}, Eigen::MatrixXd::Identity(2, 2)};
  EXPECT_THROW(DistributionSpec::custom_mixture({0.5, 0.6}, {g, g}), std::invalid_argument);
  EXPECT_THROW(DistributionSpec::preset("nope"), std::invalid_argument);
}

TEST(Distributions, PsdFactor) {
  Eigen::MatrixXd pd(2, 2);
  pd << 2, 1, 1, 1;
  const Eigen::MatrixXd l = psd_factor(pd);
  EXPECT_LT((l * l.transpose() - pd).norm(), 1e-14);
  Eigen::MatrixXd psd(2, 2);
  psd << 1, 1, 1, 1;
  const Eigen::MatrixXd l2 = psd_factor(psd);
  EXPECT_LT((l2 * l2.transpose() - psd).norm(), 1e-12);
}

TEST(Distributions, AnalyticCenterOutward) {
  EXPECT_NEAR(analytic_center_outward_radius(QuantileOrder(0.5)), std::sqrt(2.0 * std::log(2.0)), 1e-15);
  EXPECT_EQ(analytic_center_outward_radius(QuantileOrder(0.0)), 0.0);
  for (double tau : {0.1, 0.25, 0.5, 0.9, 0.99}) {
    const double r = analytic_center_outward_radius(QuantileOrder(tau));
    const Vector f = analytic_center_outward_cdf(Vector{r * 0.6, r * 0.8});
    EXPECT_NEAR(f.norm(), tau, 1e-13);
    EXPECT_NEAR(f[0] / f.norm(), 0.6, 1e-13);
  }
  EXPECT_EQ(analytic_center_outward_cdf(Vector{0.0, 0.0}).norm(), 0.0);
}

TEST(SampleSet, TransformedAndNorms) {
  const SampleSet s = testkit::random_sample(1, 50);
  const Eigen::Matrix2d r = testkit::rotation(0.3);
  const Vector shift{1.0, -2.0};
  const SampleSet t = s.transformed(r, shift);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vector expect = testkit::apply(r, s.point(i), shift);
    EXPECT_NEAR(t.coord(i, 0), expect[0], 1e-14);
    EXPECT_NEAR(t.coord(i, 1), expect[1], 1e-14);
    EXPECT_DOUBLE_EQ(t.norms()[i], t.point(i).norm());
  }
}
