#pragma once

// Seeded samplers for the distributions used by the experiments, the sample
// container shared by the estimators, and the analytic center-outward radius
// of the standard bivariate Gaussian.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mvquant/core.hpp"

namespace mvq {

struct GaussianSpec {
  Vector mean;
  Eigen::MatrixXd covariance;
};

/// Independent exponential marginals; marginal means are 1 / rates.
struct IndepExponentialSpec {
  Vector rates;
};

/// Azzalini skew-t with location 0 and identity scale.
struct SkewTSpec {
  double dof = 4.0;
  Vector slant;
};

/// Gaussian mixture; weights sum to one.
struct GaussianMixtureSpec {
  std::vector<double> weights;
  std::vector<GaussianSpec> components;
};

/// The three-component banana-shaped mixture of the Figure 1 study.
struct BananaMixtureSpec {};

class DistributionSpec {
 public:
  using Kind = std::variant<GaussianSpec, IndepExponentialSpec, SkewTSpec, BananaMixtureSpec,
                            GaussianMixtureSpec>;

  /// Validates the parameters; throws std::invalid_argument.
  explicit DistributionSpec(Kind kind);

  static DistributionSpec gaussian(Vector mean, Eigen::MatrixXd covariance);
  static DistributionSpec indep_exponential(Vector rates);
  static DistributionSpec skew_t(double dof, Vector slant);
  static DistributionSpec banana_mixture();
  static DistributionSpec custom_mixture(std::vector<double> weights,
                                         std::vector<GaussianSpec> components);

  /// Named presets: gauss, gauss-aniso, gauss-std, exp, skewt, banana.
  static DistributionSpec preset(std::string_view name);
  static std::vector<std::string> preset_names();

  const Kind& kind() const { return kind_; }
  std::size_t dimension() const;
  /// The banana preset expanded into its Gaussian components.
  static GaussianMixtureSpec banana_components();

 private:
  Kind kind_;
};

/// An immutable N x d sample, stored column-wise.
class SampleSet {
 public:
  static SampleSet from_points(std::span<const Vector> points, std::uint64_t seed = 0,
                               std::optional<DistributionSpec> spec = std::nullopt);
  /// `columns[j]` holds the j-th coordinate of every point.
  static SampleSet from_columns(std::vector<std::vector<double>> columns, std::uint64_t seed = 0,
                                std::optional<DistributionSpec> spec = std::nullopt);

  std::size_t size() const { return n_; }
  std::size_t dimension() const { return columns_.size(); }
  std::span<const double> column(std::size_t j) const { return columns_[j]; }
  double coord(std::size_t i, std::size_t j) const { return columns_[j][i]; }
  Vector point(std::size_t i) const;
  /// ||X_i|| for every point.
  std::span<const double> norms() const { return norms_; }
  std::uint64_t seed() const { return seed_; }
  const std::optional<DistributionSpec>& spec() const { return spec_; }

  /// theta + O x for every point; O is d x d.
  SampleSet transformed(const Eigen::MatrixXd& rotation, const Vector& shift) const;

 private:
  SampleSet() = default;
  std::size_t n_ = 0;
  std::vector<std::vector<double>> columns_;
  std::vector<double> norms_;
  std::uint64_t seed_ = 0;
  std::optional<DistributionSpec> spec_;
};

/// N i.i.d. draws; identical (spec, N, seed) give bit-identical samples.
SampleSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Radius of the order-tau center-outward contour of N(0, I_2):
/// sqrt(-2 ln(1 - tau)).
double analytic_center_outward_radius(QuantileOrder tau);

/// Center-outward distribution function of N(0, I_2):
/// (1 - exp(-|z|^2 / 2)) z / |z|.
Vector analytic_center_outward_cdf(const Vector& z);

/// A factor L with L L' = cov: the Cholesky factor when cov is positive
/// definite, V sqrt(Lambda) when it is only semi-definite. Throws if cov is not
/// symmetric positive semi-definite.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& cov);

// key=value text form of a DistributionSpec.
std::string to_config_text(const DistributionSpec& spec);
DistributionSpec parse_distribution_config(std::string_view text);

}  // namespace mvq
