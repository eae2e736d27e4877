#include "mvquant/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mvquant/rng.hpp"

namespace mvq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_gaussian(const GaussianSpec& g) {
  const auto d = static_cast<Eigen::Index>(g.mean.dimension());
  if (g.covariance.rows() != d || g.covariance.cols() != d) {
    throw std::invalid_argument("gaussian: covariance must be d x d with d = dim(mean)");
  }
  psd_factor(g.covariance);
}

Eigen::MatrixXd matrix2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw std::invalid_argument("covariance must be a non-empty square matrix");
  }
  if (!cov.allFinite()) throw std::invalid_argument("covariance has non-finite entries");
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("covariance is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd l = llt.matrixL();
    if (l.allFinite()) return l;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-12 * scale) {
    throw std::invalid_argument("covariance is not positive semi-definite");
  }
  return eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

DistributionSpec::DistributionSpec(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const GaussianSpec& g) { validate_gaussian(g); },
                 [](const IndepExponentialSpec& e) {
                   for (double r : e.rates.coords()) {
                     if (!(r > 0.0)) throw std::invalid_argument("exponential: rates must be > 0");
                   }
                 },
                 [](const SkewTSpec& t) {
                   if (!(t.dof > 0.0) || !std::isfinite(t.dof)) {
                     throw std::invalid_argument("skew_t: dof must be > 0");
                   }
                 },
                 [](const BananaMixtureSpec&) {},
                 [](const GaussianMixtureSpec& m) {
                   if (m.weights.empty() || m.weights.size() != m.components.size()) {
                     throw std::invalid_argument("mixture: need one weight per component");
                   }
                   double total = 0.0;
                   for (double w : m.weights) {
                     if (!(w >= 0.0)) throw std::invalid_argument("mixture: negative weight");
                     total += w;
                   }
                   if (std::abs(total - 1.0) > 1e-12) {
                     throw std::invalid_argument("mixture: weights must sum to 1");
                   }
                   const std::size_t d = m.components.front().mean.dimension();
                   for (const auto& c : m.components) {
                     if (c.mean.dimension() != d) {
                       throw std::invalid_argument("mixture: component dimensions differ");
                     }
                     validate_gaussian(c);
                   }
                 },
             },
             kind_);
}

DistributionSpec DistributionSpec::gaussian(Vector mean, Eigen::MatrixXd covariance) {
  return DistributionSpec(GaussianSpec{std::move(mean), std::move(covariance)});
}

DistributionSpec DistributionSpec::indep_exponential(Vector rates) {
  return DistributionSpec(IndepExponentialSpec{std::move(rates)});
}

DistributionSpec DistributionSpec::skew_t(double dof, Vector slant) {
  return DistributionSpec(SkewTSpec{dof, std::move(slant)});
}

DistributionSpec DistributionSpec::banana_mixture() { return DistributionSpec(BananaMixtureSpec{}); }

DistributionSpec DistributionSpec::custom_mixture(std::vector<double> weights,
                                                  std::vector<GaussianSpec> components) {
  return DistributionSpec(GaussianMixtureSpec{std::move(weights), std::move(components)});
}

GaussianMixtureSpec DistributionSpec::banana_components() {
  return GaussianMixtureSpec{
      {3.0 / 8.0, 3.0 / 8.0, 1.0 / 4.0},
      {GaussianSpec{Vector{-3.0, 0.0}, matrix2(5.0, -4.0, -4.0, 5.0)},
       GaussianSpec{Vector{3.0, 0.0}, matrix2(5.0, 4.0, 4.0, 5.0)},
       GaussianSpec{Vector{0.0, -2.5}, matrix2(4.0, 0.0, 0.0, 1.0)}},
  };
}

DistributionSpec DistributionSpec::preset(std::string_view name) {
  if (name == "gauss") return gaussian(Vector{0.0, 0.0}, matrix2(2.0, 1.0, 1.0, 1.0));
  if (name == "gauss-aniso") return gaussian(Vector{0.0, 0.0}, matrix2(1.0 / 8.0, 0.0, 0.0, 3.0 / 4.0));
  if (name == "gauss-std") return gaussian(Vector{0.0, 0.0}, matrix2(1.0, 0.0, 0.0, 1.0));
  if (name == "exp") return indep_exponential(Vector{1.0, 1.0});
  if (name == "skewt") return skew_t(4.0, Vector{10.0, 10.0});
  if (name == "banana") return banana_mixture();
  throw std::invalid_argument("unknown distribution preset: " + std::string(name));
}

std::vector<std::string> DistributionSpec::preset_names() {
  return {"gauss", "gauss-aniso", "gauss-std", "exp", "skewt", "banana"};
}

std::size_t DistributionSpec::dimension() const {
  return std::visit(Overloaded{
                        [](const GaussianSpec& g) { return g.mean.dimension(); },
                        [](const IndepExponentialSpec& e) { return e.rates.dimension(); },
                        [](const SkewTSpec& t) { return t.slant.dimension(); },
                        [](const BananaMixtureSpec&) { return std::size_t{2}; },
                        [](const GaussianMixtureSpec& m) { return m.components.front().mean.dimension(); },
                    },
                    kind_);
}

Vector SampleSet::point(std::size_t i) const {
  std::vector<double> c(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) c[j] = columns_[j][i];
  return Vector(std::move(c));
}

SampleSet SampleSet::from_columns(std::vector<std::vector<double>> columns, std::uint64_t seed,
                                  std::optional<DistributionSpec> spec) {
  if (columns.empty()) throw std::invalid_argument("SampleSet: dimension must be >= 1");
  const std::size_t n = columns.front().size();
  if (n == 0) throw std::invalid_argument("SampleSet: need at least one point");
  for (const auto& col : columns) {
    if (col.size() != n) throw std::invalid_argument("SampleSet: ragged columns");
    for (double v : col) {
      if (!std::isfinite(v)) throw std::invalid_argument("SampleSet: non-finite coordinate");
    }
  }
  SampleSet s;
  s.n_ = n;
  s.columns_ = std::move(columns);
  s.norms_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const auto& col : s.columns_) acc += col[i] * col[i];
    s.norms_[i] = std::sqrt(acc);
  }
  s.seed_ = seed;
  s.spec_ = std::move(spec);
  return s;
}

SampleSet SampleSet::from_points(std::span<const Vector> points, std::uint64_t seed,
                                 std::optional<DistributionSpec> spec) {
  if (points.empty()) throw std::invalid_argument("SampleSet: need at least one point");
  const std::size_t d = points.front().dimension();
  std::vector<std::vector<double>> columns(d, std::vector<double>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dimension() != d) throw std::invalid_argument("SampleSet: mixed dimensions");
    for (std::size_t j = 0; j < d; ++j) columns[j][i] = points[i][j];
  }
  return from_columns(std::move(columns), seed, std::move(spec));
}

SampleSet SampleSet::transformed(const Eigen::MatrixXd& rotation, const Vector& shift) const {
  const auto d = static_cast<Eigen::Index>(dimension());
  if (rotation.rows() != d || rotation.cols() != d || shift.dimension() != dimension()) {
    throw std::invalid_argument("SampleSet::transformed: dimension mismatch");
  }
  std::vector<std::vector<double>> out(dimension(), std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (Eigen::Index r = 0; r < d; ++r) {
      double acc = shift[static_cast<std::size_t>(r)];
      for (Eigen::Index c = 0; c < d; ++c) acc += rotation(r, c) * columns_[static_cast<std::size_t>(c)][i];
      out[static_cast<std::size_t>(r)][i] = acc;
    }
  }
  return from_columns(std::move(out), seed_, spec_);
}

namespace {

void draw_gaussian(Rng& rng, const Vector& mean, const Eigen::MatrixXd& factor,
                   std::vector<double>& z, std::vector<double>& out) {
  const std::size_t d = mean.dimension();
  for (std::size_t j = 0; j < d; ++j) z[j] = rng.standard_normal();
  for (std::size_t r = 0; r < d; ++r) {
    double acc = mean[r];
    for (std::size_t c = 0; c < d; ++c) {
      acc += factor(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * z[c];
    }
    out[r] = acc;
  }
}

struct MixtureSampler {
  std::vector<double> cumulative;
  std::vector<Vector> means;
  std::vector<Eigen::MatrixXd> factors;

  explicit MixtureSampler(const GaussianMixtureSpec& m) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.weights.size(); ++c) {
      acc += m.weights[c];
      cumulative.push_back(acc);
      means.push_back(m.components[c].mean);
      factors.push_back(psd_factor(m.components[c].covariance));
    }
  }

  std::size_t pick(double u) const {
    for (std::size_t c = 0; c + 1 < cumulative.size(); ++c) {
      if (u < cumulative[c]) return c;
    }
    return cumulative.size() - 1;
  }
};

}  // namespace

SampleSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample: N must be >= 1");
  const std::size_t d = spec.dimension();
  Rng rng(seed);
  std::vector<std::vector<double>> columns(d, std::vector<double>(n));
  std::vector<double> z(d + 1), x(d);
  auto store = [&](std::size_t i) {
    for (std::size_t j = 0; j < d; ++j) columns[j][i] = x[j];
  };

  std::visit(
      Overloaded{
          [&](const GaussianSpec& g) {
            const Eigen::MatrixXd factor = psd_factor(g.covariance);
            for (std::size_t i = 0; i < n; ++i) {
              draw_gaussian(rng, g.mean, factor, z, x);
              store(i);
            }
          },
          [&](const IndepExponentialSpec& e) {
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t j = 0; j < d; ++j) x[j] = rng.exponential(e.rates[j]);
              store(i);
            }
          },
          [&](const SkewTSpec& t) {
            // Skew-normal by conditioning: (X0, X) jointly Gaussian with
            // corr(X0, X) = delta, X returned with the sign of X0. Skew-t is the
            // skew-normal draw divided by sqrt(chi2_nu / nu).
            Eigen::VectorXd alpha(static_cast<Eigen::Index>(d));
            for (std::size_t j = 0; j < d; ++j) alpha(static_cast<Eigen::Index>(j)) = t.slant[j];
            const Eigen::VectorXd delta = alpha / std::sqrt(1.0 + alpha.squaredNorm());
            const Eigen::MatrixXd cond_cov =
                Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) -
                delta * delta.transpose();
            const Eigen::MatrixXd factor = psd_factor(cond_cov);
            for (std::size_t i = 0; i < n; ++i) {
              const double x0 = rng.standard_normal();
              for (std::size_t j = 0; j < d; ++j) z[j] = rng.standard_normal();
              const double sign = x0 > 0.0 ? 1.0 : -1.0;
              const double scale = std::sqrt(rng.chi_square(t.dof) / t.dof);
              for (std::size_t r = 0; r < d; ++r) {
                double acc = delta(static_cast<Eigen::Index>(r)) * x0;
                for (std::size_t c = 0; c < d; ++c) {
                  acc += factor(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * z[c];
                }
                x[r] = sign * acc / scale;
              }
              store(i);
            }
          },
          [&](const BananaMixtureSpec&) {
            const MixtureSampler mix(DistributionSpec::banana_components());
            for (std::size_t i = 0; i < n; ++i) {
              const std::size_t c = mix.pick(rng.uniform());
              draw_gaussian(rng, mix.means[c], mix.factors[c], z, x);
              store(i);
            }
          },
          [&](const GaussianMixtureSpec& m) {
            const MixtureSampler mix(m);
            for (std::size_t i = 0; i < n; ++i) {
              const std::size_t c = mix.pick(rng.uniform());
              draw_gaussian(rng, mix.means[c], mix.factors[c], z, x);
              store(i);
            }
          },
      },
      spec.kind());

  return SampleSet::from_columns(std::move(columns), seed, spec);
}

double analytic_center_outward_radius(QuantileOrder tau) {
  return std::sqrt(-2.0 * std::log1p(-tau.value()));
}

Vector analytic_center_outward_cdf(const Vector& z) {
  if (z.dimension() != 2) throw std::invalid_argument("analytic_center_outward_cdf: d must be 2");
  const double r = z.norm();
  if (r == 0.0) return Vector::zeros(2);
  const double rank = -std::expm1(-0.5 * r * r);
  return z * (rank / r);
}

}  // namespace mvq
