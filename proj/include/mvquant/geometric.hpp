#pragma once

// Empirical geometric (spatial) distribution and quantile functions, the
// probability-content relabeling, and relabeled geometric contours.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mvquant/contour.hpp"
#include "mvquant/core.hpp"
#include "mvquant/distributions.hpp"

namespace mvq {

/// Thrown when a sample in d >= 2 lies on a single line.
class DegenerateSampleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GeometricSolverOptions {
  double tol = 1e-8;  // on the distance from 0 to the subdifferential
  std::size_t max_iter = 10000;
  double collision = 1e-12;
};

struct GeometricCdfValue {
  Vector value;
  Vector at;
};

struct GeometricQuantileResult {
  Vector point;
  QuantileOrder order;
  UnitDirection direction;
  /// Distance from 0 to the subdifferential of the objective at `point`;
  /// equals ||F(point) - tau u|| away from data points.
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Nondecreasing values ||F_N(X_i)||, each excluding X_i from its own average.
struct RelabelTable {
  std::vector<double> sorted_norms;
};

/// (1/N) sum_i (||z - X_i|| - ||X_i||) - tau u'z
double geometric_objective(const Vector& z, const SampleSet& sample, QuantileOrder tau,
                           const UnitDirection& u);

/// (1/N) sum over X_i != z of (z - X_i) / ||z - X_i||.
GeometricCdfValue geometric_cdf(const Vector& z, const SampleSet& sample,
                                double collision = GeometricSolverOptions{}.collision);

/// Minimizer of geometric_objective. In d >= 2 a Newton iteration with
/// backtracking on the objective, falling back to Weiszfeld steps (with the
/// Vardi-Zhang correction on data points). In d = 1 the minimizer is an order
/// statistic and is computed directly; on a flat minimum the left endpoint is
/// returned.
///
/// Throws DegenerateSampleError if d >= 2 and the sample is collinear.
/// Non-convergence is reported through `converged` with the best iterate.
GeometricQuantileResult geometric_quantile(const SampleSet& sample, QuantileOrder tau,
                                           const UnitDirection& u,
                                           const GeometricSolverOptions& opts = {});

RelabelTable build_relabel_table(const SampleSet& sample);

/// tau' = type-1 empirical tau-quantile of the table (0 for tau = 0), so that
/// ceil(tau N) sample points satisfy ||F_N(X_i)|| <= tau'.
QuantileOrder relabel_order(const RelabelTable& table, QuantileOrder tau);

/// Vertices Q_N(tau' u_k) for every direction, tau' = relabel_order(tau).
Contour relabeled_geometric_contour(const SampleSet& sample, const RelabelTable& table,
                                   QuantileOrder tau, std::span<const UnitDirection> dirs,
                                   const GeometricSolverOptions& opts = {});
Contour relabeled_geometric_contour(const SampleSet& sample, QuantileOrder tau,
                                   const DirectionGrid& dirs,
                                   const GeometricSolverOptions& opts = {});

/// rho_alpha(z) = |z| + (2 alpha - 1) z
double check_function(double z, double alpha);

}  // namespace mvq
