#pragma once

// Discrete center-outward distribution and quantile functions: the optimal
// least-squares coupling between a planar sample and a regular polar grid of
// the punctured unit ball, and the contours read off that coupling.

#include <cstddef>
#include <span>
#include <vector>

#include "mvquant/assignment.hpp"
#include "mvquant/contour.hpp"
#include "mvquant/core.hpp"
#include "mvquant/distributions.hpp"

namespace mvq {

/// n_R x n_S grid: point(ring i, sector j) = r_i (cos theta_j, sin theta_j)
/// with r_i = i / (n_R + 1), i = 1..n_R, and theta_j = 2 pi j / n_S,
/// j = 0..n_S-1. Flat index = (i - 1) n_S + j.
class SphericalGrid {
 public:
  std::size_t rings() const { return n_rings_; }
  std::size_t sectors() const { return n_sectors_; }
  std::size_t size() const { return xs_.size(); }

  /// Radius of ring i (1-based).
  double ring_radius(std::size_t ring) const;
  std::size_t index(std::size_t ring, std::size_t sector) const;
  std::size_t ring_of(std::size_t idx) const { return idx / n_sectors_ + 1; }
  std::size_t sector_of(std::size_t idx) const { return idx % n_sectors_; }
  Vector point(std::size_t idx) const { return Vector{xs_[idx], ys_[idx]}; }
  PlanarPointsView points() const { return {xs_, ys_}; }

 private:
  friend SphericalGrid make_spherical_grid(std::size_t n_rings, std::size_t n_sectors);
  std::size_t n_rings_ = 0, n_sectors_ = 0;
  std::vector<double> xs_, ys_;
};

SphericalGrid make_spherical_grid(std::size_t n_rings, std::size_t n_sectors);

/// Optimal bijection sample -> grid for the squared-distance cost.
struct Assignment {
  std::vector<std::size_t> to_grid;  // sample index -> grid index
  double cost = 0.0;                 // sum of squared distances

  /// grid index -> sample index
  std::vector<std::size_t> from_grid() const;
};

/// Exact solve; requires N = n_R n_S and a planar sample.
Assignment optimal_assignment(const SampleSet& sample, const SphericalGrid& grid);
/// Same against arbitrary planar targets (e.g. a rotated grid).
Assignment optimal_assignment(const SampleSet& sample, const PlanarPointsView& targets);

/// F_N(X_k): the grid point coupled with sample point k.
Vector empirical_center_outward_cdf(const Assignment& assignment, const SphericalGrid& grid,
                                    std::size_t k);

/// Inverse-distance (power 2) average of the coupled grid values of the m
/// nearest sample points, clamped to the closed unit ball. Returns the
/// coupled value exactly when z coincides with a sample point.
Vector interpolated_center_outward_cdf(const Assignment& assignment, const SphericalGrid& grid,
                                       const SampleSet& sample, const Vector& z, std::size_t m);

/// For each direction: the sample points coupled with the angularly nearest
/// node on the two rings bracketing tau, linearly interpolated in radius.
/// Outside [r_1, r_nR] the nearest ring is used and `extrapolated` is set.
Contour center_outward_contour(const Assignment& assignment, const SphericalGrid& grid,
                               const SampleSet& sample, QuantileOrder tau,
                               std::span<const UnitDirection> dirs);
Contour center_outward_contour(const Assignment& assignment, const SphericalGrid& grid,
                               const SampleSet& sample, QuantileOrder tau, const DirectionGrid& dirs);

}  // namespace mvq
