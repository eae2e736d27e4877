#include "mvquant/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mvquant/kernels.hpp"

namespace mvq {

double SphericalGrid::ring_radius(std::size_t ring) const {
  return static_cast<double>(ring) / static_cast<double>(n_rings_ + 1);
}

std::size_t SphericalGrid::index(std::size_t ring, std::size_t sector) const {
  if (ring < 1 || ring > n_rings_ || sector >= n_sectors_) {
    throw std::out_of_range("SphericalGrid::index: ring/sector out of range");
  }
  return (ring - 1) * n_sectors_ + sector;
}

SphericalGrid make_spherical_grid(std::size_t n_rings, std::size_t n_sectors) {
  if (n_rings < 1) throw std::invalid_argument("make_spherical_grid: n_R must be >= 1");
  if (n_sectors < 3) throw std::invalid_argument("make_spherical_grid: n_S must be >= 3");
  SphericalGrid g;
  g.n_rings_ = n_rings;
  g.n_sectors_ = n_sectors;
  g.xs_.reserve(n_rings * n_sectors);
  g.ys_.reserve(n_rings * n_sectors);
  for (std::size_t i = 1; i <= n_rings; ++i) {
    const double r = g.ring_radius(i);
    for (std::size_t j = 0; j < n_sectors; ++j) {
      const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_sectors);
      g.xs_.push_back(r * std::cos(theta));
      g.ys_.push_back(r * std::sin(theta));
    }
  }
  return g;
}

std::vector<std::size_t> Assignment::from_grid() const {
  std::vector<std::size_t> inv(to_grid.size());
  for (std::size_t k = 0; k < to_grid.size(); ++k) inv[to_grid[k]] = k;
  return inv;
}

Assignment optimal_assignment(const SampleSet& sample, const PlanarPointsView& targets) {
  if (sample.dimension() != 2) throw std::invalid_argument("optimal_assignment: planar samples only");
  if (sample.size() != targets.size()) {
    throw std::invalid_argument("optimal_assignment: N = " + std::to_string(sample.size()) +
                                " but the grid has " + std::to_string(targets.size()) + " points");
  }
  const PlanarPointsView sources{sample.column(0), sample.column(1)};
  Assignment a;
  a.to_grid = solve_planar_assignment(sources, targets);
  a.cost = assignment_cost(sources, targets, a.to_grid);
  return a;
}

Assignment optimal_assignment(const SampleSet& sample, const SphericalGrid& grid) {
  return optimal_assignment(sample, grid.points());
}

Vector empirical_center_outward_cdf(const Assignment& assignment, const SphericalGrid& grid,
                                    std::size_t k) {
  if (k >= assignment.to_grid.size()) throw std::out_of_range("empirical_center_outward_cdf: bad index");
  return grid.point(assignment.to_grid[k]);
}

Vector interpolated_center_outward_cdf(const Assignment& assignment, const SphericalGrid& grid,
                                       const SampleSet& sample, const Vector& z, std::size_t m) {
  if (m < 1) throw std::invalid_argument("interpolated_center_outward_cdf: m must be >= 1");
  if (z.dimension() != 2 || sample.dimension() != 2) {
    throw std::invalid_argument("interpolated_center_outward_cdf: planar inputs only");
  }
  const std::size_t n = sample.size();
  m = std::min(m, n);
  std::vector<double> d2(n);
  kernels::planar_sq_distances(z[0], z[1], sample.column(0), sample.column(1), d2);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto closer = [&](std::size_t a, std::size_t b) { return d2[a] < d2[b] || (d2[a] == d2[b] && a < b); };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(), closer);

  if (d2[order[0]] == 0.0) return empirical_center_outward_cdf(assignment, grid, order[0]);

  double wsum = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t k = order[r];
    const double w = 1.0 / d2[k];
    const Vector g = grid.point(assignment.to_grid[k]);
    vx += w * g[0];
    vy += w * g[1];
    wsum += w;
  }
  Vector out{vx / wsum, vy / wsum};
  const double norm = out.norm();
  if (norm > 1.0) out *= 1.0 / norm;
  return out;
}

Contour center_outward_contour(const Assignment& assignment, const SphericalGrid& grid,
                               const SampleSet& sample, QuantileOrder tau,
                               std::span<const UnitDirection> dirs) {
  if (!(tau.value() > 0.0)) throw std::invalid_argument("center_outward_contour: tau must be > 0");
  if (assignment.to_grid.size() != grid.size() || sample.size() != grid.size()) {
    throw std::invalid_argument("center_outward_contour: assignment/grid/sample sizes differ");
  }
  const std::vector<std::size_t> owner = assignment.from_grid();
  const std::size_t n_rings = grid.rings();
  const double scaled = tau.value() * static_cast<double>(n_rings + 1);

  Contour c;
  c.tau = tau;
  c.method = ContourMethod::center_outward;
  c.closed = dirs.size() >= 3;

  std::size_t lo = static_cast<std::size_t>(std::floor(scaled));
  std::size_t hi = lo + 1;
  double w_hi = scaled - static_cast<double>(lo);
  if (lo < 1) {
    lo = hi = 1;
    w_hi = 0.0;
    c.extrapolated = true;
  } else if (lo >= n_rings) {
    c.extrapolated = lo > n_rings || w_hi > 0.0;
    lo = hi = n_rings;
    w_hi = 0.0;
  }

  const auto n_sectors = static_cast<double>(grid.sectors());
  for (const UnitDirection& u : dirs) {
    if (u.dimension() != 2) throw std::invalid_argument("center_outward_contour: planar directions only");
    double angle = std::atan2(u[1], u[0]);
    if (angle < 0.0) angle += 2.0 * kPi;
    const auto sector = static_cast<std::size_t>(std::llround(angle * n_sectors / (2.0 * kPi))) % grid.sectors();
    const Vector inner = sample.point(owner[grid.index(lo, sector)]);
    const Vector outer = sample.point(owner[grid.index(hi, sector)]);
    c.vertices.push_back(inner * (1.0 - w_hi) + outer * w_hi);
  }
  return c;
}

Contour center_outward_contour(const Assignment& assignment, const SphericalGrid& grid,
                               const SampleSet& sample, QuantileOrder tau, const DirectionGrid& dirs) {
  return center_outward_contour(assignment, grid, sample, tau, dirs.directions());
}

}  // namespace mvq
