#pragma once

// Exact linear sum assignment for planar squared-Euclidean costs.
//
// Shortest augmenting path (Jonker-Volgenant family): dual potentials are
// initialised by column and row reduction, which already matches part of the
// rows, and every remaining row is inserted by a Dijkstra search over reduced
// costs. Costs are computed on the fly from the coordinates, so memory stays
// O(N). Worst case O(N^3); ties resolve to the lowest column index.

#include <cstddef>
#include <span>
#include <vector>

namespace mvq {

struct PlanarPointsView {
  std::span<const double> x, y;
  std::size_t size() const { return x.size(); }
};

/// |s_i - t_j|^2, evaluated exactly as the solver kernels evaluate it.
double planar_sq_cost(const PlanarPointsView& sources, std::size_t i,
                      const PlanarPointsView& targets, std::size_t j);

/// Permutation p minimizing sum_i |s_i - t_{p(i)}|^2. Sizes must match.
std::vector<std::size_t> solve_planar_assignment(const PlanarPointsView& sources,
                                                 const PlanarPointsView& targets);

/// sum_i planar_sq_cost(i, p(i)), accumulated in source order.
double assignment_cost(const PlanarPointsView& sources, const PlanarPointsView& targets,
                       std::span<const std::size_t> to_target);

}  // namespace mvq
