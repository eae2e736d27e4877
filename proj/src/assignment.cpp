#include "mvquant/assignment.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "mvquant/kernels.hpp"

namespace mvq {

double planar_sq_cost(const PlanarPointsView& sources, std::size_t i, const PlanarPointsView& targets,
                      std::size_t j) {
  const double dx = sources.x[i] - targets.x[j];
  const double dy = sources.y[i] - targets.y[j];
  return dx * dx + dy * dy;
}

double assignment_cost(const PlanarPointsView& sources, const PlanarPointsView& targets,
                       std::span<const std::size_t> to_target) {
  double total = 0.0;
  for (std::size_t i = 0; i < to_target.size(); ++i) total += planar_sq_cost(sources, i, targets, to_target[i]);
  return total;
}

std::vector<std::size_t> solve_planar_assignment(const PlanarPointsView& sources,
                                                 const PlanarPointsView& targets) {
  const std::size_t n = sources.size();
  if (targets.size() != n || sources.y.size() != n || targets.y.size() != n) {
    throw std::invalid_argument("solve_planar_assignment: source/target sizes differ");
  }
  if (n == 0) return {};
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::invalid_argument("solve_planar_assignment: problem too large");
  }
  constexpr std::int32_t kFree = -1;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n, 0.0), v(n, inf);
  std::vector<std::int32_t> col4row(n, kFree), row4col(n, kFree);

  // Column reduction: v_j = min_i c_ij.
  for (std::size_t i = 0; i < n; ++i) {
    kernels::column_min_sq_dist(sources.x[i], sources.y[i], targets.x, targets.y, v);
  }
  // Row reduction: u_i = min_j (c_ij - v_j); match along tight edges.
  for (std::size_t i = 0; i < n; ++i) {
    const kernels::ArgMin best = kernels::row_min_reduced(sources.x[i], sources.y[i], targets.x, targets.y, v);
    u[i] = best.value;
    if (row4col[best.index] == kFree) {
      row4col[best.index] = static_cast<std::int32_t>(i);
      col4row[i] = static_cast<std::int32_t>(best.index);
    }
  }

  std::vector<double> dist(n);
  std::vector<std::int32_t> path(n);
  std::vector<std::uint8_t> scanned(n);
  std::vector<std::size_t> rows_visited, cols_scanned;
  rows_visited.reserve(n);
  cols_scanned.reserve(n);

  for (std::size_t cur_row = 0; cur_row < n; ++cur_row) {
    if (col4row[cur_row] != kFree) continue;
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(path.begin(), path.end(), kFree);
    std::fill(scanned.begin(), scanned.end(), std::uint8_t{0});
    rows_visited.clear();
    cols_scanned.clear();

    double min_val = 0.0;
    std::size_t i = cur_row;
    std::size_t sink = n;
    while (sink == n) {
      rows_visited.push_back(i);
      kernels::ScanArgs args;
      args.px = sources.x[i];
      args.py = sources.y[i];
      args.base = min_val - u[i];
      args.gx = targets.x;
      args.gy = targets.y;
      args.v = v;
      args.dist = dist;
      args.path = path;
      args.scanned = scanned;
      args.row = static_cast<std::int32_t>(i);
      const kernels::ArgMin next = kernels::assignment_scan(args);
      if (next.index >= n || next.value == inf) {
        throw std::runtime_error("solve_planar_assignment: no augmenting path (non-finite costs?)");
      }
      min_val = next.value;
      const std::size_t j = next.index;
      scanned[j] = 1;
      cols_scanned.push_back(j);
      if (row4col[j] == kFree) {
        sink = j;
      } else {
        i = static_cast<std::size_t>(row4col[j]);
      }
    }

    u[cur_row] += min_val;
    for (std::size_t r : rows_visited) {
      if (r != cur_row) u[r] += min_val - dist[static_cast<std::size_t>(col4row[r])];
    }
    for (std::size_t c : cols_scanned) v[c] -= min_val - dist[c];

    std::size_t j = sink;
    for (;;) {
      const auto r = static_cast<std::size_t>(path[j]);
      row4col[j] = static_cast<std::int32_t>(r);
      const std::int32_t previous = col4row[r];
      col4row[r] = static_cast<std::int32_t>(j);
      if (r == cur_row) break;
      j = static_cast<std::size_t>(previous);
    }
  }

  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::size_t>(col4row[i]);
  return out;
}

}  // namespace mvq
