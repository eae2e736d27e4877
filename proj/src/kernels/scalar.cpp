#include <cmath>

#include "mvquant/kernels.hpp"

namespace mvq::kernels::scalar {

PlanarMoments planar_moments(double zx, double zy, const PlanarSample& s, double collision_eps) {
  PlanarMoments m;
  const std::size_t n = s.xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.xs[i], y = s.ys[i];
    const double dx = zx - x;
    const double dy = zy - y;
    const double d = std::sqrt(dx * dx + dy * dy);
    m.sum_dev += d - s.norms[i];
    if (d < collision_eps) {
      ++m.collisions;
      continue;
    }
    const double w = 1.0 / d;
    const double ex = dx * w;
    const double ey = dy * w;
    m.sum_ex += ex;
    m.sum_ey += ey;
    m.sum_w += w;
    m.sum_wx += x * w;
    m.sum_wy += y * w;
    m.h_xx += ey * ey * w;
    m.h_xy -= ex * ey * w;
    m.h_yy += ex * ex * w;
  }
  return m;
}

ArgMin assignment_scan(const ScanArgs& a) {
  ArgMin best;
  const std::size_t n = a.gx.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (a.scanned[j]) continue;
    const double dx = a.px - a.gx[j];
    const double dy = a.py - a.gy[j];
    const double r = (a.base + (dx * dx + dy * dy)) - a.v[j];
    if (r < a.dist[j]) {
      a.dist[j] = r;
      a.path[j] = a.row;
    }
    if (a.dist[j] < best.value) {
      best.value = a.dist[j];
      best.index = j;
    }
  }
  return best;
}

void column_min_sq_dist(double px, double py, std::span<const double> gx,
                        std::span<const double> gy, std::span<double> colmin) {
  for (std::size_t j = 0; j < gx.size(); ++j) {
    const double dx = px - gx[j];
    const double dy = py - gy[j];
    const double c = dx * dx + dy * dy;
    if (c < colmin[j]) colmin[j] = c;
  }
}

ArgMin row_min_reduced(double px, double py, std::span<const double> gx,
                       std::span<const double> gy, std::span<const double> v) {
  ArgMin best;
  for (std::size_t j = 0; j < gx.size(); ++j) {
    const double dx = px - gx[j];
    const double dy = py - gy[j];
    const double r = (dx * dx + dy * dy) - v[j];
    if (r < best.value) {
      best.value = r;
      best.index = j;
    }
  }
  return best;
}

void planar_sq_distances(double zx, double zy, std::span<const double> xs,
                         std::span<const double> ys, std::span<double> out) {
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double dx = zx - xs[j];
    const double dy = zy - ys[j];
    out[j] = dx * dx + dy * dy;
  }
}

}  // namespace mvq::kernels::scalar
