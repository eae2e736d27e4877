#include "mvquant/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mvquant/distributions.hpp"

namespace mvq {

std::string_view method_name(ContourMethod m) {
  return m == ContourMethod::geometric_relabeled ? "geometric" : "center-outward";
}

namespace {

bool on_segment(const Vector& a, const Vector& b, double x, double y) {
  const double cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
  const double len2 = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
  const double scale = std::max({1.0, std::abs(a[0]), std::abs(a[1]), std::abs(b[0]), std::abs(b[1])});
  if (std::abs(cross) > 1e-12 * scale * std::max(1.0, std::sqrt(len2))) return false;
  return x >= std::min(a[0], b[0]) && x <= std::max(a[0], b[0]) && y >= std::min(a[1], b[1]) &&
         y <= std::max(a[1], b[1]);
}

}  // namespace

bool point_in_polygon(std::span<const Vector> polygon, double x, double y) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vector& a = polygon[i];
    const Vector& b = polygon[j];
    if (on_segment(a, b, x, y)) return true;
    if ((a[1] > y) != (b[1] > y)) {
      const double xcross = b[0] + (y - b[1]) * (a[0] - b[0]) / (a[1] - b[1]);
      if (x < xcross) inside = !inside;
    }
  }
  return inside;
}

double probability_content(const Contour& contour, const SampleSet& sample) {
  if (sample.dimension() != 2) throw std::invalid_argument("probability_content: planar samples only");
  std::size_t inside = 0;
  const auto xs = sample.column(0);
  const auto ys = sample.column(1);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (point_in_polygon(contour.vertices, xs[i], ys[i])) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(sample.size());
}

Extents polygon_extents(std::span<const Vector> polygon) {
  if (polygon.empty()) return {};
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Vector& v : polygon) {
    xmin = std::min(xmin, v[0]);
    xmax = std::max(xmax, v[0]);
    ymin = std::min(ymin, v[1]);
    ymax = std::max(ymax, v[1]);
  }
  return {0.5 * (xmax - xmin), 0.5 * (ymax - ymin)};
}

double signed_area(std::span<const Vector> polygon) {
  double a = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& p = polygon[i];
    const Vector& q = polygon[(i + 1) % n];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

std::size_t reflex_vertex_count(std::span<const Vector> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0;
  const double orientation = signed_area(polygon) >= 0.0 ? 1.0 : -1.0;
  std::size_t reflex = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& prev = polygon[(i + n - 1) % n];
    const Vector& cur = polygon[i];
    const Vector& next = polygon[(i + 1) % n];
    const double cross = (cur[0] - prev[0]) * (next[1] - cur[1]) - (cur[1] - prev[1]) * (next[0] - cur[0]);
    if (orientation * cross < 0.0) ++reflex;
  }
  return reflex;
}

}  // namespace mvq
