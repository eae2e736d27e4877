#pragma once

// Quantile contours as closed planar polygons, and the polygon measurements
// the experiments rely on (point-in-polygon content, extents, reflex vertices).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mvquant/core.hpp"

namespace mvq {

class SampleSet;

enum class ContourMethod { geometric_relabeled, center_outward };

std::string_view method_name(ContourMethod m);  // "geometric" | "center-outward"

struct Contour {
  QuantileOrder tau{0.0};
  ContourMethod method = ContourMethod::geometric_relabeled;
  std::vector<Vector> vertices;  // ordered by direction index
  bool closed = true;
  /// Direction indices whose vertex did not meet the solver tolerance.
  std::vector<std::size_t> failed_directions;
  /// Set when tau lies outside the ring range and the nearest ring was used.
  bool extrapolated = false;

  bool partial() const { return !failed_directions.empty(); }
};

/// Even-odd rule; points on an edge or vertex count as inside.
bool point_in_polygon(std::span<const Vector> polygon, double x, double y);

/// Fraction of the (planar) sample inside the closed contour polygon.
double probability_content(const Contour& contour, const SampleSet& sample);

struct Extents {
  double half_width = 0.0;   // (max x - min x) / 2
  double half_height = 0.0;  // (max y - min y) / 2
};
Extents polygon_extents(std::span<const Vector> polygon);

/// Number of vertices where the polygon turns against its overall
/// orientation (collinear turns are not counted).
std::size_t reflex_vertex_count(std::span<const Vector> polygon);
/// Signed area (shoelace); positive for counter-clockwise polygons.
double signed_area(std::span<const Vector> polygon);

}  // namespace mvq
