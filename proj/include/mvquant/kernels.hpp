#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant; the variant is chosen once
// at startup from the CPU features (override with MVQUANT_ISA=scalar|avx2 or
// set_isa()).
//
// The squared-distance kernels (assignment scan, column minima, distances)
// round identically in both variants, so the assignment solver returns the
// same permutation whichever variant runs. planar_moments accumulates in a
// different order per variant and agrees to rounding only.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace mvq::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Throws std::invalid_argument if the CPU or the build lacks `isa`.
void set_isa(Isa isa);

/// Sums over a planar sample for the geometric objective at z.
/// Points with ||z - X_i|| < collision_eps are counted in `collisions` and
/// contribute only to sum_dev.
struct PlanarMoments {
  double sum_ex = 0.0, sum_ey = 0.0;  // sum (z - X_i) / d_i
  double sum_w = 0.0;                  // sum 1 / d_i
  double sum_wx = 0.0, sum_wy = 0.0;   // sum X_i / d_i
  double h_xx = 0.0, h_xy = 0.0, h_yy = 0.0;  // sum (I - e_i e_i') / d_i
  double sum_dev = 0.0;                // sum (d_i - ||X_i||), all points
  std::size_t collisions = 0;
};

struct PlanarSample {
  std::span<const double> xs, ys, norms;
};

/// Result of an argmin scan; ties resolve to the lowest index.
struct ArgMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);
};

/// One Dijkstra step of the shortest-augmenting-path assignment solver over
/// the columns (targets) of a planar squared-distance cost matrix. For every
/// column j with scanned[j] == 0:
///   r = (base + |p - g_j|^2) - v[j];
///   if (r < dist[j]) { dist[j] = r; path[j] = row; }
/// and returns argmin of dist[j] over the unscanned columns.
struct ScanArgs {
  double px = 0.0, py = 0.0;
  double base = 0.0;
  std::span<const double> gx, gy, v;
  std::span<double> dist;
  std::span<std::int32_t> path;
  std::span<const std::uint8_t> scanned;
  std::int32_t row = 0;
};

PlanarMoments planar_moments(double zx, double zy, const PlanarSample& s, double collision_eps);
ArgMin assignment_scan(const ScanArgs& a);
/// colmin[j] = min(colmin[j], |p - g_j|^2)
void column_min_sq_dist(double px, double py, std::span<const double> gx,
                        std::span<const double> gy, std::span<double> colmin);
/// argmin_j |p - g_j|^2 - v[j]
ArgMin row_min_reduced(double px, double py, std::span<const double> gx,
                       std::span<const double> gy, std::span<const double> v);
/// out[j] = |z - X_j|^2
void planar_sq_distances(double zx, double zy, std::span<const double> xs,
                         std::span<const double> ys, std::span<double> out);

namespace scalar {
PlanarMoments planar_moments(double zx, double zy, const PlanarSample& s, double collision_eps);
ArgMin assignment_scan(const ScanArgs& a);
void column_min_sq_dist(double px, double py, std::span<const double> gx,
                        std::span<const double> gy, std::span<double> colmin);
ArgMin row_min_reduced(double px, double py, std::span<const double> gx,
                       std::span<const double> gy, std::span<const double> v);
void planar_sq_distances(double zx, double zy, std::span<const double> xs,
                         std::span<const double> ys, std::span<double> out);
}  // namespace scalar

#if defined(MVQUANT_HAVE_AVX2)
namespace avx2 {
PlanarMoments planar_moments(double zx, double zy, const PlanarSample& s, double collision_eps);
ArgMin assignment_scan(const ScanArgs& a);
void column_min_sq_dist(double px, double py, std::span<const double> gx,
                        std::span<const double> gy, std::span<double> colmin);
ArgMin row_min_reduced(double px, double py, std::span<const double> gx,
                       std::span<const double> gy, std::span<const double> v);
void planar_sq_distances(double zx, double zy, std::span<const double> xs,
                         std::span<const double> ys, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace mvq::kernels
