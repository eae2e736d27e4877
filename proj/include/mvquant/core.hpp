#pragma once

// Shared numeric types for the multivariate quantile library: points of R^d,
// unit directions, quantile orders and planar direction grids.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace mvq {

/// Numerical tolerances used across the library.
struct Tolerances {
  /// Target for ||F(z) - tau u|| in the geometric quantile solver.
  double gradient = 1e-8;
  /// Allowed deviation from 1 of a unit direction's norm.
  double unit_norm = 1e-12;
  /// Distance below which an iterate is considered to sit on a data point.
  double collision = 1e-12;
};

/// A point of R^d with finite coordinates, d >= 1.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords);
  Vector(std::initializer_list<double> coords);
  /// Zero vector of dimension d.
  static Vector zeros(std::size_t d);

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  double norm() const;
  double dot(const Vector& other) const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> coords_;
};

/// Euclidean distance between two points of equal dimension.
double distance(const Vector& a, const Vector& b);

/// A point of the unit sphere S^{d-1}.
class UnitDirection {
 public:
  /// Normalizes v; throws on a zero or non-finite vector.
  static UnitDirection normalized(const Vector& v);
  /// Accepts v only if | ||v|| - 1 | <= tol.
  explicit UnitDirection(Vector v, double tol = Tolerances{}.unit_norm);

  const Vector& vector() const { return v_; }
  std::size_t dimension() const { return v_.dimension(); }
  double operator[](std::size_t i) const { return v_[i]; }

 private:
  struct Trusted {};
  UnitDirection(Vector v, Trusted) : v_(std::move(v)) {}
  Vector v_;
};

/// A quantile order tau in [0, 1).
class QuantileOrder {
 public:
  explicit QuantileOrder(double tau);
  double value() const { return tau_; }
  friend auto operator<=>(const QuantileOrder&, const QuantileOrder&) = default;

 private:
  double tau_;
};

/// K planar directions (cos theta_i, sin theta_i), theta_i = 2 pi i / K for
/// i = 0..K-1. The set equals {2 pi k / K : k = 1..K}; storing it from angle 0
/// keeps the angles strictly increasing in [0, 2 pi).
class DirectionGrid {
 public:
  std::size_t size() const { return directions_.size(); }
  const UnitDirection& operator[](std::size_t i) const { return directions_[i]; }
  std::span<const UnitDirection> directions() const { return directions_; }
  /// Angle of the i-th stored direction.
  double angle(std::size_t i) const { return angles_[i]; }

 private:
  friend DirectionGrid make_direction_grid(std::size_t K, std::size_t d);
  std::vector<UnitDirection> directions_;
  std::vector<double> angles_;
};

/// Regular grid of K >= 3 directions on S^1. Only d = 2 is supported.
DirectionGrid make_direction_grid(std::size_t K, std::size_t d = 2);

/// Sum over the closed cycle x_1..x_m, x_{m+1} = x_1 of
/// (G(x_{k+1}) - G(x_k))' x_{k+1}. Nonnegative for every cycle iff G is
/// cyclically monotone. values[k] must hold G(points[k]).
double cycle_sum(std::span<const Vector> values, std::span<const Vector> points);

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace mvq
