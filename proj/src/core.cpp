#include "mvquant/core.hpp"

#include <string>

namespace mvq {

namespace {

void require_same_dimension(const Vector& a, const Vector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dimension()) +
                                " vs " + std::to_string(b.dimension()));
  }
}

}  // namespace

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("Vector: dimension must be >= 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("Vector: non-finite coordinate");
  }
}

Vector::Vector(std::initializer_list<double> coords) : Vector(std::vector<double>(coords)) {}

Vector Vector::zeros(std::size_t d) { return Vector(std::vector<double>(d, 0.0)); }

double Vector::norm() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return std::sqrt(s);
}

double Vector::dot(const Vector& other) const {
  require_same_dimension(*this, other);
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

double distance(const Vector& a, const Vector& b) { return (a - b).norm(); }

UnitDirection UnitDirection::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitDirection: cannot normalize a zero vector");
  }
  return UnitDirection(v * (1.0 / n), Trusted{});
}

UnitDirection::UnitDirection(Vector v, double tol) : v_(std::move(v)) {
  if (std::abs(v_.norm() - 1.0) > tol) {
    throw std::invalid_argument("UnitDirection: norm differs from 1");
  }
}

QuantileOrder::QuantileOrder(double tau) : tau_(tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw std::invalid_argument("QuantileOrder: tau must lie in [0, 1), got " +
                                std::to_string(tau));
  }
}

DirectionGrid make_direction_grid(std::size_t K, std::size_t d) {
  if (d != 2) throw std::invalid_argument("make_direction_grid: only d = 2 is supported");
  if (K < 3) throw std::invalid_argument("make_direction_grid: K must be >= 3");
  DirectionGrid grid;
  grid.directions_.reserve(K);
  grid.angles_.reserve(K);
  for (std::size_t i = 0; i < K; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(K);
    grid.angles_.push_back(theta);
    grid.directions_.push_back(UnitDirection::normalized(Vector{std::cos(theta), std::sin(theta)}));
  }
  return grid;
}

double cycle_sum(std::span<const Vector> values, std::span<const Vector> points) {
  const std::size_t m = points.size();
  if (values.size() != m) throw std::invalid_argument("cycle_sum: values/points size mismatch");
  if (m < 2) throw std::invalid_argument("cycle_sum: need at least 2 points");
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t next = (k + 1) % m;
    s += (values[next] - values[k]).dot(points[next]);
  }
  return s;
}

}  // namespace mvq
