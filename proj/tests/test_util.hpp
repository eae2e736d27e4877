#pragma once

// Generators and brute-force oracles shared by the test binaries. The
// oracles deliberately avoid the library's solvers and kernels.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "mvquant/core.hpp"
#include "mvquant/distributions.hpp"
#include "mvquant/rng.hpp"

namespace mvq::testkit {

inline std::vector<Vector> random_points(Rng& rng, std::size_t n, std::size_t d = 2, double scale = 1.0) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(d);
    for (double& x : c) x = scale * rng.standard_normal();
    out.emplace_back(std::move(c));
  }
  return out;
}

inline SampleSet random_sample(std::uint64_t seed, std::size_t n, std::size_t d = 2) {
  Rng rng(seed);
  const std::vector<Vector> pts = random_points(rng, n, d);
  return SampleSet::from_points(pts, seed);
}

inline Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

inline Vector apply(const Eigen::MatrixXd& m, const Vector& x, const Vector& shift) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.dimension()));
  for (std::size_t i = 0; i < x.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  const Eigen::VectorXd y = m * v;
  std::vector<double> out(x.dimension());
  for (std::size_t i = 0; i < x.dimension(); ++i) out[i] = y(static_cast<Eigen::Index>(i)) + shift[i];
  return Vector(std::move(out));
}

/// (1/N) sum_i (|z - X_i| - |X_i|) - tau u'z, summed point by point.
inline double objective_oracle(const std::vector<Vector>& xs, const Vector& z, double tau, const Vector& u) {
  double s = 0.0;
  for (const Vector& x : xs) {
    double dz = 0.0, dx = 0.0;
    for (std::size_t j = 0; j < z.dimension(); ++j) {
      dz += (z[j] - x[j]) * (z[j] - x[j]);
      dx += x[j] * x[j];
    }
    s += std::sqrt(dz) - std::sqrt(dx);
  }
  double uz = 0.0;
  for (std::size_t j = 0; j < z.dimension(); ++j) uz += u[j] * z[j];
  return s / static_cast<double>(xs.size()) - tau * uz;
}

/// (1/N) sum over X_i != z of (z - X_i) / |z - X_i|.
inline Vector cdf_oracle(const std::vector<Vector>& xs, const Vector& z) {
  std::vector<double> acc(z.dimension(), 0.0);
  for (const Vector& x : xs) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < z.dimension(); ++j) d2 += (z[j] - x[j]) * (z[j] - x[j]);
    if (d2 == 0.0) continue;
    const double d = std::sqrt(d2);
    for (std::size_t j = 0; j < z.dimension(); ++j) acc[j] += (z[j] - x[j]) / d;
  }
  for (double& a : acc) a /= static_cast<double>(xs.size());
  return Vector(std::move(acc));
}

/// Minimum of sum_i |s_i - t_p(i)|^2 over all permutations p.
inline double brute_force_assignment_cost(const std::vector<Vector>& sources, const std::vector<Vector>& targets) {
  std::vector<std::size_t> perm(sources.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const double dx = sources[i][0] - targets[perm[i]][0];
      const double dy = sources[i][1] - targets[perm[i]][1];
      c += dx * dx + dy * dy;
    }
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Minimum of the 1-d objective over a fine grid plus every data point; a
/// convex piecewise-linear function attains its minimum at a breakpoint.
inline double univariate_min_oracle(const std::vector<double>& xs, double beta) {
  auto f = [&](double z) {
    double s = 0.0;
    for (double x : xs) s += std::abs(z - x) - std::abs(x);
    return s / static_cast<double>(xs.size()) - beta * z;
  };
  double best = std::numeric_limits<double>::infinity();
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const int steps = 20000;
  for (int i = 0; i <= steps; ++i) best = std::min(best, f(*lo + (*hi - *lo) * i / steps));
  for (double x : xs) best = std::min(best, f(x));
  return best;
}

inline double cycle_sum_oracle(const std::vector<Vector>& values, const std::vector<Vector>& points) {
  double s = 0.0;
  const std::size_t m = points.size();
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t next = (k + 1) % m;
    for (std::size_t j = 0; j < points[k].dimension(); ++j) {
      s += (values[next][j] - values[k][j]) * points[next][j];
    }
  }
  return s;
}

/// Spearman rank correlation, average ranks for ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j);
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace mvq::testkit
