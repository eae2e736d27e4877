#include "mvquant/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mvquant/kernels.hpp"

namespace mvq {

namespace {

// Sums over the sample at one evaluation point, in any dimension.
struct Moments {
  Eigen::VectorXd sum_e;   // sum (z - X_i) / d_i, non-colliding
  Eigen::VectorXd sum_wx;  // sum X_i / d_i
  double sum_w = 0.0;
  Eigen::MatrixXd hess;    // sum (I - e_i e_i') / d_i
  double sum_dev = 0.0;    // sum (d_i - ||X_i||)
  std::size_t collisions = 0;
};

Moments compute_moments(const Eigen::VectorXd& z, const SampleSet& s, double collision) {
  const std::size_t d = s.dimension();
  const auto di = static_cast<Eigen::Index>(d);
  Moments m;
  if (d == 2) {
    const kernels::PlanarSample ps{s.column(0), s.column(1), s.norms()};
    const kernels::PlanarMoments pm = kernels::planar_moments(z(0), z(1), ps, collision);
    m.sum_e = Eigen::Vector2d(pm.sum_ex, pm.sum_ey);
    m.sum_wx = Eigen::Vector2d(pm.sum_wx, pm.sum_wy);
    m.sum_w = pm.sum_w;
    m.hess.resize(2, 2);
    m.hess << pm.h_xx, pm.h_xy, pm.h_xy, pm.h_yy;
    m.sum_dev = pm.sum_dev;
    m.collisions = pm.collisions;
    return m;
  }
  m.sum_e = Eigen::VectorXd::Zero(di);
  m.sum_wx = Eigen::VectorXd::Zero(di);
  m.hess = Eigen::MatrixXd::Zero(di, di);
  Eigen::VectorXd diff(di), x(di);
  const auto norms = s.norms();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(j)) = s.coord(i, j);
    diff = z - x;
    const double dist = diff.norm();
    m.sum_dev += dist - norms[i];
    if (dist < collision) {
      ++m.collisions;
      continue;
    }
    const double w = 1.0 / dist;
    const Eigen::VectorXd e = diff * w;
    m.sum_e += e;
    m.sum_wx += x * w;
    m.sum_w += w;
    m.hess += (Eigen::MatrixXd::Identity(di, di) - e * e.transpose()) * w;
  }
  return m;
}

Eigen::VectorXd to_eigen(const Vector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.dimension()));
  for (std::size_t i = 0; i < v.dimension(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Vector to_vector(const Eigen::VectorXd& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

void require_dimension(const SampleSet& s, std::size_t d) {
  if (s.dimension() != d) {
    throw std::invalid_argument("dimension mismatch: sample is " + std::to_string(s.dimension()) +
                                "-d, argument is " + std::to_string(d) + "-d");
  }
}

Vector coordinatewise_median(const SampleSet& s) {
  std::vector<double> med(s.dimension());
  std::vector<double> buf;
  for (std::size_t j = 0; j < s.dimension(); ++j) {
    const auto col = s.column(j);
    buf.assign(col.begin(), col.end());
    const std::size_t mid = buf.size() / 2;
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid), buf.end());
    double m = buf[mid];
    if (buf.size() % 2 == 0) {
      const double lower = *std::max_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid));
      m = 0.5 * (m + lower);
    }
    med[j] = m;
  }
  return Vector(std::move(med));
}

void require_not_collinear(const SampleSet& s) {
  const std::size_t d = s.dimension();
  const auto di = static_cast<Eigen::Index>(d);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(di);
  for (std::size_t j = 0; j < d; ++j) {
    for (double v : s.column(j)) mean(static_cast<Eigen::Index>(j)) += v;
  }
  mean /= static_cast<double>(s.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(di, di);
  Eigen::VectorXd x(di);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(j)) = s.coord(i, j) - mean(static_cast<Eigen::Index>(j));
    cov += x * x.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  const double largest = ev(di - 1);
  if (!(largest > 0.0) || ev(di - 2) <= 1e-12 * largest) {
    throw DegenerateSampleError("geometric_quantile: sample lies on a single line");
  }
}

// Exact minimizer of (1/N) sum |z - X_i| - beta z: the order statistic
// x_(k) with the smallest k such that (2k - N) / N >= beta.
GeometricQuantileResult solve_univariate(const SampleSet& s, QuantileOrder tau, const UnitDirection& u) {
  const double beta = tau.value() * u[0];
  std::vector<double> x(s.column(0).begin(), s.column(0).end());
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  std::size_t k = 1;
  while (k < x.size() && 2.0 * static_cast<double>(k) - n < beta * n) ++k;
  const double p = x[k - 1];
  const auto below = static_cast<double>(std::lower_bound(x.begin(), x.end(), p) - x.begin());
  const auto above = static_cast<double>(x.end() - std::upper_bound(x.begin(), x.end(), p));
  const double at = n - below - above;
  const double lo = (below - above - at) / n - beta;
  const double hi = (below - above + at) / n - beta;
  const double gap = lo > 0.0 ? lo : (hi < 0.0 ? -hi : 0.0);
  return GeometricQuantileResult{Vector{p}, tau, u, gap, 1, true};
}

}  // namespace

double check_function(double z, double alpha) { return std::abs(z) + (2.0 * alpha - 1.0) * z; }

double geometric_objective(const Vector& z, const SampleSet& sample, QuantileOrder tau,
                           const UnitDirection& u) {
  require_dimension(sample, z.dimension());
  require_dimension(sample, u.dimension());
  const Moments m = compute_moments(to_eigen(z), sample, 0.0);
  return m.sum_dev / static_cast<double>(sample.size()) - tau.value() * u.vector().dot(z);
}

GeometricCdfValue geometric_cdf(const Vector& z, const SampleSet& sample, double collision) {
  require_dimension(sample, z.dimension());
  const Moments m = compute_moments(to_eigen(z), sample, collision);
  return GeometricCdfValue{to_vector(m.sum_e / static_cast<double>(sample.size())), z};
}

GeometricQuantileResult geometric_quantile(const SampleSet& sample, QuantileOrder tau,
                                           const UnitDirection& u, const GeometricSolverOptions& opts) {
  require_dimension(sample, u.dimension());
  if (sample.dimension() == 1) return solve_univariate(sample, tau, u);
  require_not_collinear(sample);

  const double n = static_cast<double>(sample.size());
  const Eigen::VectorXd target = to_eigen(u.vector()) * tau.value();  // tau u

  struct State {
    Eigen::VectorXd z;
    Moments m;
    Eigen::VectorXd g;  // F(z) - tau u over non-colliding points
    double f = 0.0;
    double gap = 0.0;   // distance from 0 to the subdifferential
  };
  auto evaluate = [&](Eigen::VectorXd z) {
    State s;
    s.m = compute_moments(z, sample, opts.collision);
    s.g = s.m.sum_e / n - target;
    s.f = s.m.sum_dev / n - target.dot(z);
    const double gn = s.g.norm();
    s.gap = s.m.collisions ? std::max(0.0, gn - static_cast<double>(s.m.collisions) / n) : gn;
    s.z = std::move(z);
    return s;
  };

  State cur = evaluate(to_eigen(coordinatewise_median(sample)));
  State best = cur;
  std::size_t it = 0;
  for (; it < opts.max_iter && cur.gap > opts.tol; ++it) {
    // Weiszfeld map over the non-colliding points.
    const Eigen::VectorXd weiszfeld = (cur.m.sum_wx + n * target) / cur.m.sum_w;

    if (cur.m.collisions > 0) {
      // Vardi-Zhang: the colliding points pull with total weight c.
      const double c = static_cast<double>(cur.m.collisions);
      const double r = n * cur.g.norm();
      cur = evaluate((1.0 - c / r) * weiszfeld + (c / r) * cur.z);
    } else {
      bool accepted = false;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(cur.m.hess / n);
      if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        const Eigen::VectorXd step = ldlt.solve(-cur.g);
        const double slope = cur.g.dot(step);
        if (step.allFinite() && slope < 0.0) {
          double t = 1.0;
          for (int k = 0; k < 60 && !accepted; ++k, t *= 0.5) {
            State trial = evaluate(cur.z + t * step);
            const bool decrease = trial.f <= cur.f + 1e-4 * t * slope;
            const bool flat = trial.f <= cur.f + 1e-13 * (1.0 + std::abs(cur.f)) && trial.gap < cur.gap;
            if (decrease || flat) {
              cur = std::move(trial);
              accepted = true;
            }
          }
        }
      }
      if (!accepted) cur = evaluate(weiszfeld);
    }
    if (cur.gap < best.gap) best = cur;
  }

  return GeometricQuantileResult{to_vector(best.z), tau, u, best.gap, it, best.gap <= opts.tol};
}

RelabelTable build_relabel_table(const SampleSet& sample) {
  RelabelTable table;
  table.sorted_norms.resize(sample.size());
  const double collision = GeometricSolverOptions{}.collision;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Moments m = compute_moments(to_eigen(sample.point(i)), sample, collision);
    table.sorted_norms[i] = m.sum_e.norm() / static_cast<double>(sample.size());
  }
  std::sort(table.sorted_norms.begin(), table.sorted_norms.end());
  return table;
}

QuantileOrder relabel_order(const RelabelTable& table, QuantileOrder tau) {
  if (table.sorted_norms.empty()) throw std::invalid_argument("relabel_order: empty table");
  if (tau.value() == 0.0) return QuantileOrder(0.0);
  const double n = static_cast<double>(table.sorted_norms.size());
  auto k = static_cast<std::size_t>(std::ceil(tau.value() * n));
  k = std::clamp<std::size_t>(k, 1, table.sorted_norms.size());
  return QuantileOrder(table.sorted_norms[k - 1]);
}

Contour relabeled_geometric_contour(const SampleSet& sample, const RelabelTable& table,
                                   QuantileOrder tau, std::span<const UnitDirection> dirs,
                                   const GeometricSolverOptions& opts) {
  const QuantileOrder relabeled = relabel_order(table, tau);
  Contour c;
  c.tau = tau;
  c.method = ContourMethod::geometric_relabeled;
  c.closed = dirs.size() >= 3;
  c.vertices.reserve(dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    GeometricQuantileResult q = geometric_quantile(sample, relabeled, dirs[k], opts);
    if (!q.converged) c.failed_directions.push_back(k);
    c.vertices.push_back(std::move(q.point));
  }
  return c;
}

Contour relabeled_geometric_contour(const SampleSet& sample, QuantileOrder tau,
                                   const DirectionGrid& dirs, const GeometricSolverOptions& opts) {
  return relabeled_geometric_contour(sample, build_relabel_table(sample), tau, dirs.directions(), opts);
}

}  // namespace mvq
