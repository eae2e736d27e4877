#include "mvquant/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "mvquant/geometric.hpp"
#include "mvquant/rng.hpp"
#include "mvquant/svg.hpp"
#include "mvquant/transport.hpp"

namespace mvq {

namespace {

const std::vector<std::string>& figure1_distributions() {
  static const std::vector<std::string> names{"gauss", "exp", "skewt", "banana"};
  return names;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool is_standard_gaussian(const DistributionSpec& spec) {
  const auto* g = std::get_if<GaussianSpec>(&spec.kind());
  if (!g || g->mean.dimension() != 2) return false;
  return g->mean == Vector{0.0, 0.0} && g->covariance.isIdentity(0.0);
}

// Samples `spec`, couples it with the grid and extracts both contour
// families; appends to `out` in (method, tau) order.
void run_one(const ExperimentConfig& config, const std::string& name, const DistributionSpec& spec,
             std::uint64_t seed, bool geometric, bool transport, FigureResult& out) {
  SampleSet s = sample(spec, config.n, seed);
  const DirectionGrid dirs = make_direction_grid(config.k_dirs);
  GeometricSolverOptions opts;
  opts.tol = config.tol;
  opts.max_iter = config.max_iter;

  std::vector<Contour> contours;
  if (geometric) {
    const RelabelTable table = build_relabel_table(s);
    for (double t : config.taus) {
      Contour c = relabeled_geometric_contour(s, table, QuantileOrder(t), dirs.directions(), opts);
      for (std::size_t k : c.failed_directions) {
        out.failures.push_back("distribution=" + name + " tau=" + format_double(t) + " k=" + std::to_string(k + 1));
      }
      contours.push_back(std::move(c));
    }
  }
  if (transport) {
    const SphericalGrid grid = make_spherical_grid(config.n_rings, config.n_sectors);
    const Assignment a = optimal_assignment(s, grid);
    for (double t : config.taus) contours.push_back(center_outward_contour(a, grid, s, QuantileOrder(t), dirs));
  }
  for (Contour& c : contours) {
    ContourMeasure m;
    m.distribution = name;
    m.method = c.method;
    m.tau = c.tau.value();
    m.content = probability_content(c, s);
    m.extents = polygon_extents(c.vertices);
    m.reflex_vertices = reflex_vertex_count(c.vertices);
    out.measures.push_back(std::move(m));
    out.contours.push_back(NamedContour{name, std::move(c)});
  }
  out.distributions.push_back(name);
  out.samples.push_back(std::move(s));
}

void write_figure_files(const ExperimentConfig& config, const std::string& prefix, const FigureResult& r) {
  if (config.out_dir.empty()) return;
  write_text_file(config.out_dir / (prefix + "_contours.csv"), to_csv_text(contour_table(r.contours)));
  write_text_file(config.out_dir / (prefix + "_measures.csv"), to_csv_text(measure_table(r.measures)));
  for (std::size_t i = 0; i < r.distributions.size(); ++i) {
    std::vector<Contour> mine;
    for (const NamedContour& nc : r.contours) {
      if (nc.distribution == r.distributions[i]) mine.push_back(nc.contour);
    }
    SvgStyle style;
    style.title = prefix + " " + r.distributions[i];
    emit_svg(mine, r.samples[i], config.out_dir / (prefix + "_" + r.distributions[i] + ".svg"), style);
  }
  write_text_file(config.out_dir / (prefix + "_manifest.txt"), manifest_text(config));
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::figure1: return "figure1";
    case Experiment::figure2: return "figure2";
    case Experiment::extreme_check: return "extreme-check";
    case Experiment::gc_check: return "gc-check";
    case Experiment::contour: return "contour";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::figure1, Experiment::figure2, Experiment::extreme_check, Experiment::gc_check,
                       Experiment::contour}) {
    if (experiment_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(name));
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::figure1:
    case Experiment::contour:
      break;
    case Experiment::figure2:
      c.distribution_name = "gauss-aniso";
      c.n = 1000;
      c.n_rings = 20;
      c.n_sectors = 50;
      c.k_dirs = 50;
      c.taus = {0.90, 0.95, 0.99};
      break;
    case Experiment::extreme_check:
      c.distribution_name = "gauss-aniso";
      c.n = 100000;
      c.taus = {0.9, 0.99, 0.999};
      break;
    case Experiment::gc_check:
      c.distribution_name = "gauss-std";
      break;
  }
  return c;
}

DistributionSpec ExperimentConfig::resolved_distribution() const {
  return distribution ? *distribution : DistributionSpec::preset(distribution_name);
}

void ExperimentConfig::validate() const {
  if (taus.empty()) throw std::invalid_argument("taus must not be empty");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0 && taus[i] < 1.0)) throw std::invalid_argument("every tau must lie in (0,1)");
    if (i && !(taus[i] > taus[i - 1])) throw std::invalid_argument("taus must be strictly increasing");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max-iter must be at least 1");
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  const bool planar_contours = experiment == Experiment::figure1 || experiment == Experiment::figure2 ||
                               experiment == Experiment::contour;
  if (planar_contours && k_dirs < 3) throw std::invalid_argument("k-dirs must be at least 3");
  const bool transport = experiment == Experiment::figure1 || experiment == Experiment::figure2 ||
                         (experiment == Experiment::contour && method == ContourMethod::center_outward);
  if (transport && n != n_rings * n_sectors) {
    throw std::invalid_argument("n = " + std::to_string(n) + " must equal nr * ns = " +
                                std::to_string(n_rings) + " * " + std::to_string(n_sectors));
  }
  if (experiment != Experiment::figure1) {
    const DistributionSpec spec = resolved_distribution();
    if (planar_contours && spec.dimension() != 2) throw std::invalid_argument("contours need a planar distribution");
    if (experiment == Experiment::extreme_check && !std::holds_alternative<GaussianSpec>(spec.kind())) {
      throw std::invalid_argument("extreme-check needs a Gaussian distribution");
    }
    if (experiment == Experiment::gc_check && !is_standard_gaussian(spec)) {
      throw std::invalid_argument("gc-check compares against the standard bivariate Gaussian (gauss-std)");
    }
  }
  if (experiment == Experiment::gc_check) {
    if (n_ladder.empty()) throw std::invalid_argument("gc-check needs at least one sample size");
    if (neighbors < 1 || test_points < 1 || reference_n < 3) {
      throw std::invalid_argument("gc-check needs neighbors, test points and a reference sample");
    }
  }
}

std::pair<std::size_t, std::size_t> grid_shape_for(std::size_t n) {
  if (n == 0) throw std::invalid_argument("grid_shape_for: n must be positive");
  std::size_t rings = 1;
  for (std::size_t r = 1; r * r <= n; ++r) {
    if (n % r == 0) rings = r;
  }
  return {rings, n / rings};
}

FigureResult run_figure1(const ExperimentConfig& config) {
  config.validate();
  FigureResult r;
  const auto& names = figure1_distributions();
  for (std::size_t i = 0; i < names.size(); ++i) {
    run_one(config, names[i], DistributionSpec::preset(names[i]), derive_seed(config.seed, i), true, true, r);
  }
  write_figure_files(config, "figure1", r);
  return r;
}

FigureResult run_figure2(const ExperimentConfig& config) {
  config.validate();
  FigureResult r;
  run_one(config, config.distribution_name, config.resolved_distribution(), derive_seed(config.seed, 0), true, true, r);
  write_figure_files(config, "figure2", r);
  return r;
}

FigureResult run_contour(const ExperimentConfig& config) {
  config.validate();
  FigureResult r;
  const bool geometric = config.method == ContourMethod::geometric_relabeled;
  run_one(config, config.distribution_name, config.resolved_distribution(), derive_seed(config.seed, 0), geometric,
          !geometric, r);
  write_figure_files(config, "contour", r);
  return r;
}

std::vector<ExtremeCheckResult> run_extreme_check(const ExperimentConfig& config) {
  config.validate();
  const DistributionSpec spec = config.resolved_distribution();
  const Eigen::MatrixXd& sigma = std::get<GaussianSpec>(spec.kind()).covariance;
  const SampleSet s = sample(spec, config.n, derive_seed(config.seed, 0));
  GeometricSolverOptions opts;
  opts.tol = config.tol;
  opts.max_iter = config.max_iter;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  std::vector<ExtremeCheckResult> out;
  for (Eigen::Index j = 0; j < eig.eigenvectors().cols(); ++j) {
    Eigen::VectorXd e = eig.eigenvectors().col(j);
    Eigen::Index lead = 0;
    e.cwiseAbs().maxCoeff(&lead);
    if (e(lead) < 0.0) e = -e;
    const UnitDirection u = UnitDirection::normalized(Vector(std::vector<double>(e.data(), e.data() + e.size())));
    ExtremeCheckResult r{u, config.taus, {}, {}, {}, 0.5 * (sigma.trace() - e.dot(sigma * e))};
    for (double t : config.taus) {
      const GeometricQuantileResult q = geometric_quantile(s, QuantileOrder(t), u, opts);
      const double norm = q.point.norm();
      r.scaled_norms.push_back(norm * norm * (1.0 - t));
      r.gradient_norms.push_back(q.gradient_norm);
      r.converged.push_back(q.converged);
    }
    out.push_back(std::move(r));
  }
  if (!config.out_dir.empty()) {
    write_text_file(config.out_dir / "extreme_check.csv", to_csv_text(extreme_table(out)));
    write_text_file(config.out_dir / "extreme_check_manifest.txt", manifest_text(config));
  }
  return out;
}

std::vector<GcRow> run_gc_check(const ExperimentConfig& config) {
  config.validate();
  const DistributionSpec spec = config.resolved_distribution();
  const SampleSet reference = sample(spec, config.reference_n, derive_seed(config.seed, 1000));
  const SampleSet tests = sample(spec, config.test_points, derive_seed(config.seed, 2000));

  std::vector<Vector> ref_values;
  std::vector<Vector> analytic;
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const Vector z = tests.point(t);
    ref_values.push_back(geometric_cdf(z, reference).value);
    analytic.push_back(analytic_center_outward_cdf(z));
  }

  std::vector<GcRow> rows;
  for (std::size_t i = 0; i < config.n_ladder.size(); ++i) {
    const std::size_t n = config.n_ladder[i];
    const auto [rings, sectors] = grid_shape_for(n);
    const SampleSet s = sample(spec, n, derive_seed(config.seed, i));
    const SphericalGrid grid = make_spherical_grid(rings, sectors);
    const Assignment a = optimal_assignment(s, grid);
    GcRow row{n, rings, sectors, 0.0, 0.0};
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const Vector z = tests.point(t);
      row.geometric_error = std::max(row.geometric_error, distance(geometric_cdf(z, s).value, ref_values[t]));
      const Vector f = interpolated_center_outward_cdf(a, grid, s, z, config.neighbors);
      row.transport_error = std::max(row.transport_error, distance(f, analytic[t]));
    }
    rows.push_back(row);
  }
  if (!config.out_dir.empty()) {
    write_text_file(config.out_dir / "gc_check.csv", to_csv_text(gc_table(rows)));
    write_text_file(config.out_dir / "gc_check_manifest.txt", manifest_text(config));
  }
  return rows;
}

CsvTable contour_table(const std::vector<NamedContour>& contours) {
  CsvTable t;
  t.header = {"distribution", "method", "tau", "k", "x", "y"};
  for (const NamedContour& nc : contours) {
    const std::string method(method_name(nc.contour.method));
    const std::string tau = format_double(nc.contour.tau.value());
    for (std::size_t k = 0; k < nc.contour.vertices.size(); ++k) {
      const Vector& v = nc.contour.vertices[k];
      if (v.dimension() != 2) throw std::invalid_argument("contour_table: planar vertices only");
      t.rows.push_back({nc.distribution, method, tau, std::to_string(k + 1), format_double(v[0]), format_double(v[1])});
    }
  }
  return t;
}

std::vector<NamedContour> parse_contour_table(std::string_view csv_text) {
  const std::vector<CsvRow> rows = parse_csv(csv_text);
  if (rows.empty() || rows.front() != CsvRow{"distribution", "method", "tau", "k", "x", "y"}) {
    throw std::invalid_argument("parse_contour_table: unexpected header");
  }
  std::vector<NamedContour> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.size() != 6) throw std::invalid_argument("parse_contour_table: row " + std::to_string(r) + " has wrong width");
    ContourMethod method;
    if (row[1] == method_name(ContourMethod::geometric_relabeled)) {
      method = ContourMethod::geometric_relabeled;
    } else if (row[1] == method_name(ContourMethod::center_outward)) {
      method = ContourMethod::center_outward;
    } else {
      throw std::invalid_argument("parse_contour_table: unknown method " + row[1]);
    }
    const double tau = parse_double(row[2]);
    const std::size_t k = static_cast<std::size_t>(parse_double(row[3]));
    const bool continues = !out.empty() && out.back().distribution == row[0] && out.back().contour.method == method &&
                           out.back().contour.tau.value() == tau && k == out.back().contour.vertices.size() + 1;
    if (!continues) {
      if (k != 1) throw std::invalid_argument("parse_contour_table: contour must start at k=1");
      NamedContour nc{row[0], Contour{}};
      nc.contour.tau = QuantileOrder(tau);
      nc.contour.method = method;
      out.push_back(std::move(nc));
    }
    out.back().contour.vertices.push_back(Vector{parse_double(row[4]), parse_double(row[5])});
  }
  for (NamedContour& nc : out) nc.contour.closed = nc.contour.vertices.size() >= 3;
  return out;
}

CsvTable measure_table(const std::vector<ContourMeasure>& measures) {
  CsvTable t;
  t.header = {"distribution", "method", "tau", "content", "half_width", "half_height", "reflex_vertices"};
  for (const ContourMeasure& m : measures) {
    t.rows.push_back({m.distribution, std::string(method_name(m.method)), format_double(m.tau), format_double(m.content),
                      format_double(m.extents.half_width), format_double(m.extents.half_height),
                      std::to_string(m.reflex_vertices)});
  }
  return t;
}

CsvTable extreme_table(const std::vector<ExtremeCheckResult>& results) {
  CsvTable t;
  t.header = {"u_x", "u_y", "tau", "scaled_norm", "predicted_limit", "relative_gap", "gradient_norm", "converged"};
  for (const ExtremeCheckResult& r : results) {
    for (std::size_t i = 0; i < r.taus.size(); ++i) {
      CsvRow row;
      row.push_back(format_double(r.direction[0]));
      row.push_back(r.direction.dimension() > 1 ? format_double(r.direction[1]) : "");
      row.push_back(format_double(r.taus[i]));
      row.push_back(format_double(r.scaled_norms[i]));
      row.push_back(format_double(r.predicted_limit));
      row.push_back(format_double(r.relative_gap(i)));
      row.push_back(format_double(r.gradient_norms[i]));
      row.push_back(r.converged[i] ? "1" : "0");
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

CsvTable gc_table(const std::vector<GcRow>& rows) {
  CsvTable t;
  t.header = {"n", "n_rings", "n_sectors", "geometric_error", "transport_error"};
  for (const GcRow& r : rows) {
    t.rows.push_back({std::to_string(r.n), std::to_string(r.n_rings), std::to_string(r.n_sectors),
                      format_double(r.geometric_error), format_double(r.transport_error)});
  }
  return t;
}

CsvTable sample_table(const SampleSet& s) {
  CsvTable t;
  for (std::size_t j = 0; j < s.dimension(); ++j) t.header.push_back("x" + std::to_string(j + 1));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CsvRow row;
    for (std::size_t j = 0; j < s.dimension(); ++j) row.push_back(format_double(s.coord(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string manifest_text(const ExperimentConfig& config) {
  std::string out;
  out += "experiment=" + std::string(experiment_name(config.experiment)) + "\n";
  out += "seed=" + std::to_string(config.seed) + "\n";
  out += "n=" + std::to_string(config.n) + "\n";
  out += "nr=" + std::to_string(config.n_rings) + "\n";
  out += "ns=" + std::to_string(config.n_sectors) + "\n";
  out += "k-dirs=" + std::to_string(config.k_dirs) + "\n";
  out += "taus=" + join_doubles(config.taus) + "\n";
  out += "tol=" + format_double(config.tol) + "\n";
  out += "max-iter=" + std::to_string(config.max_iter) + "\n";
  if (config.experiment == Experiment::contour) {
    out += std::string("method=") + (config.method == ContourMethod::geometric_relabeled ? "geom" : "ot") + "\n";
  }
  if (config.experiment == Experiment::gc_check) {
    std::vector<double> ladder(config.n_ladder.begin(), config.n_ladder.end());
    out += "n-ladder=" + join_doubles(ladder) + "\n";
    out += "neighbors=" + std::to_string(config.neighbors) + "\n";
    out += "reference-n=" + std::to_string(config.reference_n) + "\n";
    out += "test-points=" + std::to_string(config.test_points) + "\n";
  }
  if (config.experiment == Experiment::figure1) {
    out += "# distributions: gauss, exp, skewt, banana\n";
  } else if (config.distribution) {
    const std::string block = to_config_text(*config.distribution);
    std::size_t pos = 0;
    while (pos < block.size()) {
      const std::size_t end = block.find('\n', pos);
      out += "dist." + block.substr(pos, end - pos) + "\n";
      pos = end == std::string::npos ? block.size() : end + 1;
    }
  } else {
    out += "dist=" + config.distribution_name + "\n";
  }
  return out;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, trim(std::string_view(line).substr(eq + 1))).second) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key " + key);
    }
  }
  return out;
}

}  // namespace mvq
