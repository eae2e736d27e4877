#pragma once

// The experiment drivers behind the `mvquant` CLI: the four-distribution
// contour comparison, the anisotropic Gaussian comparison at high orders, the
// extreme geometric quantile check, and the Glivenko-Cantelli study. Each
// driver returns its results in memory and, when an output directory is set,
// writes CSV/SVG files and a key=value manifest.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvquant/contour.hpp"
#include "mvquant/core.hpp"
#include "mvquant/csv.hpp"
#include "mvquant/distributions.hpp"

namespace mvq {

enum class Experiment { figure1, figure2, extreme_check, gc_check, contour };

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::figure1;
  /// Used by figure2, extreme-check, gc-check and contour; figure1 always
  /// runs its four fixed distributions.
  std::string distribution_name = "gauss";
  std::optional<DistributionSpec> distribution;
  std::size_t n = 2400;
  std::size_t n_rings = 40;
  std::size_t n_sectors = 60;
  std::size_t k_dirs = 70;
  std::vector<double> taus{0.25, 0.5, 0.75};
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::size_t max_iter = 10000;  // geometric solver
  ContourMethod method = ContourMethod::geometric_relabeled;  // contour only
  std::size_t neighbors = 8;                                  // gc-check
  std::size_t reference_n = 100000;                           // gc-check
  std::size_t test_points = 200;                              // gc-check
  std::vector<std::size_t> n_ladder{300, 1200, 4800};         // gc-check
  std::filesystem::path out_dir;  // empty: nothing written

  /// Defaults of the given experiment.
  static ExperimentConfig defaults(Experiment e);
  /// The spec to sample from: `distribution` if set, else the preset named
  /// by `distribution_name`.
  DistributionSpec resolved_distribution() const;
  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// n_R x n_S with n_R the largest divisor of n not above sqrt(n).
std::pair<std::size_t, std::size_t> grid_shape_for(std::size_t n);

struct NamedContour {
  std::string distribution;
  Contour contour;
};

struct ContourMeasure {
  std::string distribution;
  ContourMethod method;
  double tau = 0.0;
  double content = 0.0;  // fraction of the sample inside
  Extents extents;
  std::size_t reflex_vertices = 0;
};

struct FigureResult {
  std::vector<NamedContour> contours;  // ordered distribution, method, tau
  std::vector<ContourMeasure> measures;
  std::vector<std::string> distributions;
  std::vector<SampleSet> samples;      // parallel to `distributions`
  /// (distribution, tau, k) of every direction whose solve did not converge.
  std::vector<std::string> failures;
  bool converged() const { return failures.empty(); }
};

FigureResult run_figure1(const ExperimentConfig& config);
FigureResult run_figure2(const ExperimentConfig& config);
/// One distribution, one method.
FigureResult run_contour(const ExperimentConfig& config);

struct ExtremeCheckResult {
  UnitDirection direction;
  std::vector<double> taus;
  std::vector<double> scaled_norms;  // ||Q(tau u)||^2 (1 - tau)
  std::vector<double> gradient_norms;
  std::vector<bool> converged;
  double predicted_limit = 0.0;  // (tr Sigma - u' Sigma u) / 2

  double relative_gap(std::size_t i) const { return std::abs(scaled_norms[i] / predicted_limit - 1.0); }
};

std::vector<ExtremeCheckResult> run_extreme_check(const ExperimentConfig& config);

struct GcRow {
  std::size_t n = 0, n_rings = 0, n_sectors = 0;
  double geometric_error = 0.0;
  double transport_error = 0.0;
};

/// Requires the standard bivariate Gaussian for the transport column.
std::vector<GcRow> run_gc_check(const ExperimentConfig& config);

// CSV tables.
CsvTable contour_table(const std::vector<NamedContour>& contours);
std::vector<NamedContour> parse_contour_table(std::string_view csv_text);
CsvTable measure_table(const std::vector<ContourMeasure>& measures);
CsvTable extreme_table(const std::vector<ExtremeCheckResult>& results);
CsvTable gc_table(const std::vector<GcRow>& rows);
CsvTable sample_table(const SampleSet& sample);

/// key=value lines that reproduce the run when passed back as a config file.
std::string manifest_text(const ExperimentConfig& config);

/// key=value pairs; '#' comments and blank lines skipped; duplicate keys
/// rejected.
std::map<std::string, std::string> parse_key_values(std::string_view text);

}  // namespace mvq
