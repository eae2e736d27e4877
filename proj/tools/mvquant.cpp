// mvquant: command-line front end for the contour experiments.
//
//   mvquant sample        --dist banana --n 500 --seed 3 --out sample.csv
//   mvquant contour       --method ot --dist skewt --n 2400 --out results
//   mvquant figure1       --seed 7 --out results
//   mvquant figure2 | extreme-check | gc-check   [flags]
//
// Every flag may also come from --config FILE (key=value, keys named like the
// long flags without dashes, distribution parameters as dist.KEY=VALUE).
// Flags given on the command line win.
//
// Exit status: 0 success, 1 usage or I/O error, 2 solver non-convergence.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mvquant/csv.hpp"
#include "mvquant/distributions.hpp"
#include "mvquant/experiments.hpp"

namespace {

using Settings = std::map<std::string, std::string>;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNoConvergence = 2;

struct Flags {
  Settings given;  // long flag name -> raw value, only for flags on the command line
};

// Registers --name as a string option whose value lands in flags.given.
void add_flag(CLI::App& app, Flags& flags, const std::string& name, const std::string& help) {
  app.add_option_function<std::string>(
      "--" + name, [&flags, name](const std::string& v) { flags.given[name] = v; }, help);
}

void add_common_flags(CLI::App& app, Flags& flags) {
  add_flag(app, flags, "dist", "distribution preset: gauss, gauss-aniso, gauss-std, exp, skewt, banana");
  add_flag(app, flags, "dist-file", "key=value distribution file (overrides --dist)");
  add_flag(app, flags, "n", "sample size");
  add_flag(app, flags, "seed", "random seed");
  add_flag(app, flags, "taus", "comma-separated quantile orders, strictly increasing in (0,1)");
  add_flag(app, flags, "nr", "grid rings");
  add_flag(app, flags, "ns", "grid sectors");
  add_flag(app, flags, "k-dirs", "number of contour directions");
  add_flag(app, flags, "tol", "geometric solver tolerance");
  add_flag(app, flags, "max-iter", "geometric solver iteration cap");
  add_flag(app, flags, "out", "output directory (output file for `sample`)");
  add_flag(app, flags, "config", "key=value config file; command-line flags win");
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    if (!v.empty() && v.front() == '-') throw std::invalid_argument("negative");
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = v.find(',', pos);
    out.push_back(v.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Config-file entries first, then command-line flags on top.
Settings merge_settings(const Flags& flags) {
  Settings merged;
  if (auto it = flags.given.find("config"); it != flags.given.end()) {
    merged = mvq::parse_key_values(mvq::read_text_file(it->second));
  }
  for (const auto& [k, v] : flags.given) {
    if (k != "config") merged[k] = v;
  }
  return merged;
}

mvq::ExperimentConfig build_config(mvq::Experiment experiment, const Settings& s) {
  mvq::ExperimentConfig c = mvq::ExperimentConfig::defaults(experiment);
  c.out_dir = "results";
  std::string dist_block;
  for (const auto& [key, value] : s) {
    if (key == "experiment") {
      if (mvq::parse_experiment(value) != experiment) {
        throw std::invalid_argument("config is for experiment '" + value + "'");
      }
    } else if (key == "dist") {
      c.distribution_name = value;
      mvq::DistributionSpec::preset(value);
    } else if (key == "dist-file") {
      dist_block = mvq::read_text_file(value);
    } else if (key.rfind("dist.", 0) == 0) {
      if (!s.count("dist-file")) dist_block += key.substr(5) + "=" + value + "\n";
    } else if (key == "n") {
      c.n = parse_uint(key, value);
    } else if (key == "seed") {
      c.seed = parse_uint(key, value);
    } else if (key == "taus") {
      c.taus.clear();
      for (const std::string& t : split_commas(value)) c.taus.push_back(mvq::parse_double(t));
    } else if (key == "nr") {
      c.n_rings = parse_uint(key, value);
    } else if (key == "ns") {
      c.n_sectors = parse_uint(key, value);
    } else if (key == "k-dirs") {
      c.k_dirs = parse_uint(key, value);
    } else if (key == "tol") {
      c.tol = mvq::parse_double(value);
    } else if (key == "max-iter") {
      c.max_iter = parse_uint(key, value);
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "method") {
      if (value == "geom") {
        c.method = mvq::ContourMethod::geometric_relabeled;
      } else if (value == "ot") {
        c.method = mvq::ContourMethod::center_outward;
      } else {
        throw std::invalid_argument("method: expected geom or ot, got '" + value + "'");
      }
    } else if (key == "neighbors") {
      c.neighbors = parse_uint(key, value);
    } else if (key == "reference-n") {
      c.reference_n = parse_uint(key, value);
    } else if (key == "test-points") {
      c.test_points = parse_uint(key, value);
    } else if (key == "n-ladder") {
      c.n_ladder.clear();
      for (const std::string& t : split_commas(value)) c.n_ladder.push_back(parse_uint(key, t));
    } else {
      throw std::invalid_argument("unknown setting '" + key + "'");
    }
  }
  if (!dist_block.empty()) {
    c.distribution = mvq::parse_distribution_config(dist_block);
    c.distribution_name = "custom";
  }

  // Fill in whichever of n and the grid shape was left open.
  const bool has_n = s.count("n"), has_grid = s.count("nr") || s.count("ns");
  if (has_n && !has_grid) {
    std::tie(c.n_rings, c.n_sectors) = mvq::grid_shape_for(c.n);
  } else if (has_grid && !has_n) {
    c.n = c.n_rings * c.n_sectors;
  }
  return c;
}

void print_measures(const mvq::FigureResult& r) {
  std::printf("%-12s %-15s %6s %9s %11s %11s\n", "distribution", "method", "tau", "content", "half_width",
              "half_height");
  for (const mvq::ContourMeasure& m : r.measures) {
    std::printf("%-12s %-15s %6.3f %9.4f %11.4f %11.4f\n", m.distribution.c_str(),
                std::string(mvq::method_name(m.method)).c_str(), m.tau, m.content, m.extents.half_width,
                m.extents.half_height);
  }
  for (const std::string& f : r.failures) std::fprintf(stderr, "not converged: %s\n", f.c_str());
}

int run_experiment(mvq::Experiment e, const Flags& flags) {
  const mvq::ExperimentConfig c = build_config(e, merge_settings(flags));
  switch (e) {
    case mvq::Experiment::figure1:
    case mvq::Experiment::figure2:
    case mvq::Experiment::contour: {
      const mvq::FigureResult r = e == mvq::Experiment::figure1   ? mvq::run_figure1(c)
                                  : e == mvq::Experiment::figure2 ? mvq::run_figure2(c)
                                                                  : mvq::run_contour(c);
      print_measures(r);
      return r.converged() ? kOk : kNoConvergence;
    }
    case mvq::Experiment::extreme_check: {
      bool ok = true;
      std::printf("%8s %8s %7s %12s %10s %9s\n", "u_x", "u_y", "tau", "scaled_norm", "limit", "rel_gap");
      for (const mvq::ExtremeCheckResult& r : mvq::run_extreme_check(c)) {
        for (std::size_t i = 0; i < r.taus.size(); ++i) {
          std::printf("%8.4f %8.4f %7.4f %12.6f %10.6f %9.4f%s\n", r.direction[0],
                      r.direction.dimension() > 1 ? r.direction[1] : 0.0, r.taus[i], r.scaled_norms[i],
                      r.predicted_limit, r.relative_gap(i), r.converged[i] ? "" : "  (not converged)");
          ok = ok && r.converged[i];
        }
      }
      return ok ? kOk : kNoConvergence;
    }
    case mvq::Experiment::gc_check: {
      std::printf("%7s %5s %5s %16s %16s\n", "n", "nr", "ns", "geometric_error", "transport_error");
      for (const mvq::GcRow& r : mvq::run_gc_check(c)) {
        std::printf("%7zu %5zu %5zu %16.6f %16.6f\n", r.n, r.n_rings, r.n_sectors, r.geometric_error,
                    r.transport_error);
      }
      return kOk;
    }
  }
  return kUsage;
}

int run_sample(const Flags& flags) {
  const Settings s = merge_settings(flags);
  mvq::ExperimentConfig c = build_config(mvq::Experiment::contour, s);
  const mvq::SampleSet x = mvq::sample(c.resolved_distribution(), c.n, c.seed);
  const std::string text = mvq::to_csv_text(mvq::sample_table(x));
  if (s.count("out")) {
    mvq::write_text_file(c.out_dir, text);
  } else {
    std::cout << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric and center-outward quantile contours"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    Flags flags;
    CLI::App* app = nullptr;
  };
  std::vector<Sub> subs;
  subs.reserve(6);
  subs.push_back({"sample", "draw a sample and write it as CSV", {}});
  subs.push_back({"contour", "contours of one distribution by one method", {}});
  subs.push_back({"figure1", "four distributions, both methods, tau .25/.5/.75", {}});
  subs.push_back({"figure2", "anisotropic Gaussian, both methods, tau .90/.95/.99", {}});
  subs.push_back({"extreme-check", "extreme geometric quantiles against their limit", {}});
  subs.push_back({"gc-check", "sup errors of both distribution functions over a sample-size ladder", {}});
  for (Sub& s : subs) {
    s.app = app.add_subcommand(s.name, s.help);
    add_common_flags(*s.app, s.flags);
  }
  add_flag(*subs[1].app, subs[1].flags, "method", "geom or ot");
  for (const char* name : {"neighbors", "reference-n", "test-points", "n-ladder"}) {
    add_flag(*subs[5].app, subs[5].flags, name, "gc-check setting");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (Sub& s : subs) {
      if (!s.app->parsed()) continue;
      const std::string name = s.name;
      if (name == "sample") return run_sample(s.flags);
      return run_experiment(mvq::parse_experiment(name), s.flags);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
