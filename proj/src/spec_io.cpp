// key=value serialization of DistributionSpec.
//
//   kind=gaussian          mean=0,0   covariance=2,1,1,1   (row-major)
//   kind=indep_exponential rates=1,1
//   kind=skew_t            dof=4      slant=10,10
//   kind=banana_mixture
//   kind=custom_mixture    weights=0.5,0.5
//                          component.0.mean=...  component.0.covariance=...
//
// Blank lines and lines starting with '#' are ignored.

#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "mvquant/csv.hpp"
#include "mvquant/distributions.hpp"

namespace mvq {

namespace {

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string join_matrix(const Eigen::MatrixXd& m) {
  std::vector<double> flat;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  }
  return join(flat);
}

std::vector<double> split_numbers(std::string_view s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(',', start);
    const std::string_view piece = s.substr(start, end == std::string_view::npos ? s.npos : end - start);
    out.push_back(parse_double(piece));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Eigen::MatrixXd square_matrix(const std::vector<double>& flat, std::size_t d, const std::string& key) {
  if (flat.size() != d * d) {
    throw std::invalid_argument(key + ": expected " + std::to_string(d * d) + " entries");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = flat[r * d + c];
  }
  return m;
}

class KeyValues {
 public:
  explicit KeyValues(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      const std::size_t nl = text.find('\n');
      std::string_view line = trim(text.substr(0, nl));
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (line.empty() || line.front() == '#') continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
      }
      std::string key(trim(line.substr(0, eq)));
      if (!values_.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
        throw std::invalid_argument("duplicate key: " + key);
      }
    }
  }

  const std::string& get(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("missing key: " + key);
    used_.insert(key);
    return it->second;
  }

  void require_all_used() const {
    for (const auto& [k, v] : values_) {
      if (!used_.contains(k)) throw std::invalid_argument("unknown key: " + k);
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

}  // namespace

std::string to_config_text(const DistributionSpec& spec) {
  std::string out;
  const auto& kind = spec.kind();
  if (const auto* g = std::get_if<GaussianSpec>(&kind)) {
    out += "kind=gaussian\n";
    out += "mean=" + join(g->mean.coords()) + "\n";
    out += "covariance=" + join_matrix(g->covariance) + "\n";
  } else if (const auto* e = std::get_if<IndepExponentialSpec>(&kind)) {
    out += "kind=indep_exponential\n";
    out += "rates=" + join(e->rates.coords()) + "\n";
  } else if (const auto* t = std::get_if<SkewTSpec>(&kind)) {
    out += "kind=skew_t\n";
    out += "dof=" + format_double(t->dof) + "\n";
    out += "slant=" + join(t->slant.coords()) + "\n";
  } else if (std::holds_alternative<BananaMixtureSpec>(kind)) {
    out += "kind=banana_mixture\n";
  } else {
    const auto& m = std::get<GaussianMixtureSpec>(kind);
    out += "kind=custom_mixture\n";
    out += "weights=" + join(m.weights) + "\n";
    for (std::size_t c = 0; c < m.components.size(); ++c) {
      const std::string prefix = "component." + std::to_string(c) + ".";
      out += prefix + "mean=" + join(m.components[c].mean.coords()) + "\n";
      out += prefix + "covariance=" + join_matrix(m.components[c].covariance) + "\n";
    }
  }
  return out;
}

DistributionSpec parse_distribution_config(std::string_view text) {
  KeyValues kv(text);
  const std::string kind = kv.get("kind");
  auto result = [&]() -> DistributionSpec {
    if (kind == "gaussian") {
      Vector mean(split_numbers(kv.get("mean")));
      return DistributionSpec::gaussian(
          mean, square_matrix(split_numbers(kv.get("covariance")), mean.dimension(), "covariance"));
    }
    if (kind == "indep_exponential") {
      return DistributionSpec::indep_exponential(Vector(split_numbers(kv.get("rates"))));
    }
    if (kind == "skew_t") {
      return DistributionSpec::skew_t(parse_double(kv.get("dof")), Vector(split_numbers(kv.get("slant"))));
    }
    if (kind == "banana_mixture") return DistributionSpec::banana_mixture();
    if (kind == "custom_mixture") {
      std::vector<double> weights = split_numbers(kv.get("weights"));
      std::vector<GaussianSpec> comps;
      for (std::size_t c = 0; c < weights.size(); ++c) {
        const std::string prefix = "component." + std::to_string(c) + ".";
        Vector mean(split_numbers(kv.get(prefix + "mean")));
        comps.push_back(GaussianSpec{
            mean, square_matrix(split_numbers(kv.get(prefix + "covariance")), mean.dimension(),
                                prefix + "covariance")});
      }
      return DistributionSpec::custom_mixture(std::move(weights), std::move(comps));
    }
    throw std::invalid_argument("unknown distribution kind: " + kind);
  }();
  kv.require_all_used();
  return result;
}

}  // namespace mvq
