#pragma once

#include "fgp/genfun.hpp"
#include "fgp/strategy.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace fgp::cli {

/// Flat `key = value` run description. Lines starting with '#' are comments.
///
///   phi = cross_entropy | neg_half_sq_norm | diversity
///   phi_pi = 0.2,0.3,0.5        (cross_entropy weights; default equal)
///   phi_lambda = 0.5            (diversity exponent)
///   scheme = multiplicative | additive | alpha_c
///   alpha = 0.5  or  alpha = 0,0.25,0.5
///   C = 2  or  C = one_over_alpha
///   v0 = 1
///   normalize_barycenter = true
///   reference = false           (append the equal-weight (1, 0) series)
///   output = report.csv
///   format = csv | json
struct RunConfig {
  std::string phi = "cross_entropy";
  std::vector<double> phi_pi;
  double phi_lambda = 0.5;
  std::string scheme = "alpha_c";
  std::vector<double> alphas{1.0};
  /// nullopt means C = 1 / alpha.
  std::optional<double> C;
  double v0 = 1.0;
  bool normalize_barycenter = true;
  bool reference = false;
  std::string output;
  std::string format = "csv";
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Comma-separated reals.
std::vector<double> parse_real_list(const std::string& text);

GeneratingFunction build_phi(const RunConfig& config, std::size_t n);

struct SeriesPlan {
  std::string label;
  double alpha;
  double C;
  GenerationScheme scheme;
};

/// One scheme per requested series. For alpha_c, alpha = 0 selects additive
/// generation; with `reference` the equal-weight multiplicative series is
/// appended. Throws DomainError on incompatible parameters.
std::vector<SeriesPlan> plan_series(const RunConfig& config, std::size_t n);

}  // namespace fgp::cli
