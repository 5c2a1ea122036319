#include "fgp/cli/run_config.hpp"

#include "fgp/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fgp::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(x)) {
    throw ParseError("not a number: '" + t + "'");
  }
  return x;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("not a boolean: '" + text + "'");
}

std::string label_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    if (eq == std::string::npos) throw ParseError(where() + "expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    try {
      if (key == "phi") {
        cfg.phi = value;
      } else if (key == "phi_pi") {
        cfg.phi_pi = parse_real_list(value);
      } else if (key == "phi_lambda") {
        cfg.phi_lambda = parse_real(value);
      } else if (key == "scheme") {
        if (value != "multiplicative" && value != "additive" && value != "alpha_c") {
          throw ParseError("unknown scheme '" + value + "'");
        }
        cfg.scheme = value;
      } else if (key == "alpha") {
        cfg.alphas = parse_real_list(value);
      } else if (key == "C") {
        if (value == "one_over_alpha") {
          cfg.C.reset();
        } else {
          cfg.C = parse_real(value);
        }
      } else if (key == "v0") {
        cfg.v0 = parse_real(value);
      } else if (key == "normalize_barycenter") {
        cfg.normalize_barycenter = parse_bool(value);
      } else if (key == "reference") {
        cfg.reference = parse_bool(value);
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "format") {
        if (value != "csv" && value != "json") throw ParseError("unknown format '" + value + "'");
        cfg.format = value;
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError(where() + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_config(in, path.string());
}

GeneratingFunction build_phi(const RunConfig& config, std::size_t n) {
  if (config.phi == "cross_entropy") {
    if (config.phi_pi.empty()) return cross_entropy_equal(n);
    if (config.phi_pi.size() != n) throw DimensionError("phi_pi length differs from asset count");
    return cross_entropy(Eigen::Map<const Vector>(config.phi_pi.data(), static_cast<Eigen::Index>(n)));
  }
  if (config.phi == "diversity") return diversity(config.phi_lambda);
  return make_builtin(config.phi, Vector(), n);
}

std::vector<SeriesPlan> plan_series(const RunConfig& config, std::size_t n) {
  const GeneratingFunction phi = build_phi(config, n);
  std::vector<SeriesPlan> plans;
  if (config.scheme == "multiplicative") {
    plans.push_back({"multiplicative", 1.0, 0.0, GenerationScheme::multiplicative(phi, config.v0)});
  } else if (config.scheme == "additive") {
    plans.push_back({"additive", 0.0, 0.0, GenerationScheme::additive(phi, config.v0)});
  } else {
    if (config.alphas.empty()) throw DomainError("alpha list is empty");
    for (double a : config.alphas) {
      if (a < 0.0) throw DomainError("alpha must be nonnegative, got " + label_number(a));
      if (a == 0.0) {
        plans.push_back({"alpha_0", 0.0, 0.0, GenerationScheme::additive(phi, config.v0)});
        continue;
      }
      const double c = config.C ? *config.C : 1.0 / a;
      plans.push_back({"alpha_" + label_number(a), a, c, GenerationScheme::alpha_c(phi, a, c, config.v0)});
    }
  }
  if (config.reference) {
    plans.push_back({"reference", 1.0, 0.0, GenerationScheme::alpha_c(cross_entropy_equal(n), 1.0, 0.0, config.v0)});
  }
  return plans;
}

}  // namespace fgp::cli
