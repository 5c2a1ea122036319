// Command-line front end: backtests, alpha-sweeps, verification suite and
// concavity checks.

#include "fgp/cli/backtest.hpp"
#include "fgp/cli/price_table.hpp"
#include "fgp/cli/report.hpp"
#include "fgp/cli/run_config.hpp"
#include "fgp/cli/verify.hpp"
#include "fgp/errors.hpp"
#include "fgp/genfun.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;

void check_residuals(const std::vector<fgp::cli::BacktestSeries>& series) {
  for (const auto& s : series) {
    std::cerr << s.label << ": " << s.records.size() << " records, final value "
              << fgp::cli::format_number(s.records.empty() ? 0.0 : s.records.back().value)
              << ", max relative residual " << fgp::cli::format_number(s.max_rel_residual) << '\n';
  }
}

// Series labels sorted by value at time t, largest first; the reference is left out.
void report_ordering(const std::vector<fgp::cli::BacktestSeries>& series, std::size_t t, const char* when) {
  std::vector<const fgp::cli::BacktestSeries*> ranked;
  for (const auto& s : series) {
    if (s.label != "reference" && t < s.records.size()) ranked.push_back(&s);
  }
  if (ranked.size() < 2) return;
  std::stable_sort(ranked.begin(), ranked.end(), [t](const auto* a, const auto* b) {
    return a->records[t].value > b->records[t].value;
  });
  std::cerr << "ordering by value at " << when << " (t = " << t << "):";
  for (const auto* s : ranked) std::cerr << ' ' << s->label;
  std::cerr << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functionally generated portfolios: backtests and verification"};
  app.require_subcommand(1);

  std::string config_path, data_path, out_path, format = "csv", alphas_text;
  auto* run = app.add_subcommand("run", "Backtest one configuration");
  run->add_option("--config", config_path, "key = value run description")->required()->check(CLI::ExistingFile);
  run->add_option("--data", data_path, "price CSV")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "report file (a directory when several series are produced)")->required();
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "Run an (alpha, 1/alpha) sweep plus the equal-weight reference");
  sweep->add_option("--alphas", alphas_text, "comma-separated alphas; 0 means additive")
      ->default_val("0,0.25,0.5,0.75,1");
  sweep->add_option("--data", data_path, "price CSV")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "output directory")->required();
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--config", config_path, "optional base configuration")->check(CLI::ExistingFile);

  std::uint64_t seed = 42;
  bool flip = false;
  std::optional<double> concavity_alpha;
  auto* verify = app.add_subcommand("verify", "Run the property verification suite");
  verify->add_option("--seed", seed, "random seed");
  verify->add_flag("--flip-lalpha-sign", flip, "use the opposite sign of the drift term in L^(alpha)");
  verify->add_option("--concavity-alpha", concavity_alpha,
                     "test e^{alpha phi} of two-asset equal cross entropy at this alpha");

  std::string phi_name = "cross_entropy", pi_text;
  double alpha = 1.0, lambda = 0.5;
  std::size_t n = 3, samples = 2000;
  auto* conc = app.add_subcommand("concavity", "Sampling check of alpha-exponential concavity");
  conc->add_option("--phi", phi_name, "builtin generating function")
      ->check(CLI::IsMember({"cross_entropy", "neg_half_sq_norm", "diversity"}));
  conc->add_option("--alpha", alpha, "exponent")->required();
  conc->add_option("--pi", pi_text, "cross entropy weights (default equal)");
  conc->add_option("--lambda", lambda, "diversity exponent");
  conc->add_option("--n", n, "dimension");
  conc->add_option("--samples", samples, "number of sampled points");
  conc->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*run || *sweep) {
      fgp::cli::RunConfig config;
      if (!config_path.empty()) config = fgp::cli::load_config(config_path);
      if (run->count("--format") == 0 && *run) format = config.format;
      if (*sweep) {
        config.scheme = "alpha_c";
        config.alphas = fgp::cli::parse_real_list(alphas_text);
        config.C.reset();
        config.reference = true;
      }
      const auto table = fgp::cli::ingest_csv(data_path);
      std::cerr << "read " << table.rows() << " rows, " << table.cols() << " assets\n";
      const auto series = fgp::cli::run_backtest(config, table);
      const auto fmt = fgp::cli::parse_format(format);
      if (*run && series.size() == 1) {
        fgp::cli::emit_report(series.front().records, fmt, out_path);
      } else {
        fgp::cli::emit_series_directory(series, fmt, out_path);
      }
      check_residuals(series);
      if (*sweep && !series.empty() && series.front().records.size() > 1) {
        const std::size_t last = series.front().records.size() - 1;
        report_ordering(series, std::max<std::size_t>(1, last / 10), "start");
        report_ordering(series, last, "end");
      }
      return kExitOk;
    }
    if (*verify) {
      fgp::cli::VerifyOptions options;
      options.seed = seed;
      options.l_alpha_sign = flip ? fgp::LAlphaSign::AsPrinted : fgp::LAlphaSign::Corrected;
      options.concavity_alpha = concavity_alpha;
      const auto summary = fgp::cli::verify_suite(options);
      fgp::cli::print_summary(std::cout, summary);
      return summary.passed() ? kExitOk : kExitVerifyFailed;
    }
    if (*conc) {
      fgp::Vector params;
      if (phi_name == "cross_entropy" && !pi_text.empty()) {
        const auto pi = fgp::cli::parse_real_list(pi_text);
        params = Eigen::Map<const fgp::Vector>(pi.data(), static_cast<Eigen::Index>(pi.size()));
        n = pi.size();
      } else if (phi_name == "diversity") {
        params = fgp::Vector::Constant(1, lambda);
      }
      const auto phi = fgp::make_builtin(phi_name, params, n);
      const auto result = fgp::check_alpha_exp_concavity(phi, alpha, samples, n, seed);
      std::cout << (result.passed ? "PASS" : "FAIL") << ' ' << phi.name() << " alpha=" << alpha
                << " n=" << n << " checks=" << result.checks
                << " worst_midpoint_margin=" << result.worst_midpoint_margin
                << " worst_hessian_eigenvalue=" << result.worst_hessian_eigenvalue << '\n';
      if (result.witness) {
        std::cout << "witness p=[" << result.witness->p.transpose() << "]";
        if (result.witness->q.size() > 0) std::cout << " q=[" << result.witness->q.transpose() << "]";
        std::cout << " margin=" << result.witness->margin << '\n';
      }
      return result.passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}
