#include "fgp/cli/backtest.hpp"

#include "fgp/diagnostics.hpp"

#include <future>

namespace fgp::cli {

BacktestSeries run_series(const SeriesPlan& plan, const MarketPath& path) {
  const DecompositionReport report = decompose(plan.scheme, path);
  BacktestSeries out;
  out.label = plan.label;
  out.alpha = plan.alpha;
  out.C = plan.C;
  out.max_rel_residual = report.max_rel_residual;
  out.truncated_at = report.truncated_at;
  out.records.reserve(report.lhs.size());
  for (std::size_t t = 0; t < report.lhs.size(); ++t) {
    out.records.push_back(BacktestRecord{t, path[t].weights(), report.values[t], report.drift[t],
                                         t == 0 ? 0.0 : report.divergence_increments[t - 1],
                                         report.cumulative_divergence[t], report.residuals[t]});
  }
  return out;
}

std::vector<BacktestSeries> run_backtest(const RunConfig& config, const PriceTable& table) {
  const PriceTable prepared = config.normalize_barycenter ? normalize_to_barycenter(table) : table;
  const MarketPath path = market_path(prepared);
  const std::vector<SeriesPlan> plans = plan_series(config, path.dim());

  std::vector<std::future<BacktestSeries>> jobs;
  jobs.reserve(plans.size());
  for (const auto& plan : plans) {
    jobs.push_back(std::async(std::launch::async, [&plan, &path] { return run_series(plan, path); }));
  }
  std::vector<BacktestSeries> out;
  out.reserve(plans.size());
  for (auto& job : jobs) out.push_back(job.get());
  for (const auto& s : out) {
    if (s.truncated_at) {
      warn(s.label + ": value reached -C at t = " + std::to_string(*s.truncated_at) +
           "; report truncated");
    }
  }
  return out;
}

}  // namespace fgp::cli
