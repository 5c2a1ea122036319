#pragma once

#include "fgp/cli/price_table.hpp"
#include "fgp/cli/run_config.hpp"
#include "fgp/strategy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fgp::cli {

struct BacktestRecord {
  std::size_t t;
  Vector mu;
  double value;
  double drift;
  double div_step;  // D[mu(t) : mu(t-1)], 0 at t = 0
  double div_cum;
  double residual;
};

struct BacktestSeries {
  std::string label;
  double alpha = 0.0;
  double C = 0.0;
  std::vector<BacktestRecord> records;
  double max_rel_residual = 0.0;
  std::optional<std::size_t> truncated_at;
};

/// Runs one scheme along the path and turns its decomposition into records.
BacktestSeries run_series(const SeriesPlan& plan, const MarketPath& path);

/// Every series requested by the config. Independent series run concurrently;
/// the result order follows plan_series.
std::vector<BacktestSeries> run_backtest(const RunConfig& config, const PriceTable& table);

}  // namespace fgp::cli
