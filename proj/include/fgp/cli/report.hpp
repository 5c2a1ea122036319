#pragma once

#include "fgp/cli/backtest.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fgp::cli {

enum class ReportFormat { Csv, Json };

ReportFormat parse_format(std::string_view name);
std::string_view format_extension(ReportFormat format);

/// 12 significant digits.
std::string format_number(double x);

/// CSV header `t,mu_1..mu_n,value,drift,div_step,div_cum,residual`, or a JSON
/// array of objects with the same keys.
void write_report(std::ostream& out, const std::vector<BacktestRecord>& records, ReportFormat format);

/// Writes the records to `path`. Throws std::runtime_error if it cannot.
void emit_report(const std::vector<BacktestRecord>& records, ReportFormat format,
                 const std::filesystem::path& path);

/// `series,alpha,C,final_value,max_rel_residual,truncated_at`, one line per series.
void write_summary(std::ostream& out, const std::vector<BacktestSeries>& series);

/// One report per series (`<label>.<ext>`) plus summary.csv inside `dir`.
void emit_series_directory(const std::vector<BacktestSeries>& series, ReportFormat format,
                           const std::filesystem::path& dir);

}  // namespace fgp::cli
