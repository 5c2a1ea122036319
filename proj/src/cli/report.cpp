#include "fgp/cli/report.hpp"

#include "fgp/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace fgp::cli {

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ParseError("unknown report format '" + std::string(name) + "'");
}

std::string_view format_extension(ReportFormat format) {
  return format == ReportFormat::Csv ? "csv" : "json";
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::vector<std::string> keys(std::size_t n) {
  std::vector<std::string> k{"t"};
  for (std::size_t i = 1; i <= n; ++i) k.push_back("mu_" + std::to_string(i));
  for (const char* s : {"value", "drift", "div_step", "div_cum", "residual"}) k.emplace_back(s);
  return k;
}

std::vector<std::string> cells(const BacktestRecord& r) {
  std::vector<std::string> c{std::to_string(r.t)};
  for (Eigen::Index i = 0; i < r.mu.size(); ++i) c.push_back(format_number(r.mu(i)));
  for (double x : {r.value, r.drift, r.div_step, r.div_cum, r.residual}) c.push_back(format_number(x));
  return c;
}

}  // namespace

void write_report(std::ostream& out, const std::vector<BacktestRecord>& records, ReportFormat format) {
  if (records.empty()) throw DomainError("report needs at least one record");
  const auto header = keys(static_cast<std::size_t>(records.front().mu.size()));
  if (format == ReportFormat::Csv) {
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& r : records) {
      const auto c = cells(r);
      for (std::size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << c[k];
      out << '\n';
    }
    return;
  }
  // numbers go through the same 12-digit rendering as the CSV
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    const auto c = cells(r);
    nlohmann::ordered_json obj;
    obj["t"] = r.t;
    for (std::size_t k = 1; k < c.size(); ++k) obj[header[k]] = std::strtod(c[k].c_str(), nullptr);
    array.push_back(std::move(obj));
  }
  out << array.dump(2) << '\n';
}

void emit_report(const std::vector<BacktestRecord>& records, ReportFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_report(out, records, format);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_summary(std::ostream& out, const std::vector<BacktestSeries>& series) {
  out << "series,alpha,C,final_value,max_rel_residual,truncated_at\n";
  for (const auto& s : series) {
    out << s.label << ',' << format_number(s.alpha) << ',' << format_number(s.C) << ','
        << (s.records.empty() ? std::string("nan") : format_number(s.records.back().value)) << ','
        << format_number(s.max_rel_residual) << ','
        << (s.truncated_at ? std::to_string(*s.truncated_at) : std::string()) << '\n';
  }
}

void emit_series_directory(const std::vector<BacktestSeries>& series, ReportFormat format,
                           const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& s : series) {
    emit_report(s.records, format, dir / (s.label + "." + std::string(format_extension(format))));
  }
  std::ofstream out(dir / "summary.csv", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / "summary.csv").string());
  write_summary(out, series);
}

}  // namespace fgp::cli
