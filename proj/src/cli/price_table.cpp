#include "fgp/cli/price_table.hpp"

#include "fgp/errors.hpp"

#include <charconv>
#include <cmath>
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

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t row, const std::string& msg) {
  std::ostringstream os;
  os << source << ": row " << row << ": " << msg;
  throw ParseError(os.str());
}

}  // namespace

PriceTable parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t row = 0;
  // skip blank lines before the header
  while (std::getline(in, line)) {
    ++row;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError(source + ": empty file");
  const auto header = split(line);
  if (header.size() < 3) fail(source, row, "header needs a date column and at least 2 assets");

  PriceTable table;
  table.assets.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> values;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      std::ostringstream os;
      os << "expected " << header.size() << " fields, found " << cells.size();
      fail(source, row, os.str());
    }
    std::vector<double> prices;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double x = 0.0;
      const auto& cell = cells[c];
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        fail(source, row, "column " + std::to_string(c + 1) + " (" + table.assets[c - 1] +
                              "): not a number '" + cell + "'");
      }
      if (!std::isfinite(x) || x <= 0.0) {
        fail(source, row, "column " + std::to_string(c + 1) + " (" + table.assets[c - 1] +
                              "): price must be positive, got " + cell);
      }
      prices.push_back(x);
    }
    table.dates.push_back(cells[0]);
    values.push_back(std::move(prices));
  }
  if (values.size() < 2) throw ParseError(source + ": need at least 2 data rows");
  table.prices.resize(static_cast<Eigen::Index>(values.size()),
                      static_cast<Eigen::Index>(table.assets.size()));
  for (std::size_t r = 0; r < values.size(); ++r) {
    for (std::size_t c = 0; c < values[r].size(); ++c) {
      table.prices(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r][c];
    }
  }
  return table;
}

PriceTable ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_csv(in, path.string());
}

PriceTable normalize_to_barycenter(const PriceTable& table) {
  PriceTable out = table;
  const double anchor = table.prices(0, 0);
  for (Eigen::Index c = 0; c < table.prices.cols(); ++c) {
    const double s = anchor / table.prices(0, c);
    out.prices.col(c) = table.prices.col(c) * s;
    out.prices(0, c) = anchor;  // exact equality in the first row
  }
  return out;
}

MarketPath market_path(const PriceTable& table) {
  std::vector<SimplexPoint> points;
  points.reserve(table.rows());
  for (Eigen::Index r = 0; r < table.prices.rows(); ++r) {
    points.push_back(market_weights_from_caps(Vector(table.prices.row(r).transpose())));
  }
  return MarketPath(std::move(points));
}

}  // namespace fgp::cli
