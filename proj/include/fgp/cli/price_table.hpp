#pragma once

#include "fgp/market.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace fgp::cli {

/// Prices or capitalizations, one row per period, one column per asset.
struct PriceTable {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  Matrix prices;  // rows x assets, strictly positive

  std::size_t rows() const noexcept { return static_cast<std::size_t>(prices.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(prices.cols()); }
};

/// Header row `date,<asset>,...`, then `<label>,<price>,...` rows. Dates are
/// opaque labels. Throws ParseError naming the row and column on bad input.
PriceTable parse_csv(std::istream& in, const std::string& source = "<stream>");
PriceTable ingest_csv(const std::filesystem::path& path);

/// Rescales every column so the first row has equal entries (hence equal
/// market weights). Column 0 keeps its scale.
PriceTable normalize_to_barycenter(const PriceTable& table);

/// Market weights of each row.
MarketPath market_path(const PriceTable& table);

}  // namespace fgp::cli
