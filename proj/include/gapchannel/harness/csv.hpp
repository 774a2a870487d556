#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gapchannel/time_series.hpp"

namespace gapchannel::harness {

using Cell = std::variant<double, long long, std::string>;

/// Rows of mixed numeric/text cells plus a metadata object.
struct Table {
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

Table to_table(const TimeSeries& series);

/// 12 significant digits.
std::string format_number(double v);

/// Line 1: "# " + metadata JSON, line 2: header, then one line per row.
std::string format_csv(const Table& table);

/// Writes to a temporary file beside `path`, then renames it into place.
void write_csv_atomic(const Table& table, const std::filesystem::path& path);

}  // namespace gapchannel::harness
