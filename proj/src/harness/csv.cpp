#include "gapchannel/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace gapchannel::harness {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table::add_row: wrong number of cells");
  rows.push_back(std::move(row));
}

Table to_table(const TimeSeries& series) {
  Table t;
  t.metadata = series.metadata();
  t.columns.push_back(series.time_label());
  for (const auto& c : series.column_names()) t.columns.push_back(c);
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::vector<Cell> row{series.times()[i]};
    for (const auto& c : series.column_names()) row.emplace_back(series.column(c)[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string format_csv(const Table& table) {
  std::ostringstream out;
  out << "# " << table.metadata.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out << format_number(v);
            else
              out << v;
          },
          row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv_atomic(const Table& table, const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << format_csv(table);
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

}  // namespace gapchannel::harness
