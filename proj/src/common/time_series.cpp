#include "gapchannel/time_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace gapchannel {

TimeSeries::TimeSeries(std::string time_label, std::vector<std::string> columns)
    : time_label_(std::move(time_label)), names_(std::move(columns)), columns_(names_.size()) {}

void TimeSeries::append(double t, const std::vector<double>& values) {
  if (values.size() != names_.size()) {
    throw std::invalid_argument("TimeSeries::append: expected " + std::to_string(names_.size()) +
                                " values, got " + std::to_string(values.size()));
  }
  if (!times_.empty() && !(t > times_.back())) {
    throw std::invalid_argument("TimeSeries::append: times must be strictly increasing");
  }
  times_.push_back(t);
  for (std::size_t i = 0; i < values.size(); ++i) columns_[i].push_back(values[i]);
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("TimeSeries: no column '" + name + "'");
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

}  // namespace gapchannel
