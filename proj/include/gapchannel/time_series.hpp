#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace gapchannel {

/// Sampled observables with a metadata block. Times are strictly increasing
/// and every column has one entry per time.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::string time_label, std::vector<std::string> columns);

  void append(double t, const std::vector<double>& values);

  const std::string& time_label() const { return time_label_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<std::string>& column_names() const { return names_; }
  const std::vector<double>& column(const std::string& name) const;
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

 private:
  std::string time_label_ = "t";
  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<double>> columns_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

}  // namespace gapchannel
