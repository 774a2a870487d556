#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gapchannel::harness {

/// One output file of a preset: its stem, the config text that produces it
/// and notes merged into the CSV metadata.
struct PresetRun {
  std::string stem;
  std::string config;
  nlohmann::json notes = nlohmann::json::object();
};

std::vector<std::string> preset_names();

/// Throws ConfigError for an unknown name. `desk` selects the reduced-size
/// variant; its notes record how it departs from the full geometry.
std::vector<PresetRun> preset_runs(const std::string& name, bool desk);

}  // namespace gapchannel::harness
