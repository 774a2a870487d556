#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gapchannel::harness {

enum class RunKind { SpinEvolve, HarmonicEvolve, MasterSolve, FrequencyScan, GapScan, Verify };

std::string to_string(RunKind k);
std::optional<RunKind> parse_kind(const std::string& s);
std::vector<std::string> kind_names();

enum class ValueType { Int, Real, IntList, RealList, Text };
enum class Bound { Any, Positive, NonNegative };

struct KeySpec {
  std::string name;
  ValueType type;
  bool required;
  nlohmann::json default_value;  // null when required
  Bound bound = Bound::Any;
  std::string help;
};

/// Keys accepted for a run kind (excluding `kind` itself).
const std::vector<KeySpec>& schema(RunKind kind);

/// A validated flat configuration. `values` holds every key of the kind's
/// schema, with defaults filled in; `lines` maps keys to the line they were
/// read from (absent for defaults).
struct RunConfig {
  RunKind kind = RunKind::Verify;
  nlohmann::json values = nlohmann::json::object();
  std::map<std::string, int> lines;

  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;
  std::string text(const std::string& key) const;
};

/// `key = value` lines, `#` starts a comment. Lists are comma separated.
/// Throws ConfigError carrying the line of the first problem.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace gapchannel::harness
