#include "gapchannel/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gapchannel/errors.hpp"
#include "gapchannel/harmonic/gaussian.hpp"
#include "gapchannel/master/analytics.hpp"
#include "gapchannel/spin/model.hpp"

namespace gapchannel::harness {

namespace {

using nlohmann::json;

const std::vector<std::pair<RunKind, std::string>> kKindNames = {
    {RunKind::SpinEvolve, "spin-evolve"},     {RunKind::HarmonicEvolve, "harmonic-evolve"},
    {RunKind::MasterSolve, "master-solve"},   {RunKind::FrequencyScan, "frequency-scan"},
    {RunKind::GapScan, "gap-scan"},           {RunKind::Verify, "verify"},
};

KeySpec req(std::string name, ValueType t, Bound b = Bound::Any) { return {std::move(name), t, true, nullptr, b, {}}; }
KeySpec opt(std::string name, ValueType t, json def, Bound b = Bound::Any) {
  return {std::move(name), t, false, std::move(def), b, {}};
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::optional<double> to_real(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) return std::nullopt;
  return v;
}

const char* type_name(ValueType t) {
  switch (t) {
    case ValueType::Int: return "an integer";
    case ValueType::Real: return "a number";
    case ValueType::IntList: return "a comma-separated list of integers";
    case ValueType::RealList: return "a comma-separated list of numbers";
    case ValueType::Text: return "text";
  }
  return "?";
}

json convert(const KeySpec& spec, const std::string& raw, int line) {
  auto mismatch = [&] {
    return ConfigError(line, "type mismatch for '" + spec.name + "': expected " + type_name(spec.type) + ", got '" +
                                 raw + "'");
  };
  auto check_bound = [&](double v) {
    if (spec.bound == Bound::Positive && !(v > 0.0)) throw ConfigError(line, spec.name + " must be > 0");
    if (spec.bound == Bound::NonNegative && !(v >= 0.0)) throw ConfigError(line, spec.name + " must be >= 0");
  };
  switch (spec.type) {
    case ValueType::Int: {
      const auto v = to_int(raw);
      if (!v) throw mismatch();
      check_bound(static_cast<double>(*v));
      return *v;
    }
    case ValueType::Real: {
      const auto v = to_real(raw);
      if (!v || !std::isfinite(*v)) throw mismatch();
      check_bound(*v);
      return *v;
    }
    case ValueType::IntList: {
      json arr = json::array();
      for (const auto& item : split_list(raw)) {
        const auto v = to_int(item);
        if (!v) throw mismatch();
        check_bound(static_cast<double>(*v));
        arr.push_back(*v);
      }
      if (arr.empty()) throw mismatch();
      return arr;
    }
    case ValueType::RealList: {
      json arr = json::array();
      for (const auto& item : split_list(raw)) {
        const auto v = to_real(item);
        if (!v || !std::isfinite(*v)) throw mismatch();
        check_bound(*v);
        arr.push_back(*v);
      }
      if (arr.empty()) throw mismatch();
      return arr;
    }
    case ValueType::Text:
      if (raw.empty()) throw mismatch();
      return raw;
  }
  throw mismatch();
}

// Cross-key checks that need the model types.
void validate_semantics(const RunConfig& cfg) {
  auto line_of = [&](std::initializer_list<const char*> keys) {
    int best = 0;
    for (const char* k : keys) {
      const auto it = cfg.lines.find(k);
      if (it != cfg.lines.end()) best = best == 0 ? it->second : std::min(best, it->second);
    }
    return best;
  };
  try {
    switch (cfg.kind) {
      case RunKind::SpinEvolve: {
        spin::SpinModelParams p{cfg.integer("N"), cfg.real("B"),  cfg.real("Jx"),      cfg.real("Jy"),
                                cfg.real("Jz"),   cfg.real("Ba"), cfg.real("Ja"),      cfg.integer("mS"),
                                cfg.integer("mR")};
        p.validate();
        const std::string engine = cfg.text("engine");
        if (engine != "tebd" && engine != "ed") throw ConfigError(line_of({"engine"}), "engine must be 'tebd' or 'ed'");
        const double ratio = cfg.real("sample_every") / cfg.real("dt");
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
          throw ConfigError(line_of({"sample_every", "dt"}), "sample_every must be a multiple of dt");
        }
        break;
      }
      case RunKind::HarmonicEvolve: {
        harmonic::HarmonicModelParams p{cfg.integer("N"), cfg.real("Omega"), cfg.real("Omega0"), cfg.real("omega"),
                                        cfg.real("Ja"),   cfg.integer("mS"), cfg.integer("mR")};
        p.validate();
        break;
      }
      case RunKind::MasterSolve: {
        master::ChannelParams p{cfg.real("Omega"), cfg.real("Omega0"), cfg.real("omega"), cfg.integer("d")};
        p.validate();
        break;
      }
      case RunKind::FrequencyScan:
        if (cfg.real("Omega0_max") < cfg.real("Omega0_min")) {
          throw ConfigError(line_of({"Omega0_max"}), "Omega0_max must be >= Omega0_min");
        }
        if (cfg.integer("d_max") < cfg.integer("d_min")) throw ConfigError(line_of({"d_max"}), "d_max must be >= d_min");
        break;
      case RunKind::GapScan:
        for (int n : cfg.integers("sizes")) {
          if (n < 4 || n > 12) throw ConfigError(line_of({"sizes"}), "gap-scan sizes must lie in [4, 12]");
        }
        if (cfg.integers("sizes").size() < 2) throw ConfigError(line_of({"sizes"}), "gap-scan needs at least two sizes");
        break;
      case RunKind::Verify:
        for (int c : cfg.integers("criteria")) {
          if (c < 1 || c > 10) throw ConfigError(line_of({"criteria"}), "criteria must lie in [1, 10]");
        }
        break;
    }
  } catch (const ParameterError& e) {
    throw ConfigError(0, std::string("invalid parameters: ") + e.what());
  }
}

}  // namespace

std::string to_string(RunKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "unknown";
}

std::optional<RunKind> parse_kind(const std::string& s) {
  for (const auto& [kind, name] : kKindNames)
    if (name == s) return kind;
  return std::nullopt;
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& kn : kKindNames) out.push_back(kn.second);
  return out;
}

const std::vector<KeySpec>& schema(RunKind kind) {
  using V = ValueType;
  using B = Bound;
  static const std::vector<KeySpec> spin = {
      req("N", V::Int),
      req("B", V::Real),
      req("Jx", V::Real),
      req("Jy", V::Real),
      req("Jz", V::Real),
      req("Ba", V::Real, B::NonNegative),
      req("Ja", V::Real, B::NonNegative),
      req("mS", V::Int),
      req("mR", V::Int),
      req("T", V::Real, B::Positive),
      opt("chi", V::Int, 10, B::Positive),
      opt("dt", V::Real, 0.05, B::Positive),
      opt("sample_every", V::Real, 1.0, B::Positive),
      opt("discarded_weight_bound", V::Real, 1e-6, B::Positive),
      opt("engine", V::Text, "tebd"),
  };
  static const std::vector<KeySpec> harmonic = {
      req("N", V::Int),
      req("Omega", V::Real, B::Positive),
      req("Omega0", V::Real, B::Positive),
      req("omega", V::Real, B::Positive),
      req("Ja", V::Real, B::NonNegative),
      req("mS", V::Int),
      req("mR", V::Int),
      req("T", V::Real, B::Positive),
      opt("nS0", V::Real, 1.0, B::NonNegative),
      opt("sample_every", V::Real, 5.0, B::Positive),
  };
  static const std::vector<KeySpec> master = {
      req("Omega", V::Real, B::NonNegative),
      req("Omega0", V::Real, B::Positive),
      req("omega", V::Real, B::Positive),
      req("Ja", V::Real, B::NonNegative),
      req("d", V::Int, B::NonNegative),
      req("T", V::Real, B::Positive),
      opt("nS0", V::Real, 1.0, B::NonNegative),
      opt("nR0", V::Real, 0.0, B::NonNegative),
      opt("sample_every", V::Real, 5.0, B::Positive),
  };
  static const std::vector<KeySpec> scan = {
      req("Omega", V::Real, B::Positive),
      req("omega", V::RealList, B::Positive),
      req("Ja", V::Real, B::NonNegative),
      req("Omega0_min", V::Real, B::Positive),
      req("Omega0_max", V::Real, B::Positive),
      req("d_min", V::Int, B::Positive),
      req("d_max", V::Int, B::Positive),
      opt("Omega0_steps", V::Int, 31, B::Positive),
  };
  static const std::vector<KeySpec> gap = {
      req("B", V::Real),
      req("Jx", V::Real),
      req("Jy", V::Real),
      req("Jz", V::Real),
      req("Ba", V::Real, B::NonNegative),
      req("Ja", V::Real, B::NonNegative),
      opt("sizes", V::IntList, json::array({8, 10, 12})),
  };
  static const std::vector<KeySpec> verify = {
      opt("chi", V::Int, 10, B::Positive),
      opt("dt_scale", V::Real, 1.0, B::Positive),
      opt("criteria", V::IntList, json::array({1, 2, 3, 4, 5, 6, 7, 8, 9, 10})),
  };
  switch (kind) {
    case RunKind::SpinEvolve: return spin;
    case RunKind::HarmonicEvolve: return harmonic;
    case RunKind::MasterSolve: return master;
    case RunKind::FrequencyScan: return scan;
    case RunKind::GapScan: return gap;
    case RunKind::Verify: return verify;
  }
  return verify;
}

double RunConfig::real(const std::string& key) const { return values.at(key).get<double>(); }
int RunConfig::integer(const std::string& key) const { return values.at(key).get<int>(); }
std::vector<double> RunConfig::reals(const std::string& key) const { return values.at(key).get<std::vector<double>>(); }
std::vector<int> RunConfig::integers(const std::string& key) const { return values.at(key).get<std::vector<int>>(); }
std::string RunConfig::text(const std::string& key) const { return values.at(key).get<std::string>(); }

RunConfig parse_config(const std::string& text) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> entries;
  std::vector<std::string> order;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (entries.count(key)) throw ConfigError(line_no, "duplicate key: " + key);
    entries[key] = {value, line_no};
    order.push_back(key);
  }

  const auto kind_it = entries.find("kind");
  if (kind_it == entries.end()) throw ConfigError(0, "missing key: kind");
  const auto kind = parse_kind(kind_it->second.value);
  if (!kind) throw ConfigError(kind_it->second.line, "unknown kind '" + kind_it->second.value + "'");

  RunConfig cfg;
  cfg.kind = *kind;
  cfg.lines["kind"] = kind_it->second.line;
  const auto& keys = schema(*kind);
  std::set<std::string> known;
  for (const auto& k : keys) known.insert(k.name);
  for (const auto& key : order) {
    if (key != "kind" && !known.count(key)) {
      throw ConfigError(entries[key].line, "unknown key '" + key + "' for kind " + to_string(*kind));
    }
  }
  for (const auto& spec : keys) {
    const auto it = entries.find(spec.name);
    if (it == entries.end()) {
      if (spec.required) throw ConfigError(0, "missing key: " + spec.name);
      cfg.values[spec.name] = spec.default_value;
      continue;
    }
    cfg.values[spec.name] = convert(spec, it->second.value, it->second.line);
    cfg.lines[spec.name] = it->second.line;
  }
  validate_semantics(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gapchannel::harness
