// Command-line front end: run one experiment from a config file, regenerate
// a preset figure, or run the acceptance suite.

#include <exception>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "gapchannel/errors.hpp"
#include "gapchannel/harness/acceptance.hpp"
#include "gapchannel/harness/config.hpp"
#include "gapchannel/harness/csv.hpp"
#include "gapchannel/harness/presets.hpp"
#include "gapchannel/harness/runner.hpp"

namespace fs = std::filesystem;
using namespace gapchannel;
using namespace gapchannel::harness;

namespace {

void emit(const Table& table, const std::string& out) {
  if (out.empty())
    std::cout << format_csv(table);
  else
    write_csv_atomic(table, out);
}

int run_verify(const RunConfig* cfg, AcceptanceOptions opts, const std::string& out) {
  if (cfg) {
    opts.chi = cfg->integer("chi");
    opts.dt_scale = cfg->real("dt_scale");
    opts.criteria = cfg->integers("criteria");
  }
  opts.log = &std::cout;
  const auto results = run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) failed += r.pass() ? 0 : 1;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  if (!out.empty()) write_csv_atomic(results_table(results, opts), out);
  return failed ? kVerifyFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap-protected quantum channel simulations"};
  app.require_subcommand(1);

  std::string config_path, out;
  bool desk = false;
  for (const auto& name : kind_names()) {
    if (name == "verify") continue;
    auto* sub = app.add_subcommand(name, "Run a " + name + " experiment");
    sub->add_option("--config", config_path, "Config file (key = value)")->required();
    sub->add_flag("--desk", desk, "Reduced sizes for a desktop machine");
    sub->add_option("--out", out, "Output CSV (stdout when omitted)");
  }

  std::string preset_name, out_dir = "results";
  auto* preset = app.add_subcommand("preset", "Regenerate the data behind a figure");
  preset->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
  preset->add_flag("--desk", desk, "Reduced sizes for a desktop machine");
  preset->add_option("--out-dir", out_dir, "Directory for the CSV files");

  AcceptanceOptions vopts;
  std::string verify_config;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--config", verify_config, "Optional verify config");
  verify->add_option("--chi", vopts.chi, "Bond dimension for the MPS criteria");
  verify->add_option("--criteria", vopts.criteria, "Subset of criteria to run")->delimiter(',');
  verify->add_option("--out", out, "Write a report CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*preset) {
      for (const auto& run : preset_runs(preset_name, desk)) {
        const auto cfg = parse_config(run.config);
        Table table = run_experiment(cfg, desk);
        table.metadata["preset"] = preset_name;
        for (const auto& [k, v] : run.notes.items()) table.metadata[k] = v;
        const fs::path path = fs::path(out_dir) / (run.stem + (desk ? "_desk" : "") + ".csv");
        write_csv_atomic(table, path);
        std::cout << "wrote " << path.string() << std::endl;
      }
      return kOk;
    }
    if (*verify) {
      if (verify_config.empty()) return run_verify(nullptr, vopts, out);
      const auto cfg = load_config(verify_config);
      if (cfg.kind != RunKind::Verify) throw ConfigError(0, "config kind is " + to_string(cfg.kind) + ", expected verify");
      return run_verify(&cfg, vopts, out);
    }
    const std::string kind = app.get_subcommands().front()->get_name();
    const auto cfg = load_config(config_path);
    if (to_string(cfg.kind) != kind) throw ConfigError(0, "config kind is " + to_string(cfg.kind) + ", expected " + kind);
    emit(run_experiment(cfg, desk), out);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "gapchannel: " << e.what() << std::endl;
    return exit_code_for(e);
  }
}
