#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gapchannel/errors.hpp"
#include "gapchannel/harness/acceptance.hpp"
#include "gapchannel/harness/config.hpp"
#include "gapchannel/harness/csv.hpp"
#include "gapchannel/harness/presets.hpp"
#include "gapchannel/harness/runner.hpp"

using namespace gapchannel;
using namespace gapchannel::harness;

namespace {
int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}
}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config parsing fills defaults") {
    const auto cfg = parse_config("kind = master-solve\n# comment\nOmega = 1\nOmega0 = 0.2\nomega = 0.5\n"
                                  "Ja = 0.05  # inline\nd = 9\nT = 100\n");
    CHECK(cfg.kind == RunKind::MasterSolve);
    CHECK(cfg.real("nS0") == 1.0);
    CHECK(cfg.integer("d") == 9);
    CHECK(cfg.lines.at("Ja") == 6);
    CHECK(cfg.lines.count("nS0") == 0);
  }

  TEST_CASE("config errors carry the offending line") {
    const std::string base = "kind = master-solve\nOmega = 1\nOmega0 = 0.2\nomega = 0.5\nJa = 0.05\nd = 9\nT = 100\n";
    CHECK(error_line(base + "Ja = 0.1\n") == 8);
    CHECK(error_line(base + "chi = 4\n") == 8);
    CHECK(error_line("kind = master-solve\nOmega = abc\n") == 2);
    CHECK(error_line("kind = master-solve\nOmega = 1\nOmega0 = 0.2\nomega = 0.5\nJa = -1\nd = 9\nT = 100\n") == 5);
    CHECK_THROWS_AS(parse_config("Omega = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("kind = nonsense\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("kind = gap-scan\nB = 1\nJx = 0.3\nJy = 0\nJz = 0\nBa = 0.5\nJa = 0.05\nsizes = 8\n"),
                    ConfigError);
  }

  TEST_CASE("semantic errors from the models surface as config errors") {
    const auto text = "kind = spin-evolve\nN = 10\nB = 1\nJx = 0.3\nJy = 0\nJz = 0\nBa = 0.5\nJa = 0.05\n"
                      "mS = 4\nmR = 4\nT = 10\n";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }

  TEST_CASE("number formatting and CSV layout") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    Table t;
    t.metadata = {{"a", 1}};
    t.columns = {"x", "y"};
    t.add_row({1.5, std::string("z")});
    CHECK(format_csv(t) == "# {\"a\":1}\nx,y\n1.5,z\n");
  }

  TEST_CASE("atomic CSV write replaces the target") {
    const auto dir = std::filesystem::temp_directory_path() / "gapchannel_csv_test";
    std::filesystem::remove_all(dir);
    Table t;
    t.columns = {"x"};
    t.add_row({2.0});
    write_csv_atomic(t, dir / "out.csv");
    write_csv_atomic(t, dir / "out.csv");
    std::ifstream in(dir / "out.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == format_csv(t));
    int files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("presets parse and are deterministic") {
    for (const auto& name : preset_names()) {
      for (bool desk : {false, true}) {
        const auto runs = preset_runs(name, desk);
        REQUIRE(!runs.empty());
        for (const auto& r : runs) CHECK_NOTHROW(parse_config(r.config));
      }
    }
    CHECK_THROWS_AS(preset_runs("fig99", false), ConfigError);
  }

  TEST_CASE("master-solve run is deterministic and echoes parameters") {
    const auto cfg = parse_config("kind = master-solve\nOmega = 1\nOmega0 = 0.8\nomega = 0.5\nJa = 0.05\nd = 3\nT = 50\n");
    const auto a = format_csv(run_experiment(cfg));
    const auto b = format_csv(run_experiment(cfg));
    CHECK(a == b);
    const auto t = run_experiment(cfg);
    CHECK(t.metadata.at("params").at("nS0") == 1.0);
    CHECK(t.metadata.contains("code_version"));
    CHECK(t.metadata.contains("full_transfer_times"));
  }

  TEST_CASE("desk mode shrinks and records spin runs") {
    const auto cfg = parse_config("kind = spin-evolve\nN = 300\nB = 1\nJx = 0.3\nJy = 0\nJz = 0\nBa = 0.8\nJa = 0.05\n"
                                  "mS = 145\nmR = 155\nT = 2\n");
    const auto t = run_experiment(cfg, true);
    CHECK(t.metadata.at("params").at("N") == 100);
    CHECK(t.metadata.at("desk_reduced_from").at("N") == 300);
  }

  TEST_CASE("exit codes by error type") {
    CHECK(exit_code_for(ConfigError(3, "x")) == kConfigError);
    CHECK(exit_code_for(ParameterError("x")) == kConfigError);
    CHECK(exit_code_for(StabilityError("x", -1.0)) == kNumericalError);
    CHECK(exit_code_for(RegimeError("x")) == kNumericalError);
    CHECK(exit_code_for(std::runtime_error("x")) == kInternalError);
  }

  TEST_CASE("cheap acceptance criteria pass") {
    AcceptanceOptions o;
    o.criteria = {3, 8};
    for (const auto& r : run_acceptance(o)) CHECK_MESSAGE(r.pass(), format_result_line(r));
  }
}

TEST_SUITE("degradation") {
  TEST_CASE("bond dimension 2 breaks agreement with exact evolution") {
    AcceptanceOptions o;
    o.chi = 2;
    o.criteria = {6};
    const auto r = run_acceptance(o);
    CHECK_FALSE(r.front().pass());
  }

  TEST_CASE("doubling the time step quadruples the Trotter drift") {
    const double a = trotter_energy_drift(0.05);
    const double b = trotter_energy_drift(0.1);
    CHECK(b / a > 3.0);
    CHECK(b / a < 5.0);
  }
}
