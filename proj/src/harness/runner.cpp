#include "gapchannel/harness/runner.hpp"

#include <algorithm>
#include <cmath>

#include "gapchannel/errors.hpp"
#include "gapchannel/oracles/dense_spin.hpp"
#include "gapchannel/oracles/gap.hpp"
#include "gapchannel/spin/tebd.hpp"

#ifndef GAPCHANNEL_VERSION
#define GAPCHANNEL_VERSION "unknown"
#endif

namespace gapchannel::harness {

namespace {

using nlohmann::json;

std::vector<double> sample_times(double T, double step) {
  std::vector<double> ts;
  const long n = std::lround(std::floor(T / step + 1e-9));
  for (long i = 0; i <= n; ++i) ts.push_back(static_cast<double>(i) * step);
  return ts;
}

json regime_json(const spin::SpinRegimeReport& r) {
  return {{"regime", spin::to_string(r.regime)}, {"gap", r.gap},           {"gap_uncertainty", r.gap_uncertainty},
          {"ancilla_energy", r.ancilla_energy},  {"window", r.window},      {"uncertain", r.uncertain}};
}

Table run_spin(RunConfig cfg, bool desk, json& desk_notes) {
  if (desk) {
    const int N = cfg.integer("N");
    if (N > 100) {
      // Keep the separation and centre the pair.
      const int sep = cfg.integer("mR") - cfg.integer("mS");
      const int mS = std::max(1, (100 - sep) / 2);
      cfg.values["N"] = 100;
      cfg.values["mS"] = mS;
      cfg.values["mR"] = std::min(100, mS + sep);
      desk_notes["N"] = N;
    }
    if (cfg.real("T") > 1000.0) {
      desk_notes["T"] = cfg.real("T");
      cfg.values["T"] = 1000.0;
    }
  }
  const spin::SpinModelParams p = spin_params(cfg);
  Table table;
  if (cfg.text("engine") == "ed") {
    table = to_table(oracles::ed_spin_evolve(p, cfg.real("sample_every"), cfg.real("T")));
  } else {
    spin::GroundStateOptions go;
    go.max_bond = cfg.integer("chi");
    const spin::GroundState gs = spin::ground_state_chain(p, go);
    spin::EvolveOptions eo;
    eo.dt = cfg.real("dt");
    eo.max_bond = cfg.integer("chi");
    eo.T = cfg.real("T");
    eo.sample_every = cfg.real("sample_every");
    eo.discarded_weight_bound = cfg.real("discarded_weight_bound");
    table = to_table(spin::evolve_tebd(spin::prepare_initial(gs.psi, p), p, eo));
    table.metadata["chain_ground_energy"] = gs.energy;
    table.metadata["ground_state_steps"] = gs.steps;
    table.metadata["ground_state_dt_schedule"] = go.dt_schedule;
    table.metadata["ground_state_tol"] = go.tol;
  }
  table.metadata["regime_classification"] = regime_json(spin::classify_spin_regime(p));
  table.metadata["params"] = cfg.values;
  return table;
}

Table run_harmonic(RunConfig cfg, bool desk, json& desk_notes) {
  if (desk && cfg.integer("N") > 400) {
    desk_notes["N"] = cfg.integer("N");
    cfg.values["N"] = 400;
  }
  const harmonic::HarmonicModelParams p = harmonic_params(cfg);
  const double T = cfg.real("T");
  harmonic::OccupationOptions opts;
  opts.purity_check_times = p.N > 800 ? std::vector<double>{T} : std::vector<double>{0.5 * T, T};
  Table table = to_table(harmonic::simulate_occupations(p, cfg.real("nS0"), sample_times(T, cfg.real("sample_every")), opts));
  const master::ChannelParams cp{p.Omega, p.Omega0, p.omega, p.separation()};
  table.metadata["regime"] = master::to_string(master::classify_harmonic_regime(cp));
  table.metadata["separation"] = p.separation();
  // Ring recurrence: fastest group velocity is Omega, so signals wrap after N / Omega.
  table.metadata["recurrence_time_estimate"] = p.N / p.Omega;
  table.metadata["params"] = cfg.values;
  return table;
}

json coefficient_json(const master::MasterCoefficients& c) {
  json j = {{"x0", c.x0}, {"x1", c.x1}, {"y0", c.y0}, {"y1", c.y1}, {"regime", master::to_string(c.regime)},
            {"quadrature_error", c.quadrature_error}};
  if (c.k_star) j["k_star"] = *c.k_star;
  return j;
}

Table run_master(const RunConfig& cfg) {
  const master::ChannelParams p = channel_params(cfg);
  const double Ja = cfg.real("Ja");
  Table table = to_table(
      master::master_solve(p, Ja, cfg.real("nS0"), cfg.real("nR0"), sample_times(cfg.real("T"), cfg.real("sample_every"))));
  const master::MasterCoefficients c = master::asymptotic_coefficients(p);
  table.metadata["coefficients"] = coefficient_json(c);
  if (c.regime == master::HarmonicRegime::Virtual && Ja > 0.0) {
    table.metadata["full_transfer_times"] = master::full_transfer_times(c, Ja, 3);
    if (p.d > 0) {
      const auto r = master::oscillation_frequency_residue(p, Ja);
      table.metadata["frequency"] = {{"quadrature", r.quadrature},
                                     {"residue", r.frequency},
                                     {"residue_branch", r.branch},
                                     {"relative_deviation", r.relative_deviation}};
    }
  }
  table.metadata["params"] = cfg.values;
  return table;
}

Table run_scan(const RunConfig& cfg) {
  Table table;
  table.columns = {"omega", "d", "Omega0", "freq", "freq_residue", "branch", "relative_deviation"};
  const double Ja = cfg.real("Ja");
  const int steps = cfg.integer("Omega0_steps");
  const double lo = cfg.real("Omega0_min");
  const double hi = cfg.real("Omega0_max");
  json branches = json::object();
  for (double w : cfg.reals("omega")) {
    for (int d = cfg.integer("d_min"); d <= cfg.integer("d_max"); ++d) {
      for (int i = 0; i < steps; ++i) {
        const double O0 = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
        const master::ChannelParams p{cfg.real("Omega"), O0, w, d};
        const auto r = master::oscillation_frequency_residue(p, Ja);
        table.add_row({w, static_cast<long long>(d), O0, r.quadrature, r.frequency, r.branch, r.relative_deviation});
        branches[r.branch] = branches.value(r.branch, 0) + 1;
      }
    }
  }
  table.metadata["residue_branch_counts"] = branches;
  table.metadata["params"] = cfg.values;
  return table;
}

Table run_gap(const RunConfig& cfg) {
  spin::SpinModelParams p;
  p.B = cfg.real("B");
  p.Jx = cfg.real("Jx");
  p.Jy = cfg.real("Jy");
  p.Jz = cfg.real("Jz");
  p.Ba = cfg.real("Ba");
  p.Ja = cfg.real("Ja");
  Table table;
  table.columns = {"N", "E0", "E1", "gap"};
  for (int n : cfg.integers("sizes")) {
    p.N = n;
    p.mS = 1;
    p.mR = n;
    const auto gs = oracles::ed_chain_ground_state(p);
    table.add_row({static_cast<long long>(n), gs.energy, gs.first_excited, gs.first_excited - gs.energy});
  }
  const auto est = oracles::finite_chain_gap(p, cfg.integers("sizes"));
  table.metadata["extrapolated_gap"] = est.gap;
  table.metadata["gap_uncertainty"] = est.uncertainty;
  table.metadata["monotone"] = est.monotone;
  table.metadata["extrapolation"] = "least squares in 1/N^2";
  if (est.free_fermion) table.metadata["free_fermion_gap"] = *est.free_fermion;
  table.metadata["regime_classification"] = regime_json(spin::classify_spin_regime(p, cfg.integers("sizes")));
  table.metadata["params"] = cfg.values;
  return table;
}

}  // namespace

std::string code_version() { return GAPCHANNEL_VERSION; }

spin::SpinModelParams spin_params(const RunConfig& cfg) {
  spin::SpinModelParams p{cfg.integer("N"), cfg.real("B"),  cfg.real("Jx"), cfg.real("Jy"),    cfg.real("Jz"),
                          cfg.real("Ba"),   cfg.real("Ja"), cfg.integer("mS"), cfg.integer("mR")};
  p.validate();
  return p;
}

harmonic::HarmonicModelParams harmonic_params(const RunConfig& cfg) {
  harmonic::HarmonicModelParams p{cfg.integer("N"), cfg.real("Omega"), cfg.real("Omega0"), cfg.real("omega"),
                                  cfg.real("Ja"),   cfg.integer("mS"),  cfg.integer("mR")};
  p.validate();
  return p;
}

master::ChannelParams channel_params(const RunConfig& cfg) {
  master::ChannelParams p{cfg.real("Omega"), cfg.real("Omega0"), cfg.real("omega"), cfg.integer("d")};
  p.validate();
  return p;
}

Table run_experiment(const RunConfig& cfg, bool desk) {
  json desk_notes = json::object();
  Table table;
  switch (cfg.kind) {
    case RunKind::SpinEvolve: table = run_spin(cfg, desk, desk_notes); break;
    case RunKind::HarmonicEvolve: table = run_harmonic(cfg, desk, desk_notes); break;
    case RunKind::MasterSolve: table = run_master(cfg); break;
    case RunKind::FrequencyScan: table = run_scan(cfg); break;
    case RunKind::GapScan: table = run_gap(cfg); break;
    case RunKind::Verify: throw ConfigError(0, "verify runs through the acceptance suite, not run_experiment");
  }
  table.metadata["kind"] = to_string(cfg.kind);
  table.metadata["code_version"] = code_version();
  table.metadata["desk"] = desk;
  if (!desk_notes.empty()) table.metadata["desk_reduced_from"] = desk_notes;
  return table;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e) ||
      dynamic_cast<const SizeCapError*>(&e))
    return kConfigError;
  if (dynamic_cast<const StabilityError*>(&e) || dynamic_cast<const ConvergenceError*>(&e) ||
      dynamic_cast<const ConsistencyError*>(&e) || dynamic_cast<const RegimeError*>(&e))
    return kNumericalError;
  return kInternalError;
}

}  // namespace gapchannel::harness
