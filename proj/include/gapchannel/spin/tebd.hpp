#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gapchannel/spin/model.hpp"
#include "gapchannel/spin/mpo.hpp"
#include "gapchannel/spin/mps.hpp"
#include "gapchannel/time_series.hpp"

namespace gapchannel::spin {

/// One two-site unitary (or imaginary-time propagator) acting on slots
/// (slot, slot+1).
struct Gate {
  int slot;
  Eigen::Matrix4cd matrix;
  bool is_swap = false;
};

/// Second-order symmetric Trotter step. `half_sweep` applies every bond term
/// for dt/2 in slot order; the full step is half_sweep followed by the same
/// gates in reverse order, so the step is time-symmetric.
struct TrotterScheme {
  int order = 2;
  double dt = 0.05;
  bool imaginary = false;
  std::vector<Gate> half_sweep;
  /// Number of Hamiltonian bond terms covered (chain + ancilla bonds).
  int bond_terms = 0;
};

/// Local two-site Hamiltonians laid out on the slot ordering, with the
/// single-site fields folded into bonds. Bonds whose sites are two slots
/// apart (an ancilla in between) are marked `spanning`.
struct SlotBond {
  int left_slot;
  int right_slot;
  Eigen::Matrix4cd h;  // in |s_left s_right> basis
};
std::vector<SlotBond> slot_bonds(const HamiltonianTerms& terms, const SiteOrdering& ordering);

TrotterScheme make_trotter_scheme(const HamiltonianTerms& terms, const SiteOrdering& ordering, double dt,
                                  bool imaginary = false);

/// Applies one full symmetric step; returns the discarded weight of the step.
double trotter_step(MatrixProductState& psi, const TrotterScheme& scheme, int max_bond);

struct AncillaProbabilities {
  double uu = 0.0;
  double ud = 0.0;
  double du = 0.0;
  double dd = 0.0;
  double sum() const { return uu + ud + du + dd; }
};

struct GroundStateOptions {
  int max_bond = 10;
  double tol = 1e-10;  // per-step energy change
  std::vector<double> dt_schedule{0.1, 0.01, 0.001};
  int check_every = 10;
  int max_steps_per_stage = 200000;
};

struct GroundState {
  MatrixProductState psi;
  double energy = 0.0;
  int steps = 0;
};

/// Chain ground state (ancillas excluded) by imaginary-time evolution.
/// Throws ConvergenceError when a stage exhausts its step budget.
GroundState ground_state_chain(const SpinModelParams& params, const GroundStateOptions& opts = {});

/// Inserts the sender (up) after chain site mS and the receiver (down)
/// after mR; chain tensors are untouched.
MatrixProductState prepare_initial(const MatrixProductState& chain_ground, const SpinModelParams& params);

/// Joint (S, R) populations of an MPS laid out by site_ordering(params).
AncillaProbabilities joint_ancilla_probs(const MatrixProductState& psi, const SpinModelParams& params);

/// <H> with the full Hamiltonian (chain + ancillas).
double total_energy(const MatrixProductState& psi, const SpinModelParams& params);

/// sqrt(<H^2> - <H>^2) of the prepared initial state built from `chain_ground`.
double initial_energy_spread(const MatrixProductState& chain_ground, const SpinModelParams& params);

struct EvolveOptions {
  double dt = 0.05;
  int max_bond = 10;
  double T = 100.0;
  double sample_every = 1.0;
  double discarded_weight_bound = 1e-6;
};

struct SpinSample {
  double t;
  AncillaProbabilities probs;
  double energy;
  double discarded_weight;
};

/// Real-time evolution of a prepared state. Returns columns P_uu, P_ud, P_du,
/// P_dd, energy, discarded_weight; the callback (optional) sees each sample.
TimeSeries evolve_tebd(MatrixProductState psi, const SpinModelParams& params, const EvolveOptions& opts,
                       const std::function<void(const SpinSample&)>& on_sample = {});

enum class SpinRegime { Virtual, Resonant, Marginal };
std::string to_string(SpinRegime r);

struct SpinRegimeReport {
  SpinRegime regime;
  double gap;              // extrapolated one-excitation gap of the chain
  double gap_uncertainty;
  double ancilla_energy;   // 2 Ba
  double window;           // sqrt(2) Ja
  /// True when the verdict would change somewhere inside gap +- uncertainty.
  bool uncertain = false;
};

/// Compares 2 Ba +- sqrt(2) Ja against the chain gap from exact
/// diagonalisation at the given sizes.
SpinRegimeReport classify_spin_regime(const SpinModelParams& params, const std::vector<int>& sizes = {8, 10, 12});

}  // namespace gapchannel::spin
