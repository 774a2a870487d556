#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gapchannel/spin/model.hpp"
#include "gapchannel/spin/tebd.hpp"
#include "gapchannel/time_series.hpp"

namespace gapchannel::oracles {

/// Hard cap on the number of spins handled by exact diagonalisation.
inline constexpr int kMaxDenseSpins = 14;

/// Full Hilbert-space spin Hamiltonian applied matrix-free. Physical site i
/// maps to bit (num_sites - 1 - i) of the basis index, bit value 0 = up.
class DenseSpinSystem {
 public:
  explicit DenseSpinSystem(const spin::HamiltonianTerms& terms);

  int num_sites() const { return num_sites_; }
  Eigen::Index dimension() const { return Eigen::Index{1} << num_sites_; }

  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

  /// Explicit matrix; limited to 12 sites.
  Eigen::MatrixXd matrix() const;

  double energy(const Eigen::VectorXcd& psi) const;
  /// <H^2> - <H>^2 for a normalised state.
  double energy_variance(const Eigen::VectorXcd& psi) const;

 private:
  struct Flip {
    Eigen::Index mask;
    int bit_a;
    int bit_b;
    double jx;
    double jy;
  };
  int num_sites_ = 0;
  Eigen::VectorXd diag_;
  std::vector<Flip> flips_;
};

/// H built directly from Kronecker products of Pauli matrices for the chain
/// plus ancillas (sites ordered 1..N, S, R). At most 12 spins.
Eigen::MatrixXd direct_dense_hamiltonian(const spin::SpinModelParams& params);

struct EdGroundState {
  double energy;
  double first_excited;
  Eigen::VectorXd vector;
};

/// Lowest two levels of the chain alone (ancillas excluded).
EdGroundState ed_chain_ground_state(const spin::SpinModelParams& params);

/// Chain ground state with the sender up and receiver down.
Eigen::VectorXcd ed_initial_state(const spin::SpinModelParams& params);

spin::AncillaProbabilities dense_ancilla_probs(const Eigen::VectorXcd& psi, const spin::SpinModelParams& params);

/// Exact propagation of the prepared initial state, sampled every `dt` up to
/// T. Columns match evolve_tebd: P_uu, P_ud, P_du, P_dd, energy.
TimeSeries ed_spin_evolve(const spin::SpinModelParams& params, double dt, double T);

/// Same as above from an arbitrary initial vector.
TimeSeries ed_spin_evolve_from(const spin::SpinModelParams& params, Eigen::VectorXcd psi, double dt, double T);

}  // namespace gapchannel::oracles
