#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gapchannel/time_series.hpp"

namespace gapchannel::harmonic {

/// Periodic harmonic chain of N oscillators with two ancilla oscillators of
/// frequency omega coupled position-position to chain sites mS and mR
/// (1-based). Ja multiplies q_S q_mS, so it carries frequency^2 units.
struct HarmonicModelParams {
  int N = 400;
  double Omega = 1.0;
  double Omega0 = 0.2;
  double omega = 0.5;
  double Ja = 0.05;
  int mS = 1;
  int mR = 10;

  void validate() const;
  /// Shortest distance between the attachment sites on the ring.
  int separation() const;
};

/// Phase-space ordering is (q_1..q_M, p_1..p_M) with M = N + 2; the ancillas
/// are coordinates N (sender) and N+1 (receiver), 0-based.
inline int sender_index(const HarmonicModelParams& p) { return p.N; }
inline int receiver_index(const HarmonicModelParams& p) { return p.N + 1; }

/// H = p^T p / 2 + q^T V q / 2.
struct QuadraticHamiltonian {
  Eigen::MatrixXd V;
  Eigen::Index modes() const { return V.rows(); }
};

/// Throws StabilityError naming the most negative eigenvalue when V is
/// indefinite.
QuadraticHamiltonian potential_matrix(const HarmonicModelParams& params);

/// Symmetrised second moments about the mean, vacuum <q^2> = 1/(2 omega).
struct GaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::Index modes() const { return mean.size() / 2; }
};

/// J = [[0, I], [-I, 0]] in (q, p) ordering.
Eigen::MatrixXd symplectic_form(Eigen::Index modes);

/// Ground-state covariance of the isolated chain (2N x 2N, (q, p) ordering)
/// from the mode sum. Omega0 must be positive.
Eigen::MatrixXd chain_ground_covariance(int N, double Omega, double Omega0);

/// Chain in its ground state, receiver in the vacuum at frequency omega,
/// sender a coherent state with mean occupation nS0.
GaussianState initial_gaussian(const HarmonicModelParams& params, double nS0);

/// Normal-mode decomposition V = O diag(nu^2) O^T used to build exact
/// propagators.
class NormalModes {
 public:
  explicit NormalModes(const QuadraticHamiltonian& h);

  const Eigen::MatrixXd& basis() const { return O_; }
  const Eigen::VectorXd& frequencies() const { return nu_; }

  /// S(t) with x(t) = S(t) x(0) for x = (q, p).
  Eigen::MatrixXd propagator(double t) const;

  /// Row of S(t) giving q_i(t) (first) and p_i(t) (second) as linear forms
  /// of the initial phase-space vector.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> coordinate_rows(Eigen::Index i, double t) const;

 private:
  Eigen::MatrixXd O_;
  Eigen::VectorXd nu_;
};

/// S(t) for the quadratic Hamiltonian; small frequencies use sin(nu t)/nu -> t.
Eigen::MatrixXd symplectic_propagator(const QuadraticHamiltonian& h, double t);

GaussianState evolve_gaussian(const GaussianState& state, const Eigen::MatrixXd& propagator);
GaussianState evolve_gaussian(const GaussianState& state, const QuadraticHamiltonian& h, double t);

/// Mean occupation of oscillator `site` read out at frequency f.
double mode_occupation(const GaussianState& state, Eigen::Index site, double f);

/// Same, from variances and means directly.
double occupation_from_moments(double var_q, double var_p, double mean_q, double mean_p, double f);

/// <H> of a Gaussian state.
double gaussian_energy(const GaussianState& state, const QuadraticHamiltonian& h);

/// Williamson (symplectic) eigenvalues, ascending; all 1/2 for pure states.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// max |S^T J S - J|.
double symplectic_defect(const Eigen::MatrixXd& S);

struct OccupationOptions {
  /// Times at which full symplectic-eigenvalue purity checks are run;
  /// recorded in metadata.
  std::vector<double> purity_check_times;
};

/// n_S(t), n_R(t) and <H> at the requested (sorted) times. Each sample costs
/// O(M^2) via the normal-mode representation of the initial state.
TimeSeries simulate_occupations(const HarmonicModelParams& params, double nS0, const std::vector<double>& times,
                                const OccupationOptions& opts = {});

}  // namespace gapchannel::harmonic
