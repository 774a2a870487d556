#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace gapchannel::oracles {

using RealMatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
using ComplexMatVec = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct LanczosResult {
  Eigen::VectorXd eigenvalues;  // lowest `nev`, ascending
  Eigen::VectorXd ground_vector;
  int iterations = 0;
  bool converged = false;
};

/// Lanczos with full reorthogonalisation for the lowest eigenvalues of a real
/// symmetric operator. Exactly degenerate levels are resolved only once.
LanczosResult lanczos_lowest(const RealMatVec& apply, Eigen::Index dim, int nev, const Eigen::VectorXd& start,
                             double tol = 1e-12, int max_iter = 400);

/// exp(-i H t) v for Hermitian H by Krylov projection with automatic
/// sub-stepping so that the a-posteriori error stays below `tol`.
Eigen::VectorXcd expm_krylov(const ComplexMatVec& apply, const Eigen::VectorXcd& v, double t, double tol = 1e-12,
                             int max_dim = 40);

}  // namespace gapchannel::oracles
