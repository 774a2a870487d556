#include "gapchannel/oracles/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapchannel::oracles {

namespace {

Eigen::MatrixXd tridiagonal(const std::vector<double>& alpha, const std::vector<double>& beta, int m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
  }
  return t;
}

}  // namespace

LanczosResult lanczos_lowest(const RealMatVec& apply, Eigen::Index dim, int nev, const Eigen::VectorXd& start,
                             double tol, int max_iter) {
  if (start.size() != dim || start.norm() == 0.0) throw std::invalid_argument("lanczos_lowest: bad start vector");
  max_iter = static_cast<int>(std::min<Eigen::Index>(max_iter, dim));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.push_back(start.normalized());
  Eigen::VectorXd w(dim);

  LanczosResult res;
  Eigen::VectorXd prev_evals;
  for (int j = 0; j < max_iter; ++j) {
    apply(basis.back(), w);
    const double a = basis.back().dot(w);
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double b = w.norm();
    const int m = j + 1;
    const bool exhausted = b < 1e-13 * std::max(1.0, std::abs(a)) || m == max_iter;
    if ((m >= nev && m % 5 == 0) || exhausted) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(alpha, beta, m));
      const int k = std::min(nev, m);
      bool ok = true;
      for (int i = 0; i < k; ++i) {
        if (b * std::abs(es.eigenvectors()(m - 1, i)) > tol * std::max(1.0, std::abs(es.eigenvalues()(i)))) ok = false;
      }
      if (ok || exhausted) {
        res.eigenvalues = es.eigenvalues().head(k);
        res.ground_vector = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < m; ++i) res.ground_vector += es.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
        res.ground_vector.normalize();
        res.iterations = m;
        res.converged = ok;
        return res;
      }
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return res;
}

Eigen::VectorXcd expm_krylov(const ComplexMatVec& apply, const Eigen::VectorXcd& v, double t, double tol,
                             int max_dim) {
  const double nrm = v.norm();
  if (nrm == 0.0 || t == 0.0) return v;
  const Eigen::Index dim = v.size();
  max_dim = static_cast<int>(std::min<Eigen::Index>(max_dim, dim));

  std::vector<Eigen::VectorXcd> basis{v / nrm};
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXcd w(dim);
  for (int j = 0; j < max_dim; ++j) {
    apply(basis.back(), w);
    const double a = basis.back().dot(w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double b = w.norm();
    const int m = j + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(alpha, beta, m));
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0.0, -t)).array().exp();
    const Eigen::VectorXcd coeffs =
        es.eigenvectors().cast<std::complex<double>>() *
        (phases.array() * es.eigenvectors().row(0).transpose().cast<std::complex<double>>().array()).matrix();
    const double err = b * std::abs(coeffs(m - 1)) * nrm;
    if (err < tol || b < 1e-14 || m == dim) {
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
      for (int i = 0; i < m; ++i) out += coeffs(i) * basis[static_cast<std::size_t>(i)];
      return out * nrm;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  // Subspace too small for this step: split it.
  const Eigen::VectorXcd half = expm_krylov(apply, v, 0.5 * t, 0.5 * tol, max_dim);
  return expm_krylov(apply, half, 0.5 * t, 0.5 * tol, max_dim);
}

}  // namespace gapchannel::oracles
