#include <doctest.h>

#include <cmath>

#include "gapchannel/oracles/correlation.hpp"
#include "gapchannel/oracles/dense_spin.hpp"
#include "gapchannel/oracles/gap.hpp"
#include "gapchannel/oracles/krylov.hpp"

using namespace gapchannel;

TEST_SUITE("oracles") {
  TEST_CASE("matrix-free Hamiltonian equals the Kronecker-product build") {
    const spin::SpinModelParams p{6, 1.0, 0.5, 0.2, 0.1, 0.3, 0.07, 1, 4};
    const oracles::DenseSpinSystem sys(spin::build_hamiltonian_terms(p));
    const Eigen::MatrixXd a = sys.matrix();
    const Eigen::MatrixXd b = oracles::direct_dense_hamiltonian(p);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("Lanczos agrees with dense diagonalisation") {
    const spin::SpinModelParams p{8, 1.0, 0.3, 0.0, 0.0, 0.64, 0.0, 2, 5};
    const auto gs = oracles::ed_chain_ground_state(p);
    const Eigen::MatrixXd h = oracles::direct_dense_hamiltonian(p.chain_only());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(gs.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
  }

  TEST_CASE("Krylov exponential matches the dense exponential") {
    Eigen::MatrixXd h = Eigen::MatrixXd::Random(30, 30);
    h = (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(30).normalized();
    const Eigen::VectorXcd phase =
        (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0.0, -0.7)).array().exp();
    const Eigen::VectorXcd exact = es.eigenvectors() * (phase.asDiagonal() * (es.eigenvectors().transpose() * v));
    const auto apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = h * x; };
    const Eigen::VectorXcd k = oracles::expm_krylov(apply, v, 0.7);
    CHECK((k - exact).norm() < 1e-9);
  }

  TEST_CASE("initial energy variance is 2 Ja^2") {
    for (double ja : {0.02, 0.1}) {
      const spin::SpinModelParams p{8, 1.0, 0.3, 0.0, 0.0, 0.64, ja, 3, 6};
      const oracles::DenseSpinSystem sys(spin::build_hamiltonian_terms(p));
      CHECK(sys.energy_variance(oracles::ed_initial_state(p)) == doctest::Approx(2.0 * ja * ja).epsilon(1e-9));
    }
  }

  TEST_CASE("gap of the transverse-field Ising chain matches free fermions") {
    const spin::SpinModelParams p{12, 1.0, 0.3, 0.0, 0.0, 0.0, 0.0, 1, 2};
    const auto g = oracles::finite_chain_gap(p);
    REQUIRE(g.free_fermion.has_value());
    CHECK(g.gap == doctest::Approx(*g.free_fermion).epsilon(5e-3));
  }

  TEST_CASE("finite ring correlation at zero separation and delay") {
    const auto c = oracles::finite_N_correlation(200, 1.0, 0.5, 0, 0.0);
    CHECK(std::abs(c.imag()) < 1e-14);
    CHECK(c.real() > 0.0);
  }
}
