#include <doctest.h>

#include <cmath>

#include "gapchannel/errors.hpp"
#include "gapchannel/harmonic/gaussian.hpp"

using namespace gapchannel;
using namespace gapchannel::harmonic;

TEST_SUITE("harmonic") {
  TEST_CASE("potential matrix structure") {
    const HarmonicModelParams p{8, 1.0, 0.2, 0.5, 0.05, 1, 4};
    const auto h = potential_matrix(p);
    CHECK(h.modes() == 10);
    CHECK(h.V(0, 0) == doctest::Approx(2.04));
    CHECK(h.V(0, 7) == doctest::Approx(-1.0));
    CHECK(h.V(sender_index(p), sender_index(p)) == doctest::Approx(0.25));
    CHECK(h.V(sender_index(p), 0) == doctest::Approx(0.05));
    CHECK(h.V(receiver_index(p), 3) == doctest::Approx(0.05));
    CHECK((h.V - h.V.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("unbounded Hamiltonian is rejected") {
    CHECK_THROWS_AS(potential_matrix({20, 1.0, 0.2, 0.1, 0.5, 1, 5}), StabilityError);
  }

  TEST_CASE("ring separation is the shorter arc") {
    CHECK(HarmonicModelParams({20, 1.0, 0.2, 0.5, 0.05, 1, 18}).separation() == 3);
    CHECK(HarmonicModelParams({20, 1.0, 0.2, 0.5, 0.05, 1, 10}).separation() == 9);
  }

  TEST_CASE("chain ground state is pure and stationary") {
    const int N = 16;
    const Eigen::MatrixXd cov = chain_ground_covariance(N, 1.0, 0.3);
    const auto nu = symplectic_eigenvalues(cov);
    CHECK((nu.array() - 0.5).abs().maxCoeff() < 1e-10);
    const HarmonicModelParams p{N, 1.0, 0.3, 0.5, 0.0, 1, 4};
    const auto g = initial_gaussian(p, 0.0);
    const auto later = evolve_gaussian(g, potential_matrix(p), 7.3);
    CHECK((later.cov - g.cov).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(chain_ground_covariance(N, 1.0, 0.0), ParameterError);
  }

  TEST_CASE("propagator is symplectic and composes") {
    const HarmonicModelParams p{12, 1.0, 0.2, 0.5, 0.1, 2, 7};
    const auto h = potential_matrix(p);
    const Eigen::MatrixXd s1 = symplectic_propagator(h, 1.3);
    const Eigen::MatrixXd s2 = symplectic_propagator(h, 2.6);
    CHECK(symplectic_defect(s1) < 1e-12);
    CHECK((s1 * s1 - s2).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("coherent sender occupation and energy") {
    const HarmonicModelParams p{12, 1.0, 0.2, 0.5, 0.05, 1, 5};
    const auto g = initial_gaussian(p, 0.7);
    CHECK(mode_occupation(g, sender_index(p), p.omega) == doctest::Approx(0.7));
    CHECK(std::abs(mode_occupation(g, receiver_index(p), p.omega)) < 1e-14);
    CHECK(occupation_from_moments(1.0, 0.25, 0.0, 0.0, 0.5) == doctest::Approx(0.0));
    const auto h = potential_matrix(p);
    const auto g2 = evolve_gaussian(g, h, 5.0);
    CHECK(gaussian_energy(g2, h) == doctest::Approx(gaussian_energy(g, h)).epsilon(1e-12));
  }

  TEST_CASE("normal-mode occupations agree with full covariance evolution") {
    const HarmonicModelParams p{30, 1.0, 0.2, 0.5, 0.05, 1, 6};
    OccupationOptions o;
    o.purity_check_times = {20.0};
    const auto ts = simulate_occupations(p, 1.0, {0.0, 10.0, 20.0}, o);
    const auto h = potential_matrix(p);
    const auto g = evolve_gaussian(initial_gaussian(p, 1.0), h, 20.0);
    CHECK(ts.column("n_S")[2] == doctest::Approx(mode_occupation(g, sender_index(p), p.omega)).epsilon(1e-10));
    CHECK(ts.column("n_R")[2] == doctest::Approx(mode_occupation(g, receiver_index(p), p.omega)).epsilon(1e-10));
    CHECK(ts.column("energy")[2] == doctest::Approx(ts.column("energy")[0]).epsilon(1e-12));
    CHECK(ts.metadata().at("max_purity_deviation").get<double>() < 1e-8);
    CHECK(ts.metadata().at("max_symplectic_defect").get<double>() < 1e-10);
  }
}
