#include <doctest.h>

#include <cmath>

#include "gapchannel/errors.hpp"
#include "gapchannel/oracles/dense_spin.hpp"
#include "gapchannel/spin/mpo.hpp"
#include "gapchannel/spin/tebd.hpp"

using namespace gapchannel;
using namespace gapchannel::spin;

namespace {
double max_dev(const TimeSeries& a, const TimeSeries& b, const char* col) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.column(col)[i] - b.column(col)[i]));
  return m;
}
}  // namespace

TEST_SUITE("spin") {
  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SpinModelParams({6, 1.0, 0.3, 0.0, 0.0, 0.5, 0.05, 4, 4}).validate(), ParameterError);
    CHECK_THROWS_AS(SpinModelParams({6, 1.0, 0.3, 0.0, 0.0, 0.5, 0.05, 0, 4}).validate(), ParameterError);
    CHECK_THROWS_AS(SpinModelParams({6, 1.0, 0.3, 0.0, 0.0, 0.5, -0.05, 1, 4}).validate(), ParameterError);
    CHECK_NOTHROW(SpinModelParams({6, 1.0, 0.3, 0.0, 0.0, 0.5, 0.05, 1, 4}).validate());
  }

  TEST_CASE("site ordering places each ancilla next to its chain site") {
    const SpinModelParams p{10, 1.0, 0.3, 0.0, 0.0, 0.5, 0.05, 4, 6};
    const auto ord = site_ordering(p);
    CHECK(ord.size() == 12);
    CHECK(std::abs(ord.slot_of(sender_site(p)) - ord.slot_of(p.mS - 1)) == 1);
    CHECK(std::abs(ord.slot_of(receiver_site(p)) - ord.slot_of(p.mR - 1)) == 1);
  }

  TEST_CASE("MPO energy equals the dense energy") {
    const SpinModelParams p{6, 1.0, 0.5, 0.2, 0.1, 0.3, 0.07, 2, 5};
    const auto gs = ground_state_chain(p, {.max_bond = 16});
    const auto psi = prepare_initial(gs.psi, p);
    const oracles::DenseSpinSystem sys(build_hamiltonian_terms(p));
    const auto ed = oracles::ed_initial_state(p);
    CHECK(total_energy(psi, p) == doctest::Approx(sys.energy(ed)).epsilon(1e-8));
    const auto probs = joint_ancilla_probs(psi, p);
    CHECK(probs.sum() == doctest::Approx(1.0));
    CHECK(probs.ud == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("imaginary-time ground state agrees with Lanczos") {
    const SpinModelParams p{10, 1.0, 0.3, 0.0, 0.0, 0.64, 0.05, 4, 6};
    const auto gs = ground_state_chain(p, {.max_bond = 32});
    CHECK(gs.energy == doctest::Approx(oracles::ed_chain_ground_state(p).energy).epsilon(1e-8));
  }

  TEST_CASE("initial energy spread from the MPS is sqrt(2) Ja") {
    const SpinModelParams p{12, 1.0, 0.3, 0.0, 0.0, 0.64, 0.08, 4, 8};
    const auto gs = ground_state_chain(p);
    CHECK(initial_energy_spread(gs.psi, p) == doctest::Approx(std::sqrt(2.0) * 0.08).epsilon(1e-6));
  }

  TEST_CASE("TEBD follows exact evolution on a small system") {
    const SpinModelParams p{8, 1.0, 0.5, 0.2, 0.1, 0.3, 0.1, 3, 6};
    const auto gs = ground_state_chain(p, {.max_bond = 32});
    const auto ts = evolve_tebd(prepare_initial(gs.psi, p), p, {.dt = 0.02, .max_bond = 32, .T = 10.0});
    const auto ed = oracles::ed_spin_evolve(p, 1.0, 10.0);
    REQUIRE(ts.size() == ed.size());
    for (const char* c : {"P_uu", "P_ud", "P_du", "P_dd"}) CHECK(max_dev(ts, ed, c) < 1e-4);
  }

  TEST_CASE("truncation is tracked") {
    const SpinModelParams p{20, 1.0, 0.5, 0.2, 0.1, 0.04, 0.3, 5, 15};
    const auto gs = ground_state_chain(p, {.max_bond = 4});
    const auto ts = evolve_tebd(prepare_initial(gs.psi, p), p, {.dt = 0.05, .max_bond = 2, .T = 5.0});
    CHECK(ts.column("discarded_weight").back() > 0.0);
  }

  TEST_CASE("regime classification") {
    CHECK(classify_spin_regime({100, 1.0, 0.3, 0.0, 0.0, 0.8, 0.05, 45, 55}).regime == SpinRegime::Resonant);
    CHECK(classify_spin_regime({100, 1.0, 0.3, 0.0, 0.0, 0.4, 0.05, 45, 55}).regime == SpinRegime::Virtual);
  }
}
