#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gapchannel/errors.hpp"
#include "gapchannel/master/analytics.hpp"
#include "gapchannel/oracles/correlation.hpp"

using namespace gapchannel;
using namespace gapchannel::master;

TEST_SUITE("master") {
  TEST_CASE("dispersion and band edges") {
    const auto [lo, hi] = band_edges(1.0, 0.2);
    CHECK(lo == doctest::Approx(0.2));
    CHECK(hi == doctest::Approx(std::sqrt(4.04)));
    CHECK(dispersion(1.0, 0.2, std::numbers::pi) == doctest::Approx(hi));
    CHECK(classify_harmonic_regime({1.0, 0.2, 0.5, 9}) == HarmonicRegime::Resonant);
    CHECK(classify_harmonic_regime({1.0, 0.8, 0.5, 3}) == HarmonicRegime::Virtual);
    CHECK(classify_harmonic_regime({1.0, 0.2, 3.0, 3}) == HarmonicRegime::AboveBand);
    CHECK_THROWS_AS(asymptotic_coefficients({1.0, 0.2, 0.2, 3}), VanHoveError);
    CHECK_THROWS_AS(ChannelParams({1.0, 0.0, 0.5, 3}).validate(), ParameterError);
  }

  TEST_CASE("resonant coefficients (frozen values)") {
    const auto c = asymptotic_coefficients({1.0, 0.2, 0.5, 9});
    CHECK(c.regime == HarmonicRegime::Resonant);
    CHECK(c.x0 == doctest::Approx(1.12091001).epsilon(1e-7));
    CHECK(c.x1 == doctest::Approx(-0.58693889).epsilon(1e-7));
    CHECK(std::abs(c.y0) < 1e-9);
    CHECK(c.y1 == doctest::Approx(-0.95495654).epsilon(1e-7));
  }

  TEST_CASE("virtual coefficients (frozen values)") {
    const auto c = asymptotic_coefficients({1.0, 0.8, 0.5, 3});
    CHECK(c.regime == HarmonicRegime::Virtual);
    CHECK(c.x0 == 0.0);
    CHECK(c.x1 == 0.0);
    CHECK(c.y0 == doctest::Approx(-0.76425).epsilon(1e-4));
    CHECK(c.y1 == doctest::Approx(-0.120853).epsilon(1e-4));
  }

  TEST_CASE("finite-time coefficients approach the asymptotic limit") {
    for (const ChannelParams p : {ChannelParams{1.0, 0.2, 0.5, 9}, ChannelParams{1.0, 0.8, 0.5, 3}}) {
      const auto a = asymptotic_coefficients(p);
      const auto pl = plateau_coefficients(p);
      CHECK(pl.coeffs.x0 == doctest::Approx(a.x0).epsilon(2e-3));
      CHECK(pl.coeffs.x1 == doctest::Approx(a.x1).epsilon(2e-3));
      CHECK(pl.coeffs.y0 == doctest::Approx(a.y0).epsilon(2e-3).scale(1.0));
      CHECK(pl.coeffs.y1 == doctest::Approx(a.y1).epsilon(2e-3).scale(1.0));
    }
  }

  TEST_CASE("vacuum correlation matches a large finite ring") {
    for (double tau : {0.0, 3.0, 25.0}) {
      const auto a = vacuum_correlation(1.0, 0.2, 4, tau);
      const auto b = oracles::finite_N_correlation(4000, 1.0, 0.2, 4, tau);
      CHECK(std::abs(a - b) < 1e-8);
    }
  }

  TEST_CASE("C coefficient past the cap is refused") {
    CHECK_THROWS_AS(c_coefficient({1.0, 0.2, 0.5, 9}, Pair::SS, Sign::Plus, 3e5), RegimeError);
  }

  TEST_CASE("occupations conserve the total in the virtual regime") {
    const auto c = asymptotic_coefficients({1.0, 0.8, 0.5, 3});
    for (double t : {0.0, 100.0, 1000.0}) {
      const auto [s, r] = occupations_analytic(c, 0.05, 1.0, 0.0, t);
      CHECK(s + r == doctest::Approx(1.0));
    }
    const auto times = full_transfer_times(c, 0.05, 2);
    REQUIRE(times.size() == 2);
    const auto [s, r] = occupations_analytic(c, 0.05, 1.0, 0.0, times[0]);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(times[1] == doctest::Approx(3.0 * times[0]));
    CHECK_THROWS_AS(full_transfer_times(asymptotic_coefficients({1.0, 0.2, 0.5, 9}), 0.05), RegimeError);
  }

  TEST_CASE("resonant occupations decay") {
    const auto c = asymptotic_coefficients({1.0, 0.2, 0.5, 9});
    const auto [s, r] = occupations_analytic(c, 0.05, 1.0, 0.0, 5000.0);
    CHECK(s < 0.01);
    CHECK(r < 0.01);
  }

  TEST_CASE("oscillation frequency: residue matches quadrature") {
    for (int d : {1, 2, 5, 9, 10}) {
      const auto r = oscillation_frequency_residue({1.0, 0.7, 0.5, d}, 0.05);
      CHECK(r.relative_deviation < 1e-6);
      CHECK(r.branch != "printed");
    }
    const auto r1 = oscillation_frequency_residue({1.0, 0.6, 0.5, 1}, 0.05);
    CHECK(r1.quadrature == doctest::Approx(-0.005345).epsilon(1e-3));
    CHECK_THROWS_AS(oscillation_frequency_quadrature({1.0, 0.4, 0.5, 1}, 0.05), RegimeError);
  }

  TEST_CASE("master_solve output") {
    const auto ts = master_solve({1.0, 0.8, 0.5, 3}, 0.05, 1.0, 0.0, {0.0, 10.0, 20.0});
    CHECK(ts.size() == 3);
    CHECK(ts.column("n_S").front() == doctest::Approx(1.0));
    CHECK(ts.metadata().contains("y0"));
  }
}
