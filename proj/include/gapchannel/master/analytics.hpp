#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapchannel/time_series.hpp"

namespace gapchannel::master {

/// Infinite harmonic chain seen by two ancillas of frequency omega attached
/// d sites apart.
struct ChannelParams {
  double Omega = 1.0;
  double Omega0 = 0.2;
  double omega = 0.5;
  int d = 9;

  void validate() const;
};

enum class HarmonicRegime { Virtual, Resonant, AboveBand };
std::string to_string(HarmonicRegime r);

/// Distance from a band edge below which coefficients are refused.
inline constexpr double kVanHoveWindow = 1e-6;

/// omega_k = sqrt(4 Omega^2 sin^2(k/2) + Omega0^2).
double dispersion(double Omega, double Omega0, double k);
/// [Omega0, sqrt(4 Omega^2 + Omega0^2)].
std::pair<double, double> band_edges(double Omega, double Omega0);

HarmonicRegime classify_harmonic_regime(const ChannelParams& p);

/// <q_j(tau) q_l(0)> in the infinite-chain ground state, |j - l| = d:
/// (1/2pi) int_0^pi cos(dk) exp(-i omega_k tau) / omega_k dk.
/// Omega0 must be positive (the integral diverges logarithmically otherwise).
std::complex<double> vacuum_correlation(double Omega, double Omega0, int d, double tau);

enum class Pair { SS, SR };
enum class Sign { Plus, Minus };

struct CCoefficientOptions {
  double t_cap = 2.0e5;
  double tol = 1e-10;
};

/// C^{+-}_{kl}(t) = int_0^t ds <q_k(t) q_l(s)> e^{+-i omega (t - s)}.
/// The time integral is done in closed form, leaving one adaptive momentum
/// quadrature. Throws RegimeError beyond t_cap and ConsistencyError when the
/// quadrature cannot reach `tol`.
std::complex<double> c_coefficient(const ChannelParams& p, Pair pair, Sign sign, double t,
                                   const CCoefficientOptions& opts = {});

struct MasterCoefficients {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  HarmonicRegime regime = HarmonicRegime::Virtual;
  std::optional<double> k_star;
  /// Largest quadrature error estimate among the principal-value integrals.
  double quadrature_error = 0.0;
};

/// t -> infinity limits. x from the delta-function part at the resonant
/// momentum, y from principal-value integrals. Throws VanHoveError when omega
/// sits within kVanHoveWindow of a band edge.
MasterCoefficients asymptotic_coefficients(const ChannelParams& p);

/// Same combination built from C^{+-}(t) at finite t.
MasterCoefficients finite_time_coefficients(const ChannelParams& p, double t, const CCoefficientOptions& opts = {});

struct PlateauResult {
  MasterCoefficients coeffs;
  double t = 0.0;
  double relative_change = 0.0;
};

/// Doubles t from t0 until the finite-time coefficients change by less than
/// `rel` over one chain period 2 pi / Omega0. Throws ConsistencyError if
/// t_cap is reached first.
PlateauResult plateau_coefficients(const ChannelParams& p, double t0 = 100.0, double rel = 1e-4,
                                   const CCoefficientOptions& opts = {});

/// (n_S, n_R) at time t.
std::pair<double, double> occupations_analytic(const MasterCoefficients& c, double Ja, double nS0, double nR0,
                                               double t);

/// (2n - 1) pi / (2 Ja^2 |y1|), n = 1..count. Virtual regime only.
std::vector<double> full_transfer_times(const MasterCoefficients& c, double Ja, int count = 1);

/// 2 Ja^2 y1 by adaptive quadrature. Virtual regime only.
double oscillation_frequency_quadrature(const ChannelParams& p, double Ja);

struct ResidueFrequency {
  double frequency = 0.0;
  std::string branch;
  double relative_deviation = 0.0;
  double quadrature = 0.0;
  /// Every candidate tried, in order, with its value.
  std::vector<std::pair<std::string, double>> candidates;
};

/// Closed form of 2 Ja^2 y1 via residues. Candidate branches are tried
/// against the quadrature value; the first within 1e-6 relative is returned,
/// otherwise the closest one. Throws ConsistencyError if none is within 1e-3.
ResidueFrequency oscillation_frequency_residue(const ChannelParams& p, double Ja);

/// n_S, n_R over the given times, coefficient echo in metadata.
TimeSeries master_solve(const ChannelParams& p, double Ja, double nS0, double nR0, const std::vector<double>& times);

}  // namespace gapchannel::master
