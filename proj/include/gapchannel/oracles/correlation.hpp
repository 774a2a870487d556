#pragma once

#include <complex>

namespace gapchannel::oracles {

/// Ground-state correlation <q_j(tau) q_l(0)> of a periodic harmonic chain of
/// N oscillators at separation d = j - l, as a discrete mode sum over
/// k = 2 pi n / N. Converges to the infinite-chain integral as N grows.
std::complex<double> finite_N_correlation(int N, double Omega, double Omega0, int d, double tau);

}  // namespace gapchannel::oracles
