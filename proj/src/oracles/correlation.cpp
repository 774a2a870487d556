#include "gapchannel/oracles/correlation.hpp"

#include <cmath>
#include <numbers>

#include "gapchannel/errors.hpp"

namespace gapchannel::oracles {

std::complex<double> finite_N_correlation(int N, double Omega, double Omega0, int d, double tau) {
  if (N < 3) throw ParameterError("finite_N_correlation: N must be >= 3");
  if (Omega0 <= 0.0) throw ParameterError("finite_N_correlation: Omega0 = 0 leaves an undamped zero mode");
  std::complex<double> acc = 0.0;
  for (int n = 0; n < N; ++n) {
    const double k = 2.0 * std::numbers::pi * n / N;
    const double s = std::sin(0.5 * k);
    const double wk = std::sqrt(4.0 * Omega * Omega * s * s + Omega0 * Omega0);
    acc += std::cos(k * d) * std::exp(std::complex<double>(0.0, -wk * tau)) / (2.0 * wk);
  }
  return acc / static_cast<double>(N);
}

}  // namespace gapchannel::oracles
