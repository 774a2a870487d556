#include "gapchannel/oracles/gap.hpp"

#include <algorithm>
#include <cmath>

#include "gapchannel/errors.hpp"
#include "gapchannel/oracles/dense_spin.hpp"

namespace gapchannel::oracles {

namespace {

// Line through (x0, y0), (x1, y1) evaluated at x = 0.
double intercept(double x0, double y0, double x1, double y1) { return y0 - x0 * (y1 - y0) / (x1 - x0); }

}  // namespace

GapEstimate finite_chain_gap(const spin::SpinModelParams& params, std::vector<int> sizes) {
  if (sizes.empty()) throw ParameterError("finite_chain_gap: no sizes given");
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  GapEstimate est;
  est.sizes = sizes;
  for (int n : sizes) {
    if (n < 2) throw ParameterError("finite_chain_gap: sizes must be >= 2");
    if (n > kMaxDenseSpins) throw SizeCapError("finite_chain_gap: size above the exact-diagonalisation cap");
    spin::SpinModelParams p = params.chain_only();
    p.N = n;
    const EdGroundState gs = ed_chain_ground_state(p);
    est.finite_gaps.push_back(gs.first_excited - gs.energy);
  }
  if (params.Jy == 0.0 && params.Jz == 0.0) est.free_fermion = 2.0 * std::abs(params.B - params.Jx);

  const std::size_t m = sizes.size();
  for (std::size_t i = 1; i < m; ++i) {
    if (est.finite_gaps[i] > est.finite_gaps[i - 1] + 1e-12) est.monotone = false;
  }
  if (m == 1) {
    est.gap = est.finite_gaps[0];
    est.uncertainty = std::abs(est.gap);
    return est;
  }

  // Least squares in x = 1/N^2 (gapped open chains: quadratic band edge).
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = 1.0 / (static_cast<double>(sizes[i]) * sizes[i]);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += est.finite_gaps[i];
    sxx += x[i] * x[i];
    sxy += x[i] * est.finite_gaps[i];
  }
  const double dm = static_cast<double>(m);
  const double slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  est.gap = (sy - slope * sx) / dm;

  double lo = est.gap;
  double hi = est.gap;
  for (std::size_t i = 1; i < m; ++i) {
    const double g = intercept(x[i - 1], est.finite_gaps[i - 1], x[i], est.finite_gaps[i]);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  est.uncertainty = hi - lo;
  if (!est.monotone) {
    const auto [mn, mx] = std::minmax_element(est.finite_gaps.begin(), est.finite_gaps.end());
    est.uncertainty = std::max(est.uncertainty, *mx - *mn);
  }
  return est;
}

}  // namespace gapchannel::oracles
