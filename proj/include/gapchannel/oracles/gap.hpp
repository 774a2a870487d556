#pragma once

#include <optional>
#include <vector>

#include "gapchannel/spin/model.hpp"

namespace gapchannel::oracles {

struct GapEstimate {
  double gap = 0.0;          // infinite-size extrapolation
  double uncertainty = 0.0;  // spread of pairwise extrapolations
  std::vector<int> sizes;
  std::vector<double> finite_gaps;
  bool monotone = true;
  /// 2|B - Jx| when Jy = Jz = 0, otherwise empty.
  std::optional<double> free_fermion;
};

/// E1 - E0 of the open chain at each size, extrapolated with a least-squares
/// fit in 1/N^2. Sizes must be >= 2 and within the ED cap.
GapEstimate finite_chain_gap(const spin::SpinModelParams& params, std::vector<int> sizes = {8, 10, 12});

}  // namespace gapchannel::oracles
