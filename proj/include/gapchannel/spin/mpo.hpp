#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gapchannel/spin/model.hpp"
#include "gapchannel/spin/mps.hpp"

namespace gapchannel::spin {

/// Sparse matrix product operator. Each slot holds its nonzero
/// (left channel, right channel, 2x2 operator) entries. Channel 0 is the
/// "nothing placed yet" state, channel 1 the "term finished" state.
class MatrixProductOperator {
 public:
  struct Entry {
    int in;
    int out;
    Eigen::Matrix2cd op;
  };

  /// Builds H from the term list laid out on `ordering`. Terms may span
  /// non-adjacent slots; identities fill the gap.
  static MatrixProductOperator from_terms(const HamiltonianTerms& terms, const SiteOrdering& ordering);

  std::size_t size() const { return entries_.size(); }
  int bond_dimension(std::size_t bond) const { return dims_.at(bond + 1); }

  /// <psi|H|psi> / <psi|psi>.
  double expectation(const MatrixProductState& psi) const;
  /// <psi|H^2|psi> / <psi|psi>.
  double expectation_squared(const MatrixProductState& psi) const;

 private:
  std::vector<std::vector<Entry>> entries_;
  std::vector<int> dims_;  // dims_[b] = channels on the bond left of slot b
};

}  // namespace gapchannel::spin
