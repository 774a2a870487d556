#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gapchannel::spin {

using Complex = std::complex<double>;

/// Site tensor of a spin-1/2 MPS: one (left x right) matrix per physical state.
using SiteTensor = std::array<Eigen::MatrixXcd, 2>;

enum class SweepDirection { Right, Left };

/// Result of one truncated two-site update.
struct TruncationInfo {
  int kept = 0;
  double discarded_weight = 0.0;
};

/// Open-boundary matrix product state of spin-1/2 sites kept in mixed
/// canonical form: tensors left of center() are left-isometric, tensors right
/// of it right-isometric.
class MatrixProductState {
 public:
  MatrixProductState() = default;

  /// Product state, one single-spin amplitude vector (up, down) per slot.
  static MatrixProductState product(const std::vector<Eigen::Vector2cd>& spins);
  /// Computational basis state, 0 = up, 1 = down.
  static MatrixProductState basis_state(const std::vector<int>& bits);

  std::size_t size() const { return tensors_.size(); }
  int center() const { return center_; }
  const SiteTensor& tensor(std::size_t slot) const { return tensors_.at(slot); }

  /// Bond between slot b and b+1.
  int bond_dimension(std::size_t bond) const;
  int max_bond_dimension() const;

  double discarded_weight() const { return discarded_weight_; }
  void reset_discarded_weight() { discarded_weight_ = 0.0; }

  /// Moves the orthogonality center by QR sweeps.
  void move_center(int slot);

  /// Applies a 4x4 gate to slots (slot, slot+1) in the |s_left s_right> basis,
  /// keeping at most `max_bond` singular values. The kept spectrum is
  /// renormalized. Afterwards the center sits on slot+1 (Right) or slot (Left).
  TruncationInfo apply_two_site(int slot, const Eigen::Matrix4cd& gate, int max_bond, SweepDirection dir);

  /// Inserts a new slot at position `slot` holding basis state `bit`; the
  /// inserted tensor is an identity on the bond it splits.
  void insert_basis_site(int slot, int bit);

  double norm() const;
  void normalize();

  /// <psi| prod_k op_k |psi> for single-slot operators (distinct slots).
  Complex expectation(std::vector<std::pair<int, Eigen::Matrix2cd>> ops) const;

  /// Full state vector; slot 0 is the most significant bit. Small systems only.
  Eigen::VectorXcd to_dense() const;

  /// Overwrites a site tensor (used by tests to build non-canonical states);
  /// the canonical center becomes unknown and is set to `center_hint`.
  void set_tensor(std::size_t slot, SiteTensor t, int center_hint);

 private:
  void shift_center_right(int slot);
  void shift_center_left(int slot);

  std::vector<SiteTensor> tensors_;
  int center_ = 0;
  double discarded_weight_ = 0.0;
};

}  // namespace gapchannel::spin
