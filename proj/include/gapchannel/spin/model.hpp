#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gapchannel::spin {

/// Open XYZ chain in a field with two weakly attached ancilla spins:
///
///   H = B sum_i Z_i + sum_i (Jx X_i X_i+1 + Jy Y_i Y_i+1 + Jz Z_i Z_i+1)
///       + Ba (Z_S + Z_R) + Ja (X_S X_mS + X_R X_mR)
///
/// Sites mS, mR are 1-based chain indices.
struct SpinModelParams {
  int N = 0;
  double B = 1.0;
  double Jx = 0.0;
  double Jy = 0.0;
  double Jz = 0.0;
  double Ba = 0.0;
  double Ja = 0.0;
  int mS = 1;
  int mR = 2;

  /// Throws ParameterError on violation. Ja = 0 is accepted as a degenerate
  /// point (ancillas decoupled); negative Ja/Ba are rejected.
  void validate() const;

  /// Ja <= 0.2 * max(|B|, |Jx|, |Jy|, |Jz|).
  bool weak_coupling() const;

  /// Params describing the chain alone (Ba = Ja = 0).
  SpinModelParams chain_only() const;
};

/// Physical site labels. Chain sites are 0..N-1 (0-based), the sender is N and
/// the receiver N+1.
inline int sender_site(const SpinModelParams& p) { return p.N; }
inline int receiver_site(const SpinModelParams& p) { return p.N + 1; }

struct FieldTerm {
  int site;
  double h;  // coefficient of Z
};

struct BondTerm {
  int a;
  int b;
  double jx;
  double jy;
  double jz;
};

struct HamiltonianTerms {
  std::vector<FieldTerm> fields;
  std::vector<BondTerm> chain_bonds;
  std::vector<BondTerm> ancilla_bonds;  // X_a X_b only, empty when built chain-only
  int num_sites = 0;                    // physical sites covered by the terms
};

/// Terms of the full Hamiltonian (chain + ancillas).
HamiltonianTerms build_hamiltonian_terms(const SpinModelParams& params);

/// Terms of the chain Hamiltonian alone, over N sites.
HamiltonianTerms build_chain_terms(const SpinModelParams& params);

/// Basis convention used throughout: index 0 = up (Z = +1), index 1 = down.
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

/// jx XX + jy YY + jz ZZ in the |s_left s_right> basis (index 2*s_left + s_right).
Eigen::Matrix4cd bond_matrix(double jx, double jy, double jz);

/// Linear arrangement of physical sites into MPS slots.
struct SiteOrdering {
  std::vector<int> slot_to_site;
  std::vector<int> site_to_slot;
  /// Chain bonds (1-based (i, i+1)) that have an ancilla between them in the
  /// ordering and need swap gates.
  std::vector<std::pair<int, int>> spanning_bonds;

  std::size_t size() const { return slot_to_site.size(); }
  int slot_of(int site) const { return site_to_slot.at(static_cast<std::size_t>(site)); }
  int site_at(int slot) const { return slot_to_site.at(static_cast<std::size_t>(slot)); }
  /// Human-readable labels: "1".."N", "S", "R".
  std::vector<std::string> labels(const SpinModelParams& params) const;
};

/// Sender inserted right after chain site mS, receiver right after mR.
SiteOrdering site_ordering(const SpinModelParams& params);

/// Identity ordering of the N chain sites.
SiteOrdering chain_ordering(int N);

}  // namespace gapchannel::spin
