#include "gapchannel/spin/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapchannel/errors.hpp"

namespace gapchannel::spin {

void SpinModelParams::validate() const {
  if (N < 4) throw ParameterError("spin chain needs N >= 4, got " + std::to_string(N));
  if (mS < 1 || mR > N || mS >= mR) {
    throw ParameterError("attachment sites must satisfy 1 <= mS < mR <= N (mS=" + std::to_string(mS) +
                         ", mR=" + std::to_string(mR) + ", N=" + std::to_string(N) + ")");
  }
  if (Ja < 0.0) throw ParameterError("ancilla coupling Ja must be >= 0");
  if (Ba < 0.0) throw ParameterError("ancilla field Ba must be >= 0");
  for (double v : {B, Jx, Jy, Jz, Ba, Ja}) {
    if (!std::isfinite(v)) throw ParameterError("spin model parameters must be finite");
  }
}

bool SpinModelParams::weak_coupling() const {
  const double scale = std::max({std::abs(B), std::abs(Jx), std::abs(Jy), std::abs(Jz)});
  return Ja <= 0.2 * scale;
}

SpinModelParams SpinModelParams::chain_only() const {
  SpinModelParams p = *this;
  p.Ba = 0.0;
  p.Ja = 0.0;
  return p;
}

HamiltonianTerms build_chain_terms(const SpinModelParams& params) {
  if (params.N < 2) throw ParameterError("chain needs at least two sites");
  HamiltonianTerms t;
  t.num_sites = params.N;
  for (int i = 0; i < params.N; ++i) t.fields.push_back({i, params.B});
  for (int i = 0; i + 1 < params.N; ++i) t.chain_bonds.push_back({i, i + 1, params.Jx, params.Jy, params.Jz});
  return t;
}

HamiltonianTerms build_hamiltonian_terms(const SpinModelParams& params) {
  params.validate();
  HamiltonianTerms t = build_chain_terms(params);
  t.num_sites = params.N + 2;
  t.fields.push_back({sender_site(params), params.Ba});
  t.fields.push_back({receiver_site(params), params.Ba});
  t.ancilla_bonds.push_back({params.mS - 1, sender_site(params), params.Ja, 0.0, 0.0});
  t.ancilla_bonds.push_back({params.mR - 1, receiver_site(params), params.Ja, 0.0, 0.0});
  return t;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

namespace {

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::Matrix4cd bond_matrix(double jx, double jy, double jz) {
  return jx * kron2(pauli_x(), pauli_x()) + jy * kron2(pauli_y(), pauli_y()) + jz * kron2(pauli_z(), pauli_z());
}

SiteOrdering site_ordering(const SpinModelParams& params) {
  params.validate();
  SiteOrdering o;
  const int n = params.N;
  o.site_to_slot.assign(static_cast<std::size_t>(n + 2), -1);
  for (int i = 1; i <= n; ++i) {
    o.slot_to_site.push_back(i - 1);
    if (i == params.mS) o.slot_to_site.push_back(sender_site(params));
    if (i == params.mR) o.slot_to_site.push_back(receiver_site(params));
  }
  for (std::size_t s = 0; s < o.slot_to_site.size(); ++s) {
    o.site_to_slot[static_cast<std::size_t>(o.slot_to_site[s])] = static_cast<int>(s);
  }
  if (params.mS < n) o.spanning_bonds.emplace_back(params.mS, params.mS + 1);
  if (params.mR < n) o.spanning_bonds.emplace_back(params.mR, params.mR + 1);
  return o;
}

SiteOrdering chain_ordering(int N) {
  SiteOrdering o;
  for (int i = 0; i < N; ++i) {
    o.slot_to_site.push_back(i);
    o.site_to_slot.push_back(i);
  }
  return o;
}

std::vector<std::string> SiteOrdering::labels(const SpinModelParams& params) const {
  std::vector<std::string> out;
  for (int site : slot_to_site) {
    if (site == sender_site(params))
      out.emplace_back("S");
    else if (site == receiver_site(params))
      out.emplace_back("R");
    else
      out.push_back(std::to_string(site + 1));
  }
  return out;
}

}  // namespace gapchannel::spin
