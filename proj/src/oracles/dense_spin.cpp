#include "gapchannel/oracles/dense_spin.hpp"

#include <cmath>
#include <string>

#include "gapchannel/errors.hpp"
#include "gapchannel/oracles/krylov.hpp"

namespace gapchannel::oracles {

namespace {

void check_cap(int sites) {
  if (sites > kMaxDenseSpins) {
    throw SizeCapError("exact diagonalisation is capped at " + std::to_string(kMaxDenseSpins) + " spins, requested " +
                       std::to_string(sites));
  }
}

// +1 for up (bit 0), -1 for down.
inline double zsign(Eigen::Index state, int bit) { return ((state >> bit) & 1) ? -1.0 : 1.0; }

Eigen::VectorXd deterministic_start(Eigen::Index dim) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = 1.0 + 0.25 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  return v.normalized();
}

}  // namespace

DenseSpinSystem::DenseSpinSystem(const spin::HamiltonianTerms& terms) : num_sites_(terms.num_sites) {
  check_cap(num_sites_);
  const Eigen::Index dim = dimension();
  diag_ = Eigen::VectorXd::Zero(dim);
  auto bit_of = [this](int site) { return num_sites_ - 1 - site; };
  for (const auto& f : terms.fields) {
    const int bit = bit_of(f.site);
    for (Eigen::Index s = 0; s < dim; ++s) diag_(s) += f.h * zsign(s, bit);
  }
  auto add_bond = [&](const spin::BondTerm& b) {
    const int ba = bit_of(b.a);
    const int bb = bit_of(b.b);
    if (b.jz != 0.0) {
      for (Eigen::Index s = 0; s < dim; ++s) diag_(s) += b.jz * zsign(s, ba) * zsign(s, bb);
    }
    if (b.jx != 0.0 || b.jy != 0.0) {
      flips_.push_back({(Eigen::Index{1} << ba) | (Eigen::Index{1} << bb), ba, bb, b.jx, b.jy});
    }
  };
  for (const auto& b : terms.chain_bonds) add_bond(b);
  for (const auto& b : terms.ancilla_bonds) add_bond(b);
}

void DenseSpinSystem::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  out = diag_.cwiseProduct(in);
  const Eigen::Index dim = dimension();
  for (const auto& f : flips_) {
    for (Eigen::Index s = 0; s < dim; ++s) {
      // XX -> 1, YY -> -s_a s_b
      const double amp = f.jx - f.jy * zsign(s, f.bit_a) * zsign(s, f.bit_b);
      out(s ^ f.mask) += amp * in(s);
    }
  }
}

void DenseSpinSystem::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  out = diag_.cast<std::complex<double>>().cwiseProduct(in);
  const Eigen::Index dim = dimension();
  for (const auto& f : flips_) {
    for (Eigen::Index s = 0; s < dim; ++s) {
      const double amp = f.jx - f.jy * zsign(s, f.bit_a) * zsign(s, f.bit_b);
      out(s ^ f.mask) += amp * in(s);
    }
  }
}

Eigen::MatrixXd DenseSpinSystem::matrix() const {
  if (num_sites_ > 12) throw SizeCapError("explicit dense matrix limited to 12 spins");
  const Eigen::Index dim = dimension();
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd col(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    e(i) = 1.0;
    apply(e, col);
    h.col(i) = col;
    e(i) = 0.0;
  }
  return h;
}

double DenseSpinSystem::energy(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd hpsi;
  apply(psi, hpsi);
  return psi.dot(hpsi).real() / psi.squaredNorm();
}

double DenseSpinSystem::energy_variance(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd hpsi;
  apply(psi, hpsi);
  const double n2 = psi.squaredNorm();
  const double e = psi.dot(hpsi).real() / n2;
  // ||(H - E) psi||^2 avoids the cancellation in <H^2> - <H>^2.
  return (hpsi - e * psi).squaredNorm() / n2;
}

Eigen::MatrixXd direct_dense_hamiltonian(const spin::SpinModelParams& params) {
  params.validate();
  const int m = params.N + 2;
  if (m > 12) throw SizeCapError("direct_dense_hamiltonian limited to 12 spins");
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  auto embed = [m, &id](const std::vector<std::pair<int, Eigen::Matrix2cd>>& ops) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
    for (int site = 0; site < m; ++site) {
      Eigen::Matrix2cd f = id;
      for (const auto& [s, op] : ops)
        if (s == site) f = op;
      Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) next.block(i * acc.rows(), j * acc.cols(), acc.rows(), acc.cols()) = f(i, j) * acc;
      acc = next;
    }
    return acc;
  };
  const auto X = spin::pauli_x();
  const auto Y = spin::pauli_y();
  const auto Z = spin::pauli_z();
  const int S = spin::sender_site(params);
  const int R = spin::receiver_site(params);
  const Eigen::Index dim = Eigen::Index{1} << m;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < params.N; ++i) h += params.B * embed({{i, Z}});
  for (int i = 0; i + 1 < params.N; ++i) {
    h += params.Jx * embed({{i, X}, {i + 1, X}});
    h += params.Jy * embed({{i, Y}, {i + 1, Y}});
    h += params.Jz * embed({{i, Z}, {i + 1, Z}});
  }
  h += params.Ba * (embed({{S, Z}}) + embed({{R, Z}}));
  h += params.Ja * (embed({{S, X}, {params.mS - 1, X}}) + embed({{R, X}, {params.mR - 1, X}}));
  // The Kronecker loop above puts site 0 in the least significant position;
  // reverse the bit order to match DenseSpinSystem.
  Eigen::MatrixXd out(dim, dim);
  auto reverse_bits = [m](Eigen::Index s) {
    Eigen::Index r = 0;
    for (int b = 0; b < m; ++b) r |= ((s >> b) & 1) << (m - 1 - b);
    return r;
  };
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) out(reverse_bits(i), reverse_bits(j)) = h(i, j).real();
  return out;
}

EdGroundState ed_chain_ground_state(const spin::SpinModelParams& params) {
  const DenseSpinSystem sys(spin::build_chain_terms(params));
  const auto res = lanczos_lowest([&sys](const Eigen::VectorXd& x, Eigen::VectorXd& y) { sys.apply(x, y); },
                                  sys.dimension(), 2, deterministic_start(sys.dimension()));
  EdGroundState gs;
  gs.energy = res.eigenvalues(0);
  gs.first_excited = res.eigenvalues.size() > 1 ? res.eigenvalues(1) : std::nan("");
  gs.vector = res.ground_vector;
  return gs;
}

Eigen::VectorXcd ed_initial_state(const spin::SpinModelParams& params) {
  params.validate();
  check_cap(params.N + 2);
  const EdGroundState gs = ed_chain_ground_state(params);
  // chain bits are the high bits; S then R are the two lowest. S up (0), R down (1).
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << (params.N + 2));
  for (Eigen::Index c = 0; c < gs.vector.size(); ++c) psi((c << 2) | 0b01) = gs.vector(c);
  return psi;
}

spin::AncillaProbabilities dense_ancilla_probs(const Eigen::VectorXcd& psi, const spin::SpinModelParams& params) {
  const int m = params.N + 2;
  const int bit_s = m - 1 - spin::sender_site(params);
  const int bit_r = m - 1 - spin::receiver_site(params);
  double p[2][2] = {{0, 0}, {0, 0}};
  for (Eigen::Index s = 0; s < psi.size(); ++s) p[(s >> bit_s) & 1][(s >> bit_r) & 1] += std::norm(psi(s));
  const double n2 = psi.squaredNorm();
  return {p[0][0] / n2, p[0][1] / n2, p[1][0] / n2, p[1][1] / n2};
}

TimeSeries ed_spin_evolve_from(const spin::SpinModelParams& params, Eigen::VectorXcd psi, double dt, double T) {
  params.validate();
  check_cap(params.N + 2);
  if (!(dt > 0.0) || !(T > 0.0)) throw ParameterError("ed_spin_evolve: dt and T must be positive");
  const DenseSpinSystem sys(spin::build_hamiltonian_terms(params));
  const auto apply = [&sys](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { sys.apply(x, y); };
  TimeSeries series("t", {"P_uu", "P_ud", "P_du", "P_dd", "energy"});
  auto sample = [&](double t) {
    const auto p = dense_ancilla_probs(psi, params);
    series.append(t, {p.uu, p.ud, p.du, p.dd, sys.energy(psi)});
  };
  sample(0.0);
  const long steps = std::lround(T / dt);
  for (long k = 1; k <= steps; ++k) {
    psi = expm_krylov(apply, psi, dt, 1e-12);
    sample(static_cast<double>(k) * dt);
  }
  series.metadata()["method"] = "Krylov propagation in the full Hilbert space";
  series.metadata()["dt"] = dt;
  series.metadata()["T"] = T;
  return series;
}

TimeSeries ed_spin_evolve(const spin::SpinModelParams& params, double dt, double T) {
  return ed_spin_evolve_from(params, ed_initial_state(params), dt, T);
}

}  // namespace gapchannel::oracles
