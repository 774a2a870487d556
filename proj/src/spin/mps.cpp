#include "gapchannel/spin/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapchannel::spin {

MatrixProductState MatrixProductState::product(const std::vector<Eigen::Vector2cd>& spins) {
  MatrixProductState mps;
  mps.tensors_.reserve(spins.size());
  for (const auto& v : spins) {
    const Eigen::Vector2cd u = v.normalized();
    SiteTensor t;
    t[0] = Eigen::MatrixXcd::Constant(1, 1, u(0));
    t[1] = Eigen::MatrixXcd::Constant(1, 1, u(1));
    mps.tensors_.push_back(std::move(t));
  }
  return mps;
}

MatrixProductState MatrixProductState::basis_state(const std::vector<int>& bits) {
  std::vector<Eigen::Vector2cd> spins;
  spins.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis_state: bits must be 0 or 1");
    spins.push_back(b == 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1));
  }
  return product(spins);
}

int MatrixProductState::bond_dimension(std::size_t bond) const {
  return static_cast<int>(tensors_.at(bond)[0].cols());
}

int MatrixProductState::max_bond_dimension() const {
  int d = 1;
  for (std::size_t b = 0; b + 1 < tensors_.size(); ++b) d = std::max(d, bond_dimension(b));
  return d;
}

void MatrixProductState::shift_center_right(int p) {
  auto& a = tensors_[static_cast<std::size_t>(p)];
  auto& b = tensors_[static_cast<std::size_t>(p + 1)];
  const Eigen::Index dl = a[0].rows();
  const Eigen::Index dr = a[0].cols();
  Eigen::MatrixXcd m(2 * dl, dr);
  m.topRows(dl) = a[0];
  m.bottomRows(dl) = a[1];
  const Eigen::Index k = std::min(2 * dl, dr);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * dl, k);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  a[0] = q.topRows(dl);
  a[1] = q.bottomRows(dl);
  b[0] = r * b[0];
  b[1] = r * b[1];
  center_ = p + 1;
}

void MatrixProductState::shift_center_left(int p) {
  auto& a = tensors_[static_cast<std::size_t>(p - 1)];
  auto& b = tensors_[static_cast<std::size_t>(p)];
  const Eigen::Index dl = b[0].rows();
  const Eigen::Index dr = b[0].cols();
  Eigen::MatrixXcd m(dl, 2 * dr);
  m.leftCols(dr) = b[0];
  m.rightCols(dr) = b[1];
  const Eigen::Index k = std::min(dl, 2 * dr);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m.adjoint());
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * dr, k);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd qa = q.adjoint();  // k x 2dr, orthonormal rows
  b[0] = qa.leftCols(dr);
  b[1] = qa.rightCols(dr);
  const Eigen::MatrixXcd l = r.adjoint();  // dl x k
  a[0] = a[0] * l;
  a[1] = a[1] * l;
  center_ = p - 1;
}

void MatrixProductState::move_center(int slot) {
  if (slot < 0 || slot >= static_cast<int>(tensors_.size())) throw std::out_of_range("move_center: bad slot");
  while (center_ < slot) shift_center_right(center_);
  while (center_ > slot) shift_center_left(center_);
}

TruncationInfo MatrixProductState::apply_two_site(int slot, const Eigen::Matrix4cd& gate, int max_bond,
                                                  SweepDirection dir) {
  if (slot < 0 || slot + 1 >= static_cast<int>(tensors_.size())) {
    throw std::out_of_range("apply_two_site: slot out of range");
  }
  if (max_bond < 1) throw std::invalid_argument("apply_two_site: max_bond must be >= 1");
  if (center_ < slot) move_center(slot);
  if (center_ > slot + 1) move_center(slot + 1);

  auto& a = tensors_[static_cast<std::size_t>(slot)];
  auto& b = tensors_[static_cast<std::size_t>(slot + 1)];
  const Eigen::Index dl = a[0].rows();
  const Eigen::Index dr = b[0].cols();

  std::array<Eigen::MatrixXcd, 4> theta;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) theta[static_cast<std::size_t>(2 * s1 + s2)] = a[s1] * b[s2];

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * dl, 2 * dr);
  for (int out = 0; out < 4; ++out) {
    auto blk = m.block((out / 2) * dl, (out % 2) * dr, dl, dr);
    for (int in = 0; in < 4; ++in) {
      const Complex g = gate(out, in);
      if (g != Complex(0.0, 0.0)) blk += g * theta[static_cast<std::size_t>(in)];
    }
  }

  // Truncated SVD through the Hermitian eigenproblem of m m^dagger: much
  // cheaper than a full SVD at these sizes. Singular values below 1e-7 of the
  // largest (weight < 1e-14) are dropped, which keeps the back-substitution
  // for V well conditioned.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m * m.adjoint());
  const Eigen::VectorXd lam = es.eigenvalues().reverse().cwiseMax(0.0);
  const double total = lam.sum();
  if (!(total > 0.0)) throw std::runtime_error("apply_two_site: gate annihilated the state");

  Eigen::Index keep = 0;
  const double floor = 1e-14 * lam(0);
  while (keep < lam.size() && keep < max_bond && lam(keep) > floor) ++keep;
  keep = std::max<Eigen::Index>(keep, 1);

  const double kept_weight = lam.head(keep).sum();
  TruncationInfo info;
  info.kept = static_cast<int>(keep);
  info.discarded_weight = std::max(0.0, 1.0 - kept_weight / total);
  discarded_weight_ += info.discarded_weight;

  const Eigen::VectorXd sv = lam.head(keep).cwiseSqrt();
  const Eigen::VectorXd s = sv / std::sqrt(kept_weight);
  const Eigen::MatrixXcd u = es.eigenvectors().rowwise().reverse().leftCols(keep);
  const Eigen::MatrixXcd vh = sv.cwiseInverse().asDiagonal() * (u.adjoint() * m);

  if (dir == SweepDirection::Right) {
    a[0] = u.topRows(dl);
    a[1] = u.bottomRows(dl);
    const Eigen::MatrixXcd sv_h = s.asDiagonal() * vh;
    b[0] = sv_h.leftCols(dr);
    b[1] = sv_h.rightCols(dr);
    center_ = slot + 1;
  } else {
    const Eigen::MatrixXcd us = u * s.asDiagonal();
    a[0] = us.topRows(dl);
    a[1] = us.bottomRows(dl);
    b[0] = vh.leftCols(dr);
    b[1] = vh.rightCols(dr);
    center_ = slot;
  }
  return info;
}

void MatrixProductState::insert_basis_site(int slot, int bit) {
  if (slot < 0 || slot > static_cast<int>(tensors_.size())) throw std::out_of_range("insert_basis_site: bad slot");
  if (bit != 0 && bit != 1) throw std::invalid_argument("insert_basis_site: bit must be 0 or 1");
  Eigen::Index d = 1;
  if (slot < static_cast<int>(tensors_.size()))
    d = tensors_[static_cast<std::size_t>(slot)][0].rows();
  else if (!tensors_.empty())
    d = tensors_.back()[0].cols();
  SiteTensor t;
  t[static_cast<std::size_t>(bit)] = Eigen::MatrixXcd::Identity(d, d);
  t[static_cast<std::size_t>(1 - bit)] = Eigen::MatrixXcd::Zero(d, d);
  tensors_.insert(tensors_.begin() + slot, std::move(t));
  if (center_ >= slot && tensors_.size() > 1) ++center_;
}

Complex MatrixProductState::expectation(std::vector<std::pair<int, Eigen::Matrix2cd>> ops) const {
  std::sort(ops.begin(), ops.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
  std::size_t next = 0;
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& t = tensors_[i];
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(t[0].cols(), t[0].cols());
    if (next < ops.size() && ops[next].first == static_cast<int>(i)) {
      const Eigen::Matrix2cd& op = ops[next].second;
      for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
          if (op(s, sp) == Complex(0.0, 0.0)) continue;
          out.noalias() += op(s, sp) * (t[s].adjoint() * (env * t[sp]));
        }
      }
      ++next;
    } else {
      for (int s = 0; s < 2; ++s) out.noalias() += t[s].adjoint() * (env * t[s]);
    }
    env = std::move(out);
  }
  if (next != ops.size()) throw std::out_of_range("expectation: operator slot out of range");
  return env(0, 0);
}

double MatrixProductState::norm() const { return std::sqrt(std::abs(expectation({}))); }

void MatrixProductState::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::runtime_error("normalize: zero state");
  auto& t = tensors_[static_cast<std::size_t>(center_)];
  t[0] /= n;
  t[1] /= n;
}

Eigen::VectorXcd MatrixProductState::to_dense() const {
  if (tensors_.size() > 20) throw std::length_error("to_dense: too many sites");
  std::vector<Eigen::RowVectorXcd> partial{Eigen::RowVectorXcd::Ones(1)};
  for (const auto& t : tensors_) {
    std::vector<Eigen::RowVectorXcd> next;
    next.reserve(partial.size() * 2);
    for (const auto& row : partial) {
      next.push_back(row * t[0]);
      next.push_back(row * t[1]);
    }
    partial = std::move(next);
  }
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(partial.size()));
  for (std::size_t i = 0; i < partial.size(); ++i) psi(static_cast<Eigen::Index>(i)) = partial[i](0);
  return psi;
}

void MatrixProductState::set_tensor(std::size_t slot, SiteTensor t, int center_hint) {
  tensors_.at(slot) = std::move(t);
  center_ = center_hint;
}

}  // namespace gapchannel::spin
