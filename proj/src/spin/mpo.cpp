#include "gapchannel/spin/mpo.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace gapchannel::spin {

namespace {

struct ProductTerm {
  std::vector<std::pair<int, Eigen::Matrix2cd>> ops;  // sorted by slot
  double coeff;
};

std::vector<ProductTerm> collect_terms(const HamiltonianTerms& terms, const SiteOrdering& ordering) {
  std::vector<ProductTerm> out;
  const Eigen::Matrix2cd x = pauli_x();
  const Eigen::Matrix2cd y = pauli_y();
  const Eigen::Matrix2cd z = pauli_z();
  for (const auto& f : terms.fields) {
    if (f.h != 0.0) out.push_back({{{ordering.slot_of(f.site), z}}, f.h});
  }
  auto add_bond = [&](const BondTerm& b) {
    int sa = ordering.slot_of(b.a);
    int sb = ordering.slot_of(b.b);
    if (sa > sb) std::swap(sa, sb);
    const std::pair<double, Eigen::Matrix2cd> parts[] = {{b.jx, x}, {b.jy, y}, {b.jz, z}};
    for (const auto& [c, op] : parts) {
      if (c != 0.0) out.push_back({{{sa, op}, {sb, op}}, c});
    }
  };
  for (const auto& b : terms.chain_bonds) add_bond(b);
  for (const auto& b : terms.ancilla_bonds) add_bond(b);
  return out;
}

// Environment over MPO channels; std::nullopt marks a channel with zero weight.
using Env = std::vector<std::optional<Eigen::MatrixXcd>>;

}  // namespace

MatrixProductOperator MatrixProductOperator::from_terms(const HamiltonianTerms& terms, const SiteOrdering& ordering) {
  const int L = static_cast<int>(ordering.size());
  const auto product_terms = collect_terms(terms, ordering);

  // channel of term t on bond b (bond b sits left of slot b)
  std::vector<std::map<std::size_t, int>> channel(static_cast<std::size_t>(L + 1));
  MatrixProductOperator mpo;
  mpo.dims_.assign(static_cast<std::size_t>(L + 1), 2);
  for (std::size_t t = 0; t < product_terms.size(); ++t) {
    const int first = product_terms[t].ops.front().first;
    const int last = product_terms[t].ops.back().first;
    for (int b = first + 1; b <= last; ++b) {
      auto& ch = channel[static_cast<std::size_t>(b)];
      ch[t] = mpo.dims_[static_cast<std::size_t>(b)]++;
    }
  }

  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  mpo.entries_.resize(static_cast<std::size_t>(L));
  for (int p = 0; p < L; ++p) {
    auto& e = mpo.entries_[static_cast<std::size_t>(p)];
    e.push_back({0, 0, id});
    e.push_back({1, 1, id});
  }
  for (std::size_t t = 0; t < product_terms.size(); ++t) {
    const auto& term = product_terms[t];
    const int first = term.ops.front().first;
    const int last = term.ops.back().first;
    std::size_t k = 0;
    for (int p = first; p <= last; ++p) {
      Eigen::Matrix2cd op = id;
      if (k < term.ops.size() && term.ops[k].first == p) op = term.ops[k++].second;
      if (p == first) op *= term.coeff;
      const int in = p == first ? 0 : channel[static_cast<std::size_t>(p)].at(t);
      const int out = p == last ? 1 : channel[static_cast<std::size_t>(p + 1)].at(t);
      mpo.entries_[static_cast<std::size_t>(p)].push_back({in, out, op});
    }
  }
  return mpo;
}

double MatrixProductOperator::expectation(const MatrixProductState& psi) const {
  if (psi.size() != entries_.size()) throw std::invalid_argument("MPO/MPS size mismatch");
  Env env(static_cast<std::size_t>(dims_[0]));
  env[0] = Eigen::MatrixXcd::Ones(1, 1);
  Eigen::MatrixXcd norm_env = Eigen::MatrixXcd::Ones(1, 1);
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    const SiteTensor& a = psi.tensor(p);
    Env next(static_cast<std::size_t>(dims_[p + 1]));
    std::vector<std::array<Eigen::MatrixXcd, 2>> xa(env.size());
    for (std::size_t c = 0; c < env.size(); ++c) {
      if (env[c]) xa[c] = {*env[c] * a[0], *env[c] * a[1]};
    }
    for (const auto& e : entries_[p]) {
      const auto& x = xa[static_cast<std::size_t>(e.in)];
      if (!env[static_cast<std::size_t>(e.in)]) continue;
      auto& dst = next[static_cast<std::size_t>(e.out)];
      if (!dst) dst = Eigen::MatrixXcd::Zero(a[0].cols(), a[0].cols());
      for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
          if (e.op(s, sp) != Complex(0.0, 0.0)) dst->noalias() += e.op(s, sp) * (a[s].adjoint() * x[sp]);
    }
    env = std::move(next);
    norm_env = a[0].adjoint() * norm_env * a[0] + a[1].adjoint() * norm_env * a[1];
  }
  if (!env[1]) return 0.0;
  return ((*env[1])(0, 0) / norm_env(0, 0)).real();
}

double MatrixProductOperator::expectation_squared(const MatrixProductState& psi) const {
  if (psi.size() != entries_.size()) throw std::invalid_argument("MPO/MPS size mismatch");
  auto idx = [](int a, int b, int w) { return static_cast<std::size_t>(a * w + b); };
  int w = dims_[0];
  Env env(static_cast<std::size_t>(w * w));
  env[idx(0, 0, w)] = Eigen::MatrixXcd::Ones(1, 1);
  Eigen::MatrixXcd norm_env = Eigen::MatrixXcd::Ones(1, 1);
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    const SiteTensor& a = psi.tensor(p);
    const int wn = dims_[p + 1];
    Env next(static_cast<std::size_t>(wn * wn));
    std::vector<std::array<Eigen::MatrixXcd, 2>> xa(env.size());
    for (std::size_t c = 0; c < env.size(); ++c) {
      if (env[c]) xa[c] = {*env[c] * a[0], *env[c] * a[1]};
    }
    for (const auto& e1 : entries_[p]) {
      for (const auto& e2 : entries_[p]) {
        const std::size_t src = idx(e1.in, e2.in, w);
        if (!env[src]) continue;
        const Eigen::Matrix2cd op = e1.op * e2.op;
        auto& dst = next[idx(e1.out, e2.out, wn)];
        if (!dst) dst = Eigen::MatrixXcd::Zero(a[0].cols(), a[0].cols());
        for (int s = 0; s < 2; ++s)
          for (int sp = 0; sp < 2; ++sp)
            if (op(s, sp) != Complex(0.0, 0.0)) dst->noalias() += op(s, sp) * (a[s].adjoint() * xa[src][sp]);
      }
    }
    env = std::move(next);
    w = wn;
    norm_env = a[0].adjoint() * norm_env * a[0] + a[1].adjoint() * norm_env * a[1];
  }
  const auto& fin = env[idx(1, 1, w)];
  if (!fin) return 0.0;
  return ((*fin)(0, 0) / norm_env(0, 0)).real();
}

}  // namespace gapchannel::spin
