#include "gapchannel/spin/tebd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gapchannel/errors.hpp"
#include "gapchannel/oracles/gap.hpp"

namespace gapchannel::spin {

namespace {

Eigen::Matrix4cd z_left() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.diagonal() << 1, 1, -1, -1;
  return m;
}

Eigen::Matrix4cd z_right() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.diagonal() << 1, -1, 1, -1;
  return m;
}

Eigen::Matrix4cd swap_gate() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

// exp(-i h tau) for real time, exp(-h tau) for imaginary time.
Eigen::Matrix4cd propagator(const Eigen::Matrix4cd& h, double tau, bool imaginary) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) {
    const double e = es.eigenvalues()(i);
    phases(i) = imaginary ? Complex(std::exp(-e * tau), 0.0) : std::exp(Complex(0.0, -e * tau));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_ancilla_site(const HamiltonianTerms& terms, int site) {
  return std::any_of(terms.ancilla_bonds.begin(), terms.ancilla_bonds.end(),
                     [site](const BondTerm& b) { return b.b == site; });
}

}  // namespace

std::vector<SlotBond> slot_bonds(const HamiltonianTerms& terms, const SiteOrdering& ordering) {
  struct Pending {
    BondTerm bond;
    bool ancilla;
  };
  std::vector<Pending> all;
  for (const auto& b : terms.chain_bonds) all.push_back({b, false});
  for (const auto& b : terms.ancilla_bonds) all.push_back({b, true});

  // Each field is carried by the bonds of its own kind: ancilla fields by the
  // ancilla bond, chain fields shared equally among adjacent chain bonds.
  std::map<int, double> field_of;
  for (const auto& f : terms.fields) field_of[f.site] += f.h;
  auto carries = [&](const Pending& p, int site) {
    return is_ancilla_site(terms, site) ? (p.ancilla && p.bond.b == site) : !p.ancilla;
  };
  std::map<int, int> carriers;
  for (const auto& p : all) {
    for (int s : {p.bond.a, p.bond.b}) {
      if (carries(p, s)) ++carriers[s];
    }
  }

  std::vector<SlotBond> out;
  for (const auto& p : all) {
    int sa = ordering.slot_of(p.bond.a);
    int sb = ordering.slot_of(p.bond.b);
    int left = p.bond.a;
    int right = p.bond.b;
    if (sa > sb) {
      std::swap(sa, sb);
      std::swap(left, right);
    }
    Eigen::Matrix4cd h = bond_matrix(p.bond.jx, p.bond.jy, p.bond.jz);
    for (auto [site, zop] : {std::pair{left, z_left()}, std::pair{right, z_right()}}) {
      if (carries(p, site) && field_of.count(site)) h += (field_of[site] / carriers[site]) * zop;
    }
    out.push_back({sa, sb, h});
  }
  for (const auto& [site, h] : field_of) {
    if (h != 0.0 && carriers[site] == 0) {
      throw ParameterError("field on site " + std::to_string(site) + " is not attached to any bond");
    }
  }
  std::sort(out.begin(), out.end(), [](const SlotBond& x, const SlotBond& y) {
    return x.left_slot != y.left_slot ? x.left_slot < y.left_slot : x.right_slot < y.right_slot;
  });
  return out;
}

TrotterScheme make_trotter_scheme(const HamiltonianTerms& terms, const SiteOrdering& ordering, double dt,
                                  bool imaginary) {
  if (!(dt > 0.0)) throw ParameterError("Trotter step dt must be positive");
  TrotterScheme scheme;
  scheme.dt = dt;
  scheme.imaginary = imaginary;
  const auto bonds = slot_bonds(terms, ordering);
  scheme.bond_terms = static_cast<int>(bonds.size());
  const Eigen::Matrix4cd sw = swap_gate();
  for (const auto& b : bonds) {
    const Eigen::Matrix4cd u = propagator(b.h, 0.5 * dt, imaginary);
    if (b.right_slot == b.left_slot + 1) {
      scheme.half_sweep.push_back({b.left_slot, u, false});
    } else if (b.right_slot == b.left_slot + 2) {
      scheme.half_sweep.push_back({b.left_slot + 1, sw, true});
      scheme.half_sweep.push_back({b.left_slot, u, false});
      scheme.half_sweep.push_back({b.left_slot + 1, sw, true});
    } else {
      throw ParameterError("bond spans more than one intermediate slot");
    }
  }
  return scheme;
}

double trotter_step(MatrixProductState& psi, const TrotterScheme& scheme, int max_bond) {
  double discarded = 0.0;
  for (const auto& g : scheme.half_sweep) {
    discarded += psi.apply_two_site(g.slot, g.matrix, max_bond, SweepDirection::Right).discarded_weight;
  }
  for (auto it = scheme.half_sweep.rbegin(); it != scheme.half_sweep.rend(); ++it) {
    discarded += psi.apply_two_site(it->slot, it->matrix, max_bond, SweepDirection::Left).discarded_weight;
  }
  return discarded;
}

GroundState ground_state_chain(const SpinModelParams& params, const GroundStateOptions& opts) {
  if (params.N < 2) throw ParameterError("chain needs at least two sites");
  const HamiltonianTerms terms = build_chain_terms(params);
  const SiteOrdering ordering = chain_ordering(params.N);
  const auto mpo = MatrixProductOperator::from_terms(terms, ordering);

  // Tilted product start: overlaps with both parity sectors.
  const double theta = 0.3;
  const Eigen::Vector2cd tilted = params.B >= 0.0 ? Eigen::Vector2cd(std::sin(theta), std::cos(theta))
                                                  : Eigen::Vector2cd(std::cos(theta), std::sin(theta));
  GroundState gs{MatrixProductState::product(std::vector<Eigen::Vector2cd>(static_cast<std::size_t>(params.N), tilted)),
                 0.0, 0};
  double energy = mpo.expectation(gs.psi);

  for (double dt : opts.dt_schedule) {
    const TrotterScheme scheme = make_trotter_scheme(terms, ordering, dt, true);
    double prev_change = 0.0;
    double gap_estimate = std::nan("");
    int steps = 0;
    while (true) {
      for (int k = 0; k < opts.check_every; ++k) trotter_step(gs.psi, scheme, opts.max_bond);
      steps += opts.check_every;
      gs.steps += opts.check_every;
      const double e = mpo.expectation(gs.psi);
      const double change = std::abs(e - energy) / opts.check_every;
      energy = e;
      if (prev_change > 0.0 && change > 0.0 && change < prev_change) {
        gap_estimate = -std::log(change / prev_change) / (2.0 * opts.check_every * dt);
      }
      prev_change = change;
      if (change < opts.tol) break;
      if (steps >= opts.max_steps_per_stage) {
        std::ostringstream msg;
        msg << "imaginary-time evolution did not converge at dt=" << dt << " after " << steps
            << " steps (last per-step energy change " << change << ")";
        throw ConvergenceError(msg.str(), energy, gap_estimate);
      }
    }
  }
  gs.energy = energy;
  return gs;
}

MatrixProductState prepare_initial(const MatrixProductState& chain_ground, const SpinModelParams& params) {
  params.validate();
  if (static_cast<int>(chain_ground.size()) != params.N) {
    throw ParameterError("prepare_initial: ground state has " + std::to_string(chain_ground.size()) +
                         " sites, expected N=" + std::to_string(params.N));
  }
  MatrixProductState psi = chain_ground;
  psi.insert_basis_site(params.mS, 0);
  psi.insert_basis_site(params.mR + 1, 1);
  return psi;
}

AncillaProbabilities joint_ancilla_probs(const MatrixProductState& psi, const SpinModelParams& params) {
  const SiteOrdering ordering = site_ordering(params);
  if (psi.size() != ordering.size()) throw ParameterError("joint_ancilla_probs: MPS does not match the ordering");
  const int s = ordering.slot_of(sender_site(params));
  const int r = ordering.slot_of(receiver_site(params));
  Eigen::Matrix2cd up = Eigen::Matrix2cd::Zero();
  up(0, 0) = 1;
  Eigen::Matrix2cd down = Eigen::Matrix2cd::Zero();
  down(1, 1) = 1;
  const double n2 = psi.expectation({}).real();
  auto p = [&](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    return psi.expectation({{s, a}, {r, b}}).real() / n2;
  };
  return {p(up, up), p(up, down), p(down, up), p(down, down)};
}

double total_energy(const MatrixProductState& psi, const SpinModelParams& params) {
  const auto mpo = MatrixProductOperator::from_terms(build_hamiltonian_terms(params), site_ordering(params));
  return mpo.expectation(psi);
}

double initial_energy_spread(const MatrixProductState& chain_ground, const SpinModelParams& params) {
  const MatrixProductState psi = prepare_initial(chain_ground, params);
  const auto mpo = MatrixProductOperator::from_terms(build_hamiltonian_terms(params), site_ordering(params));
  const double e = mpo.expectation(psi);
  const double e2 = mpo.expectation_squared(psi);
  return std::sqrt(std::max(0.0, e2 - e * e));
}

TimeSeries evolve_tebd(MatrixProductState psi, const SpinModelParams& params, const EvolveOptions& opts,
                       const std::function<void(const SpinSample&)>& on_sample) {
  params.validate();
  if (!(opts.dt > 0.0) || !(opts.T > 0.0) || !(opts.sample_every > 0.0)) {
    throw ParameterError("evolve_tebd: dt, T and sample_every must be positive");
  }
  const double energy_scale =
      std::max({std::abs(params.B), std::abs(params.Jx), std::abs(params.Jy), std::abs(params.Jz), params.Ba});
  if (opts.dt * energy_scale > 0.2 + 1e-12) {
    throw ParameterError("evolve_tebd: dt * energy scale must not exceed 0.2");
  }
  const long steps_per_sample = std::lround(opts.sample_every / opts.dt);
  if (steps_per_sample < 1 || std::abs(steps_per_sample * opts.dt - opts.sample_every) > 1e-9 * opts.sample_every) {
    throw ParameterError("evolve_tebd: sample_every must be a multiple of dt");
  }
  const long total_steps = std::lround(opts.T / opts.dt);

  const HamiltonianTerms terms = build_hamiltonian_terms(params);
  const SiteOrdering ordering = site_ordering(params);
  if (psi.size() != ordering.size()) throw ParameterError("evolve_tebd: state does not match the site ordering");
  const TrotterScheme scheme = make_trotter_scheme(terms, ordering, opts.dt, false);
  const auto mpo = MatrixProductOperator::from_terms(terms, ordering);

  TimeSeries series("t", {"P_uu", "P_ud", "P_du", "P_dd", "energy", "discarded_weight"});
  double discarded = 0.0;
  double max_norm_error = 0.0;
  auto sample = [&](long step) {
    const double n = psi.norm();
    max_norm_error = std::max(max_norm_error, std::abs(n - 1.0));
    const AncillaProbabilities p = joint_ancilla_probs(psi, params);
    const double e = mpo.expectation(psi);
    const double t = static_cast<double>(step) * opts.dt;
    series.append(t, {p.uu, p.ud, p.du, p.dd, e, discarded});
    if (on_sample) on_sample({t, p, e, discarded});
  };

  sample(0);
  for (long step = 1; step <= total_steps; ++step) {
    discarded += trotter_step(psi, scheme, opts.max_bond);
    if (step % steps_per_sample == 0) sample(step);
  }

  auto& md = series.metadata();
  md["integrator"] = "second-order symmetric Trotter sweep";
  md["dt"] = opts.dt;
  md["chi"] = opts.max_bond;
  md["T"] = opts.T;
  md["sample_every"] = opts.sample_every;
  md["discarded_weight"] = discarded;
  md["discarded_weight_bound"] = opts.discarded_weight_bound;
  md["max_bond_dimension"] = psi.max_bond_dimension();
  md["max_norm_error"] = max_norm_error;
  if (discarded > opts.discarded_weight_bound) {
    md["warnings"].push_back("cumulative discarded weight " + std::to_string(discarded) + " exceeds bound");
  }
  return series;
}

std::string to_string(SpinRegime r) {
  switch (r) {
    case SpinRegime::Virtual: return "Virtual";
    case SpinRegime::Resonant: return "Resonant";
    case SpinRegime::Marginal: return "Marginal";
  }
  return "?";
}

namespace {

SpinRegime verdict(double ancilla_energy, double window, double gap) {
  if (ancilla_energy + window < gap) return SpinRegime::Virtual;
  if (ancilla_energy - window > gap) return SpinRegime::Resonant;
  return SpinRegime::Marginal;
}

}  // namespace

SpinRegimeReport classify_spin_regime(const SpinModelParams& params, const std::vector<int>& sizes) {
  params.validate();
  const auto est = oracles::finite_chain_gap(params, sizes);
  SpinRegimeReport r;
  r.gap = est.gap;
  r.gap_uncertainty = est.uncertainty;
  r.ancilla_energy = 2.0 * params.Ba;
  r.window = std::sqrt(2.0) * params.Ja;
  r.regime = verdict(r.ancilla_energy, r.window, r.gap);
  r.uncertain = verdict(r.ancilla_energy, r.window, r.gap - r.gap_uncertainty) != r.regime ||
                verdict(r.ancilla_energy, r.window, r.gap + r.gap_uncertainty) != r.regime;
  return r;
}

}  // namespace gapchannel::spin
