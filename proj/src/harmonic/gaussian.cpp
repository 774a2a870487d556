#include "gapchannel/harmonic/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gapchannel/errors.hpp"

namespace gapchannel::harmonic {

void HarmonicModelParams::validate() const {
  if (N < 3) throw ParameterError("harmonic chain needs N >= 3");
  if (mS < 1 || mR > N || mS >= mR) throw ParameterError("attachment sites must satisfy 1 <= mS < mR <= N");
  if (!(Omega > 0.0)) throw ParameterError("coupling frequency Omega must be positive");
  if (!(Omega0 >= 0.0)) throw ParameterError("pinning frequency Omega0 must be >= 0");
  if (!(omega > 0.0)) throw ParameterError("ancilla frequency omega must be positive");
  if (!(Ja >= 0.0) || !std::isfinite(Ja)) throw ParameterError("ancilla coupling Ja must be finite and >= 0");
}

int HarmonicModelParams::separation() const {
  const int d = mR - mS;
  return std::min(d, N - d);
}

QuadraticHamiltonian potential_matrix(const HarmonicModelParams& params) {
  params.validate();
  const int n = params.N;
  const Eigen::Index m = n + 2;
  const double w2 = params.Omega * params.Omega;
  QuadraticHamiltonian h{Eigen::MatrixXd::Zero(m, m)};
  for (int j = 0; j < n; ++j) {
    h.V(j, j) = 2.0 * w2 + params.Omega0 * params.Omega0;
    const int next = (j + 1) % n;
    h.V(j, next) -= w2;
    h.V(next, j) -= w2;
  }
  const int s = sender_index(params);
  const int r = receiver_index(params);
  h.V(s, s) = h.V(r, r) = params.omega * params.omega;
  h.V(s, params.mS - 1) = h.V(params.mS - 1, s) = params.Ja;
  h.V(r, params.mR - 1) = h.V(params.mR - 1, r) = params.Ja;

  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h.V, Eigen::EigenvaluesOnly).eigenvalues();
  if (ev(0) < -1e-12 * std::max(1.0, ev(m - 1))) {
    std::ostringstream msg;
    msg << "potential matrix is indefinite: most negative eigenvalue " << ev(0);
    throw StabilityError(msg.str(), ev(0));
  }
  return h;
}

Eigen::MatrixXd symplectic_form(Eigen::Index modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  j.topRightCorner(modes, modes).setIdentity();
  j.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
  return j;
}

Eigen::MatrixXd chain_ground_covariance(int N, double Omega, double Omega0) {
  if (N < 1) throw ParameterError("chain_ground_covariance: N must be positive");
  if (!(Omega0 > 0.0)) throw ParameterError("chain_ground_covariance: Omega0 = 0 gives a divergent zero mode");
  std::vector<double> cq(static_cast<std::size_t>(N), 0.0);
  std::vector<double> cp(static_cast<std::size_t>(N), 0.0);
  for (int n = 0; n < N; ++n) {
    const double k = 2.0 * std::numbers::pi * n / N;
    const double s = std::sin(0.5 * k);
    const double wk = std::sqrt(4.0 * Omega * Omega * s * s + Omega0 * Omega0);
    for (int d = 0; d < N; ++d) {
      const double c = std::cos(k * d);
      cq[static_cast<std::size_t>(d)] += c / (2.0 * wk);
      cp[static_cast<std::size_t>(d)] += c * wk / 2.0;
    }
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (int j = 0; j < N; ++j) {
    for (int l = 0; l < N; ++l) {
      const auto d = static_cast<std::size_t>(((j - l) % N + N) % N);
      cov(j, l) = cq[d] / N;
      cov(N + j, N + l) = cp[d] / N;
    }
  }
  return cov;
}

GaussianState initial_gaussian(const HarmonicModelParams& params, double nS0) {
  params.validate();
  if (!(nS0 >= 0.0)) throw ParameterError("initial occupation nS0 must be >= 0");
  const Eigen::Index m = params.N + 2;
  GaussianState st{Eigen::VectorXd::Zero(2 * m), Eigen::MatrixXd::Zero(2 * m, 2 * m)};
  const Eigen::MatrixXd chain = chain_ground_covariance(params.N, params.Omega, params.Omega0);
  const Eigen::Index n = params.N;
  st.cov.topLeftCorner(n, n) = chain.topLeftCorner(n, n);
  st.cov.block(m, m, n, n) = chain.bottomRightCorner(n, n);
  for (int a : {sender_index(params), receiver_index(params)}) {
    st.cov(a, a) = 1.0 / (2.0 * params.omega);
    st.cov(m + a, m + a) = params.omega / 2.0;
  }
  st.mean(sender_index(params)) = std::sqrt(2.0 * nS0 / params.omega);
  return st;
}

namespace {

// sin(nu t)/nu, continuous at nu -> 0.
double sin_over(double nu, double t) {
  const double x = nu * t;
  if (std::abs(x) < 1e-6) return t * (1.0 - x * x / 6.0);
  return std::sin(x) / nu;
}

}  // namespace

NormalModes::NormalModes(const QuadraticHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.V);
  O_ = es.eigenvectors();
  nu_ = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
}

Eigen::MatrixXd NormalModes::propagator(double t) const {
  const Eigen::Index m = nu_.size();
  Eigen::VectorXd c(m), sn(m), sp(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    c(a) = std::cos(nu_(a) * t);
    sn(a) = sin_over(nu_(a), t);
    sp(a) = -nu_(a) * std::sin(nu_(a) * t);
  }
  Eigen::MatrixXd s(2 * m, 2 * m);
  s.topLeftCorner(m, m) = O_ * c.asDiagonal() * O_.transpose();
  s.topRightCorner(m, m) = O_ * sn.asDiagonal() * O_.transpose();
  s.bottomLeftCorner(m, m) = O_ * sp.asDiagonal() * O_.transpose();
  s.bottomRightCorner(m, m) = s.topLeftCorner(m, m);
  return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> NormalModes::coordinate_rows(Eigen::Index i, double t) const {
  const Eigen::Index m = nu_.size();
  Eigen::VectorXd c(m), sn(m), sp(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const double o = O_(i, a);
    c(a) = o * std::cos(nu_(a) * t);
    sn(a) = o * sin_over(nu_(a), t);
    sp(a) = -o * nu_(a) * std::sin(nu_(a) * t);
  }
  Eigen::VectorXd rq(2 * m), rp(2 * m);
  rq.head(m) = O_ * c;
  rq.tail(m) = O_ * sn;
  rp.head(m) = O_ * sp;
  rp.tail(m) = rq.head(m);
  return {rq, rp};
}

Eigen::MatrixXd symplectic_propagator(const QuadraticHamiltonian& h, double t) { return NormalModes(h).propagator(t); }

GaussianState evolve_gaussian(const GaussianState& state, const Eigen::MatrixXd& propagator) {
  GaussianState out;
  out.mean = propagator * state.mean;
  out.cov = propagator * state.cov * propagator.transpose();
  return out;
}

GaussianState evolve_gaussian(const GaussianState& state, const QuadraticHamiltonian& h, double t) {
  return evolve_gaussian(state, symplectic_propagator(h, t));
}

double occupation_from_moments(double var_q, double var_p, double mean_q, double mean_p, double f) {
  if (!(f > 0.0)) throw ParameterError("occupation frequency must be positive");
  return 0.5 * (f * var_q + var_p / f - 1.0) + 0.5 * (f * mean_q * mean_q + mean_p * mean_p / f);
}

double mode_occupation(const GaussianState& state, Eigen::Index site, double f) {
  const Eigen::Index m = state.modes();
  return occupation_from_moments(state.cov(site, site), state.cov(m + site, m + site), state.mean(site),
                                 state.mean(m + site), f);
}

double gaussian_energy(const GaussianState& state, const QuadraticHamiltonian& h) {
  const Eigen::Index m = h.modes();
  const double second = (h.V.cwiseProduct(state.cov.topLeftCorner(m, m))).sum() + state.cov.bottomRightCorner(m, m).trace();
  const Eigen::VectorXd q = state.mean.head(m);
  const Eigen::VectorXd p = state.mean.tail(m);
  return 0.5 * second + 0.5 * (q.dot(h.V * q) + p.squaredNorm());
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const Eigen::Index n2 = cov.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::MatrixXd root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                               es.eigenvectors().transpose();
  const Eigen::MatrixXd a = root * symplectic_form(n2 / 2) * root;  // antisymmetric, eigenvalues +-i nu
  const Eigen::MatrixXd ata = a.transpose() * a;
  Eigen::VectorXd sq = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ata, Eigen::EigenvaluesOnly).eigenvalues();
  Eigen::VectorXd nu(n2 / 2);
  for (Eigen::Index i = 0; i < n2 / 2; ++i) nu(i) = std::sqrt(std::max(0.0, 0.5 * (sq(2 * i) + sq(2 * i + 1))));
  return nu;
}

double symplectic_defect(const Eigen::MatrixXd& S) {
  const Eigen::MatrixXd j = symplectic_form(S.rows() / 2);
  return (S.transpose() * j * S - j).cwiseAbs().maxCoeff();
}

TimeSeries simulate_occupations(const HarmonicModelParams& params, double nS0, const std::vector<double>& times,
                                const OccupationOptions& opts) {
  const QuadraticHamiltonian h = potential_matrix(params);
  const GaussianState init = initial_gaussian(params, nS0);
  const NormalModes modes(h);
  const Eigen::Index m = h.modes();
  const Eigen::Index s = sender_index(params);
  const Eigen::Index r = receiver_index(params);

  // Initial moments in the normal-mode basis; each mode's energy is then
  // read from its own 2x2 block.
  const Eigen::MatrixXd& O = modes.basis();
  const Eigen::VectorXd& nu = modes.frequencies();
  const Eigen::VectorXd mq = O.transpose() * init.mean.head(m);
  const Eigen::VectorXd mp = O.transpose() * init.mean.tail(m);
  const Eigen::VectorXd gqq = (O.transpose() * init.cov.topLeftCorner(m, m) * O).diagonal();
  const Eigen::VectorXd gpp = (O.transpose() * init.cov.bottomRightCorner(m, m) * O).diagonal();
  const Eigen::VectorXd gqp = (O.transpose() * init.cov.topRightCorner(m, m) * O).diagonal();

  TimeSeries series("t", {"n_S", "n_R", "energy"});
  double min_occupation = 0.0;
  for (double t : times) {
    auto occupation = [&](Eigen::Index i) {
      const auto [rq, rp] = modes.coordinate_rows(i, t);
      return occupation_from_moments(rq.dot(init.cov * rq), rp.dot(init.cov * rp), rq.dot(init.mean),
                                     rp.dot(init.mean), params.omega);
    };
    const double ns = occupation(s);
    const double nr = occupation(r);
    double e = 0.0;
    for (Eigen::Index a = 0; a < m; ++a) {
      const double c = std::cos(nu(a) * t);
      const double sn = std::sin(nu(a) * t);
      const double so = sin_over(nu(a), t);
      const double qq = c * c * gqq(a) + 2.0 * c * so * gqp(a) + so * so * gpp(a);
      const double pp = nu(a) * nu(a) * sn * sn * gqq(a) - 2.0 * nu(a) * sn * c * gqp(a) + c * c * gpp(a);
      const double q = c * mq(a) + so * mp(a);
      const double p = -nu(a) * sn * mq(a) + c * mp(a);
      e += 0.5 * (nu(a) * nu(a) * (qq + q * q) + pp + p * p);
    }
    series.append(t, {ns, nr, e});
    min_occupation = std::min({min_occupation, ns, nr});
  }

  auto& md = series.metadata();
  md["method"] = "exact normal-mode propagation of first and second moments";
  md["initial_state"] = "chain ground state, receiver vacuum, sender coherent";
  md["nS0"] = nS0;
  md["min_occupation"] = min_occupation;
  double max_purity_dev = 0.0;
  double max_defect = 0.0;
  for (double t : opts.purity_check_times) {
    const Eigen::MatrixXd S = modes.propagator(t);
    max_defect = std::max(max_defect, symplectic_defect(S));
    const GaussianState st = evolve_gaussian(init, S);
    max_purity_dev = std::max(max_purity_dev, (symplectic_eigenvalues(st.cov).array() - 0.5).abs().maxCoeff());
  }
  if (!opts.purity_check_times.empty()) {
    md["purity_check_times"] = opts.purity_check_times;
    md["max_purity_deviation"] = max_purity_dev;
    md["max_symplectic_defect"] = max_defect;
  }
  return series;
}

}  // namespace gapchannel::harmonic
