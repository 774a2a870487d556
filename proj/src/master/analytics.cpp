#include "gapchannel/master/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gapchannel/errors.hpp"

namespace gapchannel::master {

namespace {

using cplx = std::complex<double>;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double kPi = std::numbers::pi;
constexpr unsigned kMaxDepth = 20;

template <class F>
auto integrate(F f, double a, double b, double tol, double* err, double* l1) {
  return GK::integrate(f, a, b, kMaxDepth, tol, err, l1);
}

std::optional<double> resonant_momentum(const ChannelParams& p) {
  if (classify_harmonic_regime(p) != HarmonicRegime::Resonant || p.Omega == 0.0) return std::nullopt;
  const double s = std::sqrt(std::max(0.0, p.omega * p.omega - p.Omega0 * p.Omega0)) / (2.0 * p.Omega);
  return 2.0 * std::asin(std::min(1.0, s));
}

void check_van_hove(const ChannelParams& p) {
  const auto [lo, hi] = band_edges(p.Omega, p.Omega0);
  if (std::abs(p.omega - lo) < kVanHoveWindow || std::abs(p.omega - hi) < kVanHoveWindow) {
    std::ostringstream msg;
    msg << "omega = " << p.omega << " lies within " << kVanHoveWindow << " of a band edge [" << lo << ", " << hi
        << "]; the density of states diverges there";
    throw VanHoveError(msg.str());
  }
}

// PV int_0^pi cos(dk) / (omega_k^2 - omega^2) dk. With a resonance at k*,
// omega_k^2 - omega^2 = 4 Omega^2 sin((k + k*)/2) sin((k - k*)/2), so
// F(k) = cos(dk) (k - k*) / (omega_k^2 - omega^2) is smooth and the PV is
// taken symmetrically about k*.
double pv_integral(const ChannelParams& p, int d, std::optional<double> ks, double* err) {
  const double w2 = p.Omega * p.Omega;
  double l1 = 0.0;
  if (!ks) {
    auto g = [&](double k) { return 2.0 * w2 * (1.0 - std::cos(k)) + p.Omega0 * p.Omega0 - p.omega * p.omega; };
    return integrate([&](double k) { return std::cos(d * k) / g(k); }, 0.0, kPi, 1e-14, err, &l1);
  }
  const double k0 = *ks;
  auto F = [&](double k) {
    const double h = k - k0;
    const double ratio = std::abs(h) < 1e-8 ? 2.0 : h / std::sin(0.5 * h);
    return std::cos(d * k) * ratio / (4.0 * w2 * std::sin(0.5 * (k + k0)));
  };
  const double a = std::min(k0, kPi - k0);
  double e1 = 0.0, e2 = 0.0;
  const double sym = integrate([&](double h) { return (F(k0 + h) - F(k0 - h)) / h; }, 0.0, a, 1e-14, &e1, &l1);
  double rest = 0.0;
  if (k0 + a < kPi) {
    rest = integrate([&](double k) { return F(k) / (k - k0); }, k0 + a, kPi, 1e-14, &e2, &l1);
  } else if (k0 - a > 0.0) {
    rest = integrate([&](double k) { return F(k) / (k - k0); }, 0.0, k0 - a, 1e-14, &e2, &l1);
  }
  *err = e1 + e2;
  return sym + rest;
}

// Composite 20-point Gauss-Legendre on [0, pi] with enough panels to resolve
// `rate` radians of phase per unit k; the panel count is doubled until two
// successive results agree to `tol`.
template <class F>
auto oscillatory_integral(F f, double rate, double tol, const char* what) {
  using G = boost::math::quadrature::gauss<double, 20>;
  auto composite = [&](long panels) {
    const double w = kPi / static_cast<double>(panels);
    decltype(f(0.0)) acc{};
    for (long i = 0; i < panels; ++i) acc += G::integrate(f, i * w, (i + 1) * w);
    return acc;
  };
  long panels = std::max<long>(8, static_cast<long>(std::ceil(rate)));
  auto coarse = composite(panels);
  for (int attempt = 0; attempt < 6; ++attempt) {
    panels *= 2;
    const auto fine = composite(panels);
    if (std::abs(fine - coarse) <= tol * std::max(1.0, std::abs(fine))) return fine;
    coarse = fine;
  }
  throw ConsistencyError(std::string(what) + ": panel quadrature did not converge");
}

// (exp(i x) - 1) / (i x) scaled by t, x = delta t.
cplx ramp(double delta, double t) {
  const double x = delta * t;
  if (std::abs(x) < 1e-4) return t * cplx(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0);
  return (std::exp(cplx(0.0, x)) - 1.0) / cplx(0.0, delta);
}

// Mean of ramp(delta, t) over t in [t1, t2].
cplx ramp_average(double delta, double t1, double t2) {
  const double span = t2 - t1;
  if (std::abs(delta) * t2 < 1e-2) {
    // Series in delta: mean of t + i d t^2/2 - d^2 t^3/6 - i d^3 t^4/24 + d^4 t^5/120.
    auto mean_pow = [&](int n) { return (std::pow(t2, n + 1) - std::pow(t1, n + 1)) / ((n + 1) * span); };
    const double d = delta;
    return cplx(mean_pow(1) - d * d * mean_pow(3) / 6.0 + d * d * d * d * mean_pow(5) / 120.0,
                d * mean_pow(2) / 2.0 - d * d * d * mean_pow(4) / 24.0);
  }
  const cplx id(0.0, delta);
  return ((std::exp(cplx(0.0, delta * t2)) - std::exp(cplx(0.0, delta * t1))) / (id * span) - 1.0) / id;
}

template <class Kernel>
cplx c_integral(const ChannelParams& p, Pair pair, Sign sign, Kernel kernel, double t_max,
                const CCoefficientOptions& opts) {
  const int d = pair == Pair::SS ? 0 : p.d;
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  auto f = [&](double k) {
    const double wk = dispersion(p.Omega, p.Omega0, k);
    return std::cos(d * k) / wk * kernel(s * p.omega - wk);
  };
  const cplx r = oscillatory_integral(f, t_max * p.Omega + d + 1.0, opts.tol, "C coefficient");
  return r / (2.0 * kPi);
}

MasterCoefficients combine(const ChannelParams& p, const cplx& pss, const cplx& mss, const cplx& psr,
                           const cplx& msr) {
  MasterCoefficients c;
  c.regime = classify_harmonic_regime(p);
  c.k_star = resonant_momentum(p);
  c.x0 = pss.real() / (2.0 * p.omega);
  c.x1 = psr.real() / (2.0 * p.omega);
  c.y0 = (pss + mss).imag() / (2.0 * p.omega);
  c.y1 = (psr + msr).imag() / (2.0 * p.omega);
  return c;
}

}  // namespace

void ChannelParams::validate() const {
  if (!(Omega >= 0.0) || !std::isfinite(Omega)) throw ParameterError("Omega must be finite and >= 0");
  if (!(Omega0 > 0.0) || !std::isfinite(Omega0)) throw ParameterError("Omega0 must be finite and > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("omega must be finite and > 0");
  if (d < 0) throw ParameterError("separation d must be >= 0");
}

std::string to_string(HarmonicRegime r) {
  switch (r) {
    case HarmonicRegime::Virtual: return "virtual";
    case HarmonicRegime::Resonant: return "resonant";
    case HarmonicRegime::AboveBand: return "above-band";
  }
  return "unknown";
}

double dispersion(double Omega, double Omega0, double k) {
  const double s = std::sin(0.5 * k);
  return std::sqrt(4.0 * Omega * Omega * s * s + Omega0 * Omega0);
}

std::pair<double, double> band_edges(double Omega, double Omega0) {
  return {Omega0, std::sqrt(4.0 * Omega * Omega + Omega0 * Omega0)};
}

HarmonicRegime classify_harmonic_regime(const ChannelParams& p) {
  p.validate();
  const auto [lo, hi] = band_edges(p.Omega, p.Omega0);
  if (p.omega < lo) return HarmonicRegime::Virtual;
  if (p.omega <= hi) return HarmonicRegime::Resonant;
  return HarmonicRegime::AboveBand;
}

std::complex<double> vacuum_correlation(double Omega, double Omega0, int d, double tau) {
  if (!(Omega0 > 0.0)) {
    throw ParameterError("vacuum_correlation: Omega0 must be positive (infrared divergence at Omega0 = 0)");
  }
  if (Omega < 0.0) throw ParameterError("vacuum_correlation: Omega must be >= 0");
  auto f = [&](double k) {
    const double wk = dispersion(Omega, Omega0, k);
    return std::cos(d * k) * std::exp(cplx(0.0, -wk * tau)) / wk;
  };
  const cplx r = oscillatory_integral(f, std::abs(tau) * Omega + d + 1.0, 1e-12, "vacuum_correlation");
  return r / (2.0 * kPi);
}

std::complex<double> c_coefficient(const ChannelParams& p, Pair pair, Sign sign, double t,
                                   const CCoefficientOptions& opts) {
  p.validate();
  if (!(t >= 0.0)) throw ParameterError("c_coefficient: t must be >= 0");
  if (t > opts.t_cap) {
    std::ostringstream msg;
    msg << "c_coefficient: t = " << t << " exceeds the cap " << opts.t_cap;
    throw RegimeError(msg.str());
  }
  if (t == 0.0) return 0.0;
  return c_integral(p, pair, sign, [t](double delta) { return ramp(delta, t); }, t, opts);
}

MasterCoefficients asymptotic_coefficients(const ChannelParams& p) {
  p.validate();
  check_van_hove(p);
  MasterCoefficients c;
  c.regime = classify_harmonic_regime(p);
  c.k_star = resonant_momentum(p);
  if (c.k_star) {
    const double rate = 1.0 / (4.0 * p.omega * p.Omega * p.Omega * std::sin(*c.k_star));
    c.x0 = rate;
    c.x1 = std::cos(p.d * *c.k_star) * rate;
  }
  double e0 = 0.0, e1 = 0.0;
  const double scale = -1.0 / (2.0 * kPi * p.omega);
  if (p.Omega == 0.0) {
    // Flat band: only d = 0 survives.
    const double g = p.Omega0 * p.Omega0 - p.omega * p.omega;
    c.y0 = scale * kPi / g;
    c.y1 = p.d == 0 ? c.y0 : 0.0;
  } else {
    c.y0 = scale * pv_integral(p, 0, c.k_star, &e0);
    c.y1 = scale * pv_integral(p, p.d, c.k_star, &e1);
  }
  c.quadrature_error = std::abs(scale) * std::max(e0, e1);
  return c;
}

MasterCoefficients finite_time_coefficients(const ChannelParams& p, double t, const CCoefficientOptions& opts) {
  return combine(p, c_coefficient(p, Pair::SS, Sign::Plus, t, opts), c_coefficient(p, Pair::SS, Sign::Minus, t, opts),
                 c_coefficient(p, Pair::SR, Sign::Plus, t, opts), c_coefficient(p, Pair::SR, Sign::Minus, t, opts));
}

PlateauResult plateau_coefficients(const ChannelParams& p, double t0, double rel, const CCoefficientOptions& opts) {
  p.validate();
  if (!(t0 > 0.0)) throw ParameterError("plateau_coefficients: t0 must be positive");
  // Window averages over [t, 2t] remove the slowly decaying band-edge
  // oscillations (~ t^{-1/2}) that make single-time values useless.
  auto window = [&](double t1) {
    auto c = [&](Pair pair, Sign sign) {
      return c_integral(p, pair, sign, [t1](double delta) { return ramp_average(delta, t1, 2.0 * t1); }, 2.0 * t1,
                        opts);
    };
    return combine(p, c(Pair::SS, Sign::Plus), c(Pair::SS, Sign::Minus), c(Pair::SR, Sign::Plus),
                   c(Pair::SR, Sign::Minus));
  };
  auto as_array = [](const MasterCoefficients& c) { return std::array<double, 4>{c.x0, c.x1, c.y0, c.y1}; };
  MasterCoefficients prev = window(t0);
  for (double t = 2.0 * t0; 2.0 * t <= opts.t_cap; t *= 2.0) {
    const MasterCoefficients cur = window(t);
    const auto a = as_array(prev);
    const auto b = as_array(cur);
    double scale = 0.0, change = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      scale = std::max(scale, std::abs(b[i]));
      change = std::max(change, std::abs(b[i] - a[i]));
    }
    if (change <= rel * scale) return {cur, t, change / scale};
    prev = cur;
  }
  throw ConsistencyError("plateau_coefficients: no plateau before t_cap");
}

std::pair<double, double> occupations_analytic(const MasterCoefficients& c, double Ja, double nS0, double nR0,
                                               double t) {
  if (!(t >= 0.0)) throw ParameterError("occupations_analytic: t must be >= 0");
  const double g = 2.0 * Ja * Ja;
  const double sum = 0.5 * (nS0 + nR0) * std::cosh(g * c.x1 * t);
  const double diff = 0.5 * (nS0 - nR0) * std::cos(g * c.y1 * t);
  const double damp = std::exp(-g * c.x0 * t);
  return {(sum + diff) * damp, (sum - diff) * damp};
}

std::vector<double> full_transfer_times(const MasterCoefficients& c, double Ja, int count) {
  if (c.regime != HarmonicRegime::Virtual) {
    throw RegimeError("full transfer times are defined only in the virtual regime (regime: " + to_string(c.regime) +
                      ")");
  }
  if (Ja <= 0.0 || c.y1 == 0.0) throw ParameterError("full_transfer_times: need Ja > 0 and y1 != 0");
  std::vector<double> out;
  for (int n = 1; n <= count; ++n) out.push_back((2 * n - 1) * kPi / (2.0 * Ja * Ja * std::abs(c.y1)));
  return out;
}

double oscillation_frequency_quadrature(const ChannelParams& p, double Ja) {
  p.validate();
  if (p.omega >= p.Omega0) {
    throw RegimeError("oscillation frequency integral needs omega < Omega0 (otherwise the contour crosses a pole)");
  }
  const double w2 = p.Omega * p.Omega;
  const double gap = p.Omega0 * p.Omega0 - p.omega * p.omega;
  double err = 0.0, l1 = 0.0;
  const double integral = integrate(
      [&](double k) {
        const double s = std::sin(0.5 * k);
        return std::cos(p.d * k) / (4.0 * w2 * s * s + gap);
      },
      0.0, kPi, 1e-14, &err, &l1);
  // symmetric integrand: int_{-pi}^{pi} = 2 int_0^pi
  return -Ja * Ja / (2.0 * kPi * p.omega) * 2.0 * integral;
}

ResidueFrequency oscillation_frequency_residue(const ChannelParams& p, double Ja) {
  p.validate();
  if (p.Omega == 0.0) throw RegimeError("residue closed form needs Omega > 0");
  const double alpha = (p.Omega0 * p.Omega0 - p.omega * p.omega) / (4.0 * p.Omega * p.Omega);
  if (!(alpha > 0.0)) throw RegimeError("residue closed form needs alpha > 0 (virtual regime)");
  const double root = std::sqrt(alpha * alpha + alpha);
  const double z = 2.0 * root - (2.0 * alpha + 1.0);
  const double pre = -Ja * Ja / (8.0 * p.omega * p.Omega * p.Omega * root);
  const int d = std::abs(p.d);

  ResidueFrequency out;
  out.quadrature = oscillation_frequency_quadrature(p, Ja);
  out.candidates = {
      {"printed", pre * (std::pow(z, d) + std::pow(z, -d))},
      {"decaying", pre * 2.0 * std::pow(z, d)},
      {"decaying-abs", pre * 2.0 * std::pow(std::abs(z), d)},
  };
  double best = INFINITY;
  for (const auto& [name, value] : out.candidates) {
    const double dev = std::abs(value - out.quadrature) / std::abs(out.quadrature);
    if (dev < best) {
      best = dev;
      out.branch = name;
      out.frequency = value;
      out.relative_deviation = dev;
    }
    if (dev < 1e-6) break;
  }
  if (best > 1e-3) {
    std::ostringstream msg;
    msg << "no residue branch matches the quadrature value " << out.quadrature << " (best relative deviation " << best
        << ")";
    throw ConsistencyError(msg.str());
  }
  return out;
}

TimeSeries master_solve(const ChannelParams& p, double Ja, double nS0, double nR0, const std::vector<double>& times) {
  const MasterCoefficients c = asymptotic_coefficients(p);
  TimeSeries series("t", {"n_S", "n_R"});
  for (double t : times) {
    const auto [ns, nr] = occupations_analytic(c, Ja, nS0, nR0, t);
    series.append(t, {ns, nr});
  }
  auto& md = series.metadata();
  md["method"] = "asymptotic master-equation coefficients";
  md["regime"] = to_string(c.regime);
  md["x0"] = c.x0;
  md["x1"] = c.x1;
  md["y0"] = c.y0;
  md["y1"] = c.y1;
  if (c.k_star) md["k_star"] = *c.k_star;
  md["quadrature_error"] = c.quadrature_error;
  return series;
}

}  // namespace gapchannel::master
