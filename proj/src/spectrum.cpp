#include "acsq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "acsq/error.hpp"
#include "acsq/tridiagonal.hpp"

namespace acsq {

std::string_view to_string(Mode m) {
  return m == Mode::PaperFormula ? "paper" : "derived";
}

void FrameParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw Error(ErrorKind::InvalidArgument, "trap frequency omega must be positive");
  if (!std::isfinite(Omega)) throw Error(ErrorKind::InvalidArgument, "Omega must be finite");
  if (varsigma != 0.0 && varsigma != 0.5)
    throw Error(ErrorKind::InvalidArgument, "varsigma is restricted to {0, 1/2}");
}

QuantumCoefficients QuantumCoefficients::from_moments(const MomentSet& m) {
  if (!m.sigma) throw Error(ErrorKind::InvalidArgument, "moment set carries no sigma");
  return {m.n0(), m.n1(), *m.sigma};
}

SpectralParams spectral_params(const FrameParams& p, const QuantumCoefficients& c, int l) {
  if (!(c.n1 > 0.0)) throw Error(ErrorKind::InvalidArgument, "N1 must be positive");
  if (c.sigma < 0.0) throw Error(ErrorKind::InvalidArgument, "sigma must be nonnegative");
  const double l_eff = l + p.varsigma;
  SpectralParams s;
  s.alpha = std::sqrt(c.sigma + l_eff * l_eff);
  s.omega_eff = p.omega * std::sqrt(2.0 * c.n1);
  s.osc_length = 1.0 / std::sqrt(p.mass * s.omega_eff);
  s.paper_l0 = std::pow(4.0 * c.n1 * p.mass * p.mass * p.omega * p.omega, -0.25);
  return s;
}

double laguerre(int n, double alpha, double t) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "Laguerre degree must be nonnegative");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - t;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - t) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double rotation_coupling(const FrameParams& p, const QuantumCoefficients& c, int l) {
  if (p.mode == Mode::PaperFormula) {
    // omega sqrt(2 N1) * (N0 / (2 sqrt(N1))) (Omega / omega) l
    return -p.omega * std::sqrt(2.0 * c.n1) * (c.n0 / (2.0 * std::sqrt(c.n1))) * (p.Omega / p.omega) * l;
  }
  return -c.n0 * p.Omega * (l + p.varsigma);
}

double eigenvalue(const FrameParams& p, const QuantumCoefficients& c, ModeIndex idx) {
  if (idx.n < 0) throw Error(ErrorKind::InvalidArgument, "radial index n must be nonnegative");
  const auto s = spectral_params(p, c, idx.l);
  return s.omega_eff * (2.0 * idx.n + 1.0 + s.alpha) + rotation_coupling(p, c, idx.l);
}

double eigenfunction_norm(int n, double alpha, double osc_length) {
  // int |phi|^2 d^2x = pi l^2 C^2 Gamma(n + alpha + 1) / n!
  const double log_c2 = std::lgamma(n + 1.0) - std::lgamma(n + alpha + 1.0);
  return std::exp(0.5 * log_c2) / (std::sqrt(std::numbers::pi) * osc_length);
}

std::complex<double> eigenfunction(const FrameParams& p, const QuantumCoefficients& c, ModeIndex idx,
                                   Vec2 x) {
  const auto s = spectral_params(p, c, idx.l);
  const double rho = x.norm() / s.osc_length;
  const double t = rho * rho;
  const double radial = eigenfunction_norm(idx.n, s.alpha, s.osc_length) * laguerre(idx.n, s.alpha, t) *
                        std::pow(rho, s.alpha) * std::exp(-0.5 * t);
  const double phase = (idx.l + p.varsigma) * x.angle();
  return std::polar(radial, phase);
}

std::vector<std::complex<double>> eigenfunction(const FrameParams& p, const QuantumCoefficients& c,
                                                ModeIndex idx, std::span<const Vec2> xs) {
  std::vector<std::complex<double>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(eigenfunction(p, c, idx, x));
  return out;
}

double critical_omega(const FrameParams& p, const QuantumCoefficients& c) {
  if (!(c.n0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "critical velocity needs N0 > 0");
  if (p.mode == Mode::PaperFormula) return 2.0 * std::sqrt(c.n1) / c.n0 * p.omega;
  return std::sqrt(2.0 * c.n1) / c.n0 * p.omega;
}

bool is_bounded(const FrameParams& p, const QuantumCoefficients& c) {
  return std::abs(p.Omega) < critical_omega(p, c);
}

std::vector<SignatureRow> sigma_signature(const FrameParams& p, const QuantumCoefficients& c,
                                          int l_lo, int l_hi) {
  const double e00 = eigenvalue(p, c, {0, 0});
  const double w = spectral_params(p, c, 0).omega_eff;
  std::vector<SignatureRow> out;
  for (int l = l_lo; l <= l_hi; ++l) {
    SignatureRow r;
    r.l = l;
    r.delta_e = eigenvalue(p, c, {0, l}) - e00;
    r.linear = w * std::abs(l);
    r.deviation = r.delta_e - r.linear;
    out.push_back(r);
  }
  return out;
}

double fit_sigma(std::span<const int> ls, std::span<const double> delta_e, double omega_eff,
                 double varsigma) {
  if (ls.size() != delta_e.size() || ls.empty())
    throw Error(ErrorKind::InvalidArgument, "fit_sigma needs matching, nonempty samples");
  auto cost = [&](double sigma) {
    double sum = 0.0;
    const double base = std::sqrt(sigma + varsigma * varsigma);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const double l = ls[i] + varsigma;
      const double model = omega_eff * (std::sqrt(sigma + l * l) - base);
      const double r = delta_e[i] - model;
      sum += r * r;
    }
    return sum;
  };
  const auto [best, value] = boost::math::tools::brent_find_minima(cost, 0.0, 1e4, 60);
  (void)value;
  return best;
}

std::vector<SpectrumRow> spectrum_table(const FrameParams& p, const QuantumCoefficients& c, int n_max,
                                        int l_lo, int l_hi) {
  p.validate();
  const bool bounded = is_bounded(p, c);
  std::vector<SpectrumRow> rows;
  for (int l = l_lo; l <= l_hi; ++l)
    for (int n = 0; n <= n_max; ++n) {
      SpectrumRow r;
      r.n = n;
      r.l = l;
      r.varsigma = p.varsigma;
      r.mode = p.mode;
      r.energy = eigenvalue(p, c, {n, l});
      r.coupling = rotation_coupling(p, c, l);
      r.bounded = bounded;
      rows.push_back(r);
    }
  return rows;
}

GaussRule gauss_laguerre(int points, double alpha) {
  if (points < 1 || !(alpha > -1.0))
    throw Error(ErrorKind::InvalidArgument, "Gauss-Laguerre needs points >= 1 and alpha > -1");
  std::vector<double> diag(static_cast<std::size_t>(points)), off(static_cast<std::size_t>(points - 1));
  for (int k = 0; k < points; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < points; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
  const auto eig = lowest_eigenpairs(diag, off, points);
  GaussRule rule;
  const double mass = std::tgamma(alpha + 1.0);
  for (int k = 0; k < points; ++k) {
    rule.nodes.push_back(eig.values[k]);
    const double v0 = eig.vector(k)[0];
    rule.weights.push_back(mass * v0 * v0);
  }
  return rule;
}

std::vector<double> gram_matrix(const FrameParams& p, const QuantumCoefficients& c, int l, int n_max) {
  const auto s = spectral_params(p, c, l);
  const auto rule = gauss_laguerre(2 * n_max + 8, s.alpha);
  const int dim = n_max + 1;
  // radial[n][k] = phi_{n,l}(r_k, 0) with r_k = l_osc sqrt(t_k)
  std::vector<std::vector<double>> radial(dim);
  for (int n = 0; n < dim; ++n)
    for (double t : rule.nodes)
      radial[n].push_back(eigenfunction(p, c, {n, l}, Vec2{s.osc_length * std::sqrt(t), 0.0}).real());

  std::vector<double> gram(static_cast<std::size_t>(dim) * dim, 0.0);
  const double area = std::numbers::pi * s.osc_length * s.osc_length;  // 2 pi r dr = pi l^2 dt
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      double sum = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t = rule.nodes[k];
        const double weight_fn = std::exp(s.alpha * std::log(t) - t);
        sum += rule.weights[k] * radial[a][k] * radial[b][k] / weight_fn;
      }
      gram[static_cast<std::size_t>(a) * dim + b] = area * sum;
    }
  return gram;
}

}  // namespace acsq
