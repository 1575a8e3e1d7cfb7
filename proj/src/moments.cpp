#include "acsq/moments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "acsq/quadrature.hpp"
#include "acsq/text.hpp"

namespace acsq {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

quad::Options radial_options() {
  quad::Options o;
  o.rel_tol = 1e-13;
  return o;
}

// Integrates h over the radial profile's support: knot panels for
// tabulated data, the split half line otherwise.
template <class F>
quad::Result integrate_radial(const RadialProfile& g, F&& h) {
  if (g.support()) {
    const auto knots = g.knots();
    return quad::integrate(h, std::span<const double>(knots), radial_options());
  }
  return quad::integrate_half_line(h, g.mode(), radial_options());
}

void check_cross(double got, double want, double scale, const char* name) {
  if (std::abs(got - want) > 1e-12 * scale)
    throw Error(ErrorKind::QuadratureFailure,
                std::string("angular integral ") + name + " disagrees with its closed form: " +
                    text::format_double(got) + " vs " + text::format_double(want));
}

}  // namespace

AngularIntegrals angular_integrals(const AngularProfile& f) {
  const auto& breaks = f.breakpoints();
  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;

  auto run = [&](auto&& h, const char* name) {
    const auto r = quad::integrate(h, std::span<const double>(breaks), opt);
    if (!r.converged)
      throw Error(ErrorKind::NonIntegrableAngular,
                  std::string("angular integral ") + name + " did not converge");
    return r.value;
  };

  AngularIntegrals out;
  out.f0 = run([&](double t) { return f.value(t); }, "F0");
  out.fc = run([&](double t) { return f.value(t) * std::cos(t); }, "Fc");
  out.fs = run([&](double t) { return f.value(t) * std::sin(t); }, "Fs");
  out.fder = run(
      [&](double t) {
        const double v = f.value(t);
        const double dv = f.derivative(t);
        if (v <= 0.0) return dv == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return dv * dv / (4.0 * v);
      },
      "Fder");

  if (f.kind() == AngularProfile::Kind::PaperCosine) {
    check_cross(out.f0, kPi2, kPi2, "F0");
    check_cross(out.fc, kPi2 / 2.0, kPi2, "Fc");
    check_cross(out.fs, 0.0, kPi2, "Fs");
    check_cross(out.fder, kPi2 / 4.0, kPi2, "Fder");
  }
  return out;
}

double radial_moment(const RadialProfile& g, double s) {
  if (!g.moment_converges(s))
    throw DivergentMoment(s, "G_s diverges for s=" + text::format_double(s) + " (" +
                                 g.describe() + " needs nu > s + 2)");
  const double power = -(s + 2.0);
  const auto r = integrate_radial(g, [&](double q) { return std::pow(q, power) * g.value(q); });
  if (!r.converged || !(r.value > 0.0))
    throw DivergentMoment(s, "G_s quadrature failed for s=" + text::format_double(s));
  return r.value;
}

double MomentSet::ladder(double s) const {
  auto it = n.find(s);
  if (it == n.end())
    throw Error(ErrorKind::InvalidArgument,
                "moment N_s for s=" + text::format_double(s) + " was not computed");
  return it->second;
}

MomentSet compute_moments(const FiducialSpec& spec, std::span<const double> orders) {
  MomentSet m;
  m.kappa = spec.kappa;
  m.angular = angular_integrals(spec.angular);

  std::vector<double> all(orders.begin(), orders.end());
  all.push_back(-1.0);
  for (double s : all) {
    if (m.g.count(s)) continue;
    m.g[s] = std::pow(spec.kappa, -(s + 1.0)) * radial_moment(spec.radial, s);
  }

  const double f0 = m.angular.f0;
  m.c_psi = f0 * m.g.at(-1.0);
  if (!std::isfinite(m.c_psi) || !(m.c_psi > 0.0))
    throw Error(ErrorKind::Inadmissible, "admissibility constant c_psi is not finite and positive");

  for (const auto& [s, gs] : m.g) {
    m.d[s] = f0 * gs;
    m.n[s] = gs / (2.0 * m.g.at(-1.0));
  }
  m.n[-1.0] = 0.5;
  return m;
}

SigmaResult compute_sigma(const FiducialSpec& spec) {
  const auto& g = spec.radial;
  // A table ending on a nonzero value is a jump of psi: infinite gradient.
  if (g.kind() == RadialProfile::Kind::Tabulated && g.samples().back().value != 0.0)
    throw Error(ErrorKind::DivergentSigma, "radial table does not decay to zero at its last sample");

  const auto radial = integrate_radial(g, [&](double q) { return g.gradient_density(q); });
  if (!radial.converged || !std::isfinite(radial.value))
    throw Error(ErrorKind::DivergentSigma, "radial gradient integral of sqrt(g) diverges");

  const auto ang = angular_integrals(spec.angular);
  // Both pieces are invariant under q -> q / kappa, so the undilated profile suffices.
  const double g_inv = radial_moment(g, -1.0);
  const double c_psi = ang.f0 * g_inv;

  SigmaResult out;
  out.radial_part = ang.f0 * radial.value / c_psi;
  out.angular_part = ang.fder * g_inv / c_psi;
  out.sigma = out.radial_part + out.angular_part;
  if (!(out.sigma > 0.0))
    throw Error(ErrorKind::DivergentSigma, "sigma is not positive; fiducial is not differentiable");
  if (out.sigma < 1.0) out.warnings.push_back(Warning::SelfAdjointness);
  return out;
}

MomentSet analyze(const FiducialSpec& spec, std::span<const double> orders) {
  MomentSet m = compute_moments(spec, orders);
  m.sigma = compute_sigma(spec).sigma;
  return m;
}

}  // namespace acsq
