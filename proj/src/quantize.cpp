#include "acsq/quantize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "acsq/quadrature.hpp"
#include "acsq/text.hpp"

namespace acsq {

namespace {

CheckReport make_report(std::string check, std::map<std::string, std::string> parameters, double tol) {
  CheckReport r;
  r.check = std::move(check);
  r.parameters = std::move(parameters);
  r.tolerance = tol;
  return r;
}

constexpr double kPi = std::numbers::pi;

double relative_deviation(double got, double want) {
  const double scale = std::abs(want);
  if (scale < 1e-300) return std::abs(got - want);
  return std::abs(got - want) / scale;
}

std::string point_list(std::span<const Vec2> xs) {
  return std::to_string(xs.size()) + " points";
}

}  // namespace

double affine_convolve(const FiducialSpec& spec, const Observable& u, Vec2 x, double rel_tol) {
  if (!(x.norm() > 0.0))
    throw Error(ErrorKind::InvalidArgument, "symbols live on the punctured plane; x must be nonzero");
  if (auto beta = u.growth(); beta && !spec.radial.moment_converges(*beta - 1.0))
    throw Error(ErrorKind::DivergentSymbol,
                "observable " + u.label() + " needs G_s at s=" + text::format_double(*beta - 1.0) +
                    ", which diverges for " + spec.radial.describe());

  quad::Options inner_opt;
  inner_opt.rel_tol = rel_tol * 0.1;
  quad::Options outer_opt;
  outer_opt.rel_tol = rel_tol;

  const double kappa = spec.kappa;
  std::vector<double> knots = spec.radial.knots();
  for (double& k : knots) k *= kappa;

  bool inner_failed = false;
  auto inner = [&](double phi) {
    const Vec2 rx = rotate(x, -phi);
    auto integrand = [&](double q) {
      if (!(q > 0.0)) return 0.0;
      const double g = spec.radial_value(q);
      if (g == 0.0) return 0.0;
      return g / q * u((1.0 / q) * rx);
    };
    const auto r = knots.empty()
                       ? quad::integrate_half_line(integrand, spec.radial_mode(), inner_opt)
                       : quad::integrate(integrand, std::span<const double>(knots), inner_opt);
    if (!r.converged) inner_failed = true;
    return r.value;
  };

  const auto& breaks = spec.angular.breakpoints();
  const auto outer = quad::integrate(
      [&](double phi) {
        const double f = spec.angular.value(phi);
        return f == 0.0 ? 0.0 : f * inner(phi);
      },
      std::span<const double>(breaks), outer_opt);

  if (inner_failed || !outer.converged)
    throw Error(ErrorKind::DivergentSymbol,
                "affine convolution of " + u.label() + " did not converge");
  return outer.value;
}

MultiplicationSymbol::MultiplicationSymbol(FiducialSpec spec, Observable u, double c_psi)
    : spec_(std::move(spec)), u_(std::move(u)), c_psi_(c_psi) {
  if (!(c_psi_ > 0.0)) throw Error(ErrorKind::Inadmissible, "c_psi must be positive");
}

MultiplicationSymbol::MultiplicationSymbol(FiducialSpec spec, Observable u)
    : MultiplicationSymbol(spec, std::move(u), compute_moments(spec, std::vector<double>{-1.0}).c_psi) {}

double MultiplicationSymbol::operator()(Vec2 x) const {
  return affine_convolve(spec_, u_, x) / c_psi_;
}

PositionSymbol position_symbol(const FiducialSpec&, const MomentSet& moments) {
  const auto& a = moments.angular;
  if (std::abs(a.fs) > 1e-10 * std::abs(a.f0))
    throw Error(ErrorKind::Anisotropy,
                "int f sin = " + text::format_double(a.fs) +
                    ": the position symbol is not proportional to x");
  PositionSymbol out;
  // The angular profile is only known up to quadrature error; an Fc this
  // small is a constant profile.
  if (std::abs(a.fc) <= 1e-10 * std::abs(a.f0)) {
    out.coefficient = 0.0;
    out.warnings.push_back(Warning::DegeneratePosition);
    return out;
  }
  out.coefficient = a.fc * moments.g.at(0.0) / moments.c_psi;
  return out;
}

KineticOperator kinetic_operator(const MomentSet& moments) {
  if (!moments.sigma)
    throw Error(ErrorKind::InvalidArgument, "kinetic operator needs sigma; run compute_sigma first");
  KineticOperator k;
  k.inverse_square_coeff = *moments.sigma;
  if (*moments.sigma < 1.0) k.warnings.push_back(Warning::SelfAdjointness);
  return k;
}

CheckReport identity_check(const FiducialSpec& spec, std::span<const Vec2> xs, double tol) {
  const double c_psi = compute_moments(spec, std::vector<double>{-1.0}).c_psi;
  const auto one = Observable::constant(1.0);
  auto r = make_report("identity", {{"fiducial", spec.radial.describe()}, {"angular", spec.angular.describe()},
                             {"kappa", text::format_double(spec.kappa)}, {"samples", point_list(xs)}},
                tol);
  for (const auto& x : xs) {
    const double dev = relative_deviation(affine_convolve(spec, one, x), c_psi);
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

CheckReport power_law_check(const FiducialSpec& spec, double beta, std::span<const Vec2> xs,
                            double tol) {
  const double s = beta - 1.0;
  const auto m = compute_moments(spec, std::vector<double>{s});
  const double coefficient = m.d.at(s) / m.c_psi;
  const MultiplicationSymbol symbol(spec, Observable::power(beta), m.c_psi);

  auto r = make_report("powerlaw",
                {{"beta", text::format_double(beta)},
                 {"fiducial", spec.radial.describe()},
                 {"coefficient", text::format_double(coefficient)},
                 {"samples", point_list(xs)}},
                tol);
  for (const auto& x : xs) {
    const double dev = relative_deviation(symbol(x), coefficient * std::pow(x.norm(), beta));
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

TestFunction gaussian_ring(double r0, double width) {
  return {"gaussian_ring(r0=" + text::format_double(r0) + ",w=" + text::format_double(width) + ")",
          [r0, width](double r, double) {
            const double z = (r - r0) / width;
            return std::exp(-0.5 * z * z);
          }};
}

TestFunction offset_gaussian(Vec2 center, double width) {
  return {"offset_gaussian(" + text::format_double(center.x) + "," + text::format_double(center.y) +
              ",w=" + text::format_double(width) + ")",
          [center, width](double r, double theta) {
            const double dx = r * std::cos(theta) - center.x;
            const double dy = r * std::sin(theta) - center.y;
            return std::exp(-0.5 * (dx * dx + dy * dy) / (width * width));
          }};
}

namespace {

// Field sampled on a polar grid, row-major in (radius, angle).
struct PolarField {
  int nr = 0, nt = 0;
  std::vector<double> v;
  double& at(int k, int m) { return v[static_cast<std::size_t>(k) * nt + m]; }
  double at(int k, int m) const { return v[static_cast<std::size_t>(k) * nt + m]; }
};

class PolarDifferentiator {
 public:
  explicit PolarDifferentiator(const PolarGrid& g) : nr_(g.n_r), nt_(g.n_theta) {
    if (g.n_r < 16 || g.n_theta < 8 || g.n_theta % 2 != 0 || !(g.r_min > 0.0) || !(g.r_max > g.r_min))
      throw Error(ErrorKind::GridError, "polar grid needs n_r >= 16, even n_theta >= 8, 0 < r_min < r_max");
    h_ = std::log(g.r_max / g.r_min) / (nr_ - 1);
    r_.resize(nr_);
    for (int k = 0; k < nr_; ++k) r_[k] = g.r_min * std::exp(k * h_);
    theta_.resize(nt_);
    for (int m = 0; m < nt_; ++m) theta_[m] = 2.0 * kPi * m / nt_;
    // Trigonometric-interpolation derivative matrix, even point count.
    dtheta_.assign(static_cast<std::size_t>(nt_) * nt_, 0.0);
    for (int m = 0; m < nt_; ++m)
      for (int j = 0; j < nt_; ++j)
        if (m != j) {
          const double sign = ((m - j) % 2 == 0) ? 1.0 : -1.0;
          dtheta_[static_cast<std::size_t>(m) * nt_ + j] =
              0.5 * sign / std::tan(0.5 * (theta_[m] - theta_[j]));
        }
  }

  int nr() const { return nr_; }
  int nt() const { return nt_; }
  double r(int k) const { return r_[k]; }
  double theta(int m) const { return theta_[m]; }
  static constexpr int kHalo = 4;

  PolarField sample(const std::function<double(double, double)>& fn) const {
    PolarField f{nr_, nt_, std::vector<double>(static_cast<std::size_t>(nr_) * nt_)};
    for (int k = 0; k < nr_; ++k)
      for (int m = 0; m < nt_; ++m) f.at(k, m) = fn(r_[k], theta_[m]);
    return f;
  }

  /// Cartesian derivative along axis (0 = x, 1 = y); valid for rows
  /// kHalo <= k < nr - kHalo.
  PolarField cartesian(const PolarField& f, int axis) const {
    static constexpr std::array<double, 4> c{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    PolarField out{nr_, nt_, std::vector<double>(f.v.size(), 0.0)};
    for (int k = kHalo; k < nr_ - kHalo; ++k) {
      for (int m = 0; m < nt_; ++m) {
        double ds = 0.0;
        for (int p = 0; p < 4; ++p) ds += c[p] * (f.at(k + p + 1, m) - f.at(k - p - 1, m));
        ds /= h_;
        double dt = 0.0;
        const double* row = &dtheta_[static_cast<std::size_t>(m) * nt_];
        for (int j = 0; j < nt_; ++j) dt += row[j] * f.at(k, j);
        const double cs = std::cos(theta_[m]), sn = std::sin(theta_[m]);
        const double dr = ds / r_[k];
        out.at(k, m) = axis == 0 ? cs * dr - sn * dt / r_[k] : sn * dr + cs * dt / r_[k];
      }
    }
    return out;
  }

 private:
  int nr_, nt_;
  double h_ = 0.0;
  std::vector<double> r_, theta_, dtheta_;
};

std::vector<CommutatorEntry> apply_commutators(double coefficient,
                                               std::span<const TestFunction> functions,
                                               const PolarGrid& grid) {
  const PolarDifferentiator diff(grid);
  std::vector<CommutatorEntry> out;
  for (const auto& tf : functions) {
    const PolarField psi = diff.sample(tf.fn);
    double peak = 0.0;
    for (double v : psi.v) peak = std::max(peak, std::abs(v));
    if (!(peak > 0.0)) throw Error(ErrorKind::InvalidArgument, "test function vanishes on the grid");

    for (int i = 0; i < 2; ++i) {
      const PolarField xi_psi = diff.sample([&](double r, double t) {
        return (i == 0 ? r * std::cos(t) : r * std::sin(t)) * tf.fn(r, t);
      });
      for (int j = 0; j < 2; ++j) {
        const PolarField d_psi = diff.cartesian(psi, j);
        const PolarField d_xi_psi = diff.cartesian(xi_psi, j);
        const double delta = i == j ? 1.0 : 0.0;
        double worst = 0.0, num = 0.0, den = 0.0;
        for (int k = PolarDifferentiator::kHalo; k < diff.nr() - PolarDifferentiator::kHalo; ++k) {
          for (int m = 0; m < diff.nt(); ++m) {
            const double xi = i == 0 ? diff.r(k) * std::cos(diff.theta(m))
                                     : diff.r(k) * std::sin(diff.theta(m));
            // C psi = -i c (x_i d_j psi - d_j (x_i psi)); store its imaginary part.
            const double im = -coefficient * (xi * d_psi.at(k, m) - d_xi_psi.at(k, m));
            worst = std::max(worst, std::abs(im - coefficient * delta * psi.at(k, m)));
            num += psi.at(k, m) * im;
            den += psi.at(k, m) * psi.at(k, m);
          }
        }
        out.push_back({tf.name, i, j, {0.0, num / den}, worst / peak});
      }
    }
  }
  return out;
}

}  // namespace

CommutatorReport commutator_check(const PositionSymbol& position,
                                  std::span<const TestFunction> functions, const PolarGrid& grid,
                                  double tol) {
  CommutatorReport rep;
  rep.summary.check = "commutator";
  rep.summary.tolerance = tol;
  rep.summary.parameters = {{"N0", text::format_double(position.coefficient)},
                            {"n_r", std::to_string(grid.n_r)},
                            {"n_theta", std::to_string(grid.n_theta)},
                            {"functions", std::to_string(functions.size())}};
  rep.summary.warnings = position.warnings;
  if (position.coefficient == 0.0) {
    rep.summary.skipped = true;
    rep.summary.pass = true;
    if (std::find(rep.summary.warnings.begin(), rep.summary.warnings.end(),
                  Warning::DegeneratePosition) == rep.summary.warnings.end())
      rep.summary.warnings.push_back(Warning::DegeneratePosition);
    return rep;
  }

  const auto coarse = apply_commutators(position.coefficient, functions, grid);
  const auto fine = apply_commutators(position.coefficient, functions, grid.refined());
  double self_conv = 0.0, worst = 0.0;
  for (std::size_t e = 0; e < fine.size(); ++e) {
    self_conv = std::max(self_conv, std::abs(fine[e].max_deviation - coarse[e].max_deviation));
    worst = std::max({worst, fine[e].max_deviation, coarse[e].max_deviation});
    rep.summary.deviations.push_back(coarse[e].max_deviation);
    rep.summary.deviations.push_back(fine[e].max_deviation);
  }
  if (self_conv > tol)
    throw Error(ErrorKind::GridTooCoarse,
                "commutator differs by " + text::format_double(self_conv) +
                    " between grid resolutions; refine the polar grid");
  rep.entries = fine;
  rep.summary.max_deviation = worst;
  rep.summary.pass = worst <= tol;
  return rep;
}

CheckReport covariance_check(const FiducialSpec& spec, const Observable& u, const GroupElement& g,
                             std::span<const Vec2> xs, double tol) {
  const auto moved = u.transformed(g);
  auto r = make_report("covariance",
                {{"observable", u.label()},
                 {"a", text::format_double(g.dilation())},
                 {"theta", text::format_double(g.rotation())},
                 {"b", text::format_double(g.translation().x) + "," + text::format_double(g.translation().y)},
                 {"samples", point_list(xs)}},
                tol);
  for (const auto& x : xs) {
    const double lhs = affine_convolve(spec, moved, x);
    const double rhs = affine_convolve(spec, u, g.dilation() * rotate(x, -g.rotation()));
    const double dev = relative_deviation(lhs, rhs);
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

CheckReport linearity_check(const FiducialSpec& spec, const Observable& u, const Observable& v,
                            double alpha, double beta, std::span<const Vec2> xs, double tol) {
  const auto sum = combine(alpha, u, beta, v);
  auto r = make_report("linearity", {{"u", u.label()}, {"v", v.label()}}, tol);
  for (const auto& x : xs) {
    const double lhs = affine_convolve(spec, sum, x);
    const double rhs = alpha * affine_convolve(spec, u, x) + beta * affine_convolve(spec, v, x);
    const double dev = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0);
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

std::vector<Vec2> sample_points(int count, double r_lo, double r_hi) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double t = count > 1 ? static_cast<double>(k) / (count - 1) : 0.0;
    const double r = r_lo * std::pow(r_hi / r_lo, t);
    out.push_back({r * std::cos(k * golden), r * std::sin(k * golden)});
  }
  return out;
}

}  // namespace acsq
