#include "acsq/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "acsq/text.hpp"
#include "acsq/tridiagonal.hpp"

namespace acsq {

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw Error(ErrorKind::GridError, "radial grid needs 0 < r_min < r_max, got r_min=" +
                                          text::format_double(r_min) +
                                          " r_max=" + text::format_double(r_max));
  if (n < 64) throw Error(ErrorKind::GridError, "radial grid needs at least 64 points");
}

double RadialGrid::step() const {
  if (spacing == Spacing::Uniform) return (r_max - r_min) / (n + 1);
  return std::log(r_max / r_min) / (n + 1);
}

std::vector<double> RadialGrid::nodes() const {
  const double h = step();
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    r[i] = spacing == Spacing::Uniform ? r_min + (i + 1) * h : r_min * std::exp((i + 1) * h);
  return r;
}

std::vector<double> RadialGrid::weights() const {
  const double h = step();
  auto w = nodes();
  for (auto& x : w) x = spacing == Spacing::Uniform ? h : h * x;
  return w;
}

RadialGrid RadialGrid::halved() const {
  RadialGrid g = *this;
  g.n = 2 * (n + 1) - 1;
  return g;
}

RadialGrid default_grid(const FrameParams& p, const QuantumCoefficients& c, int n_max, int l_abs_max) {
  const auto s = spectral_params(p, c, l_abs_max);
  const double l_eff = l_abs_max + p.varsigma;
  const double alpha_max = std::sqrt(c.sigma + l_eff * l_eff);
  RadialGrid g;
  g.r_min = 1e-4 * s.osc_length;
  g.r_max = 8.0 * s.osc_length * std::sqrt(2.0 * n_max + alpha_max + 1.0);
  g.n = 4096;
  g.spacing = Spacing::Geometric;
  return g;
}

SectorOperator build_sector(const QuantumCoefficients& c, const FrameParams& p, int l,
                            const RadialGrid& grid, InnerBoundary inner) {
  grid.validate();
  p.validate();
  if (!(c.n1 > 0.0)) throw Error(ErrorKind::InvalidArgument, "N1 must be positive");
  if (c.sigma < 0.0) throw Error(ErrorKind::InvalidArgument, "sigma must be nonnegative");

  SectorOperator op;
  op.l = l;
  op.l_eff = l + p.varsigma;
  op.grid = grid;
  op.inner = inner;
  if (c.sigma < 1.0) op.warnings.push_back(Warning::BoundaryAmbiguity);

  const double m = p.mass;
  const double k2 = op.l_eff * op.l_eff + c.sigma;
  const double alpha = std::sqrt(k2);
  const double trap = c.n1 * m * p.omega * p.omega;
  const double h = grid.step();
  const auto r = grid.nodes();
  const int n = grid.n;
  op.diag.resize(static_cast<std::size_t>(n));
  op.offdiag.resize(static_cast<std::size_t>(n - 1));

  if (grid.spacing == Spacing::Uniform) {
    const double t = 1.0 / (2.0 * m * h * h);
    for (int i = 0; i < n; ++i)
      op.diag[i] = 2.0 * t + (k2 - 0.25) / (2.0 * m * r[i] * r[i]) + trap * r[i] * r[i];
    std::fill(op.offdiag.begin(), op.offdiag.end(), -t);
    if (inner == InnerBoundary::Regular) op.diag[0] -= t * std::pow(grid.r_min / r[0], alpha + 0.5);
  } else {
    // In x = ln r the operator is (-d2/dx2 + k2) / (2m r^2) + V; scaling by r
    // symmetrizes the generalized problem.
    for (int i = 0; i < n; ++i)
      op.diag[i] = (2.0 / (h * h) + k2) / (2.0 * m * r[i] * r[i]) + trap * r[i] * r[i];
    for (int i = 0; i + 1 < n; ++i) op.offdiag[i] = -1.0 / (2.0 * m * h * h * r[i] * r[i + 1]);
    if (inner == InnerBoundary::Regular)
      op.diag[0] -= std::exp(-alpha * h) / (2.0 * m * h * h * r[0] * r[0]);
  }
  return op;
}

SectorSolution solve_sector(const SectorOperator& op, int k) {
  if (k < 1 || k > op.grid.n / 4)
    throw Error(ErrorKind::InvalidArgument, "solve_sector needs 1 <= k <= N/4");
  const auto eig = lowest_eigenpairs(op.diag, op.offdiag, k);

  SectorSolution out;
  out.energies = eig.values;
  out.r = op.grid.nodes();
  out.weights = op.grid.weights();
  const double h = op.grid.step();
  const bool geometric = op.grid.spacing == Spacing::Geometric;
  for (int j = 0; j < k; ++j) {
    const auto y = eig.vector(j);
    std::vector<double> u(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      u[i] = geometric ? y[i] / std::sqrt(out.r[i] * h) : y[i] / std::sqrt(h);
    out.u.push_back(std::move(u));
  }
  return out;
}

double solver_rotation_shift(const FrameParams& p, const QuantumCoefficients& c, int l) {
  if (p.mode == Mode::PaperFormula)
    throw Error(ErrorKind::InvalidArgument,
                "the radial solver certifies the Hamiltonian-derived spectrum only");
  return -c.n0 * p.Omega * (l + p.varsigma);
}

std::vector<RadialGrid> grid_ladder(const RadialGrid& base, int rungs) {
  if (rungs < 1) throw Error(ErrorKind::InvalidArgument, "grid ladder needs at least one rung");
  std::vector<RadialGrid> out{base};
  for (int i = 1; i < rungs; ++i) out.push_back(out.back().halved());
  return out;
}

ConvergenceStudy convergence_study(const QuantumCoefficients& c, const FrameParams& p, int l, int k,
                                   std::span<const RadialGrid> ladder, InnerBoundary inner) {
  if (ladder.size() < 3)
    throw Error(ErrorKind::InvalidArgument, "convergence study needs at least three grids");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    const auto& a = ladder[i - 1];
    const auto& b = ladder[i];
    if (a.spacing != b.spacing || a.r_min != b.r_min || a.r_max != b.r_max || b.n + 1 != 2 * (a.n + 1))
      throw Error(ErrorKind::GridError, "each rung of the ladder must halve the previous step");
  }

  ConvergenceStudy study;
  study.l = l;
  study.rows.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) study.rows[j].n = j;
  for (const auto& g : ladder) {
    study.grid_n.push_back(g.n);
    const auto sol = solve_sector(build_sector(c, p, l, g, inner), k);
    for (int j = 0; j < k; ++j) study.rows[j].energies.push_back(sol.energies[j]);
  }

  for (auto& row : study.rows) {
    const auto& e = row.energies;
    const std::size_t m = e.size();
    for (std::size_t i = 2; i < m; ++i) {
      const double d0 = std::abs(e[i - 1] - e[i - 2]);
      const double d1 = std::abs(e[i] - e[i - 1]);
      // Differences at roundoff level cannot shrink any further.
      const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(e[i]);
      if (d1 >= d0 && d1 > floor)
        throw Error(ErrorKind::NonConvergent,
                    "eigenvalue n=" + std::to_string(row.n) + ", l=" + std::to_string(l) +
                        " does not converge under grid refinement");
    }
    const double fine = e[m - 1];
    const double mid = e[m - 2];
    const double coarse = e[m - 3];
    row.extrapolated = (4.0 * fine - mid) / 3.0;
    row.err_estimate = std::abs(row.extrapolated - fine);
    const double num = mid - coarse;
    const double den = fine - mid;
    row.order = den != 0.0 && num / den > 0.0 ? std::log2(num / den)
                                              : std::numeric_limits<double>::quiet_NaN();
  }
  return study;
}

double centrifugal_cancellation_check(const QuantumCoefficients& c, const FrameParams& p,
                                      const RadialGrid& grid) {
  grid.validate();
  const double m = p.mass;
  double worst = 0.0;
  constexpr int kAngles = 16;
  for (double r : grid.nodes())
    for (int j = 0; j < kAngles; ++j) {
      const double t = 2.0 * std::numbers::pi * j / kAngles;
      const double x = r * std::cos(t);
      const double y = r * std::sin(t);
      const double ax = m * c.n0 * p.Omega * y;
      const double ay = -m * c.n0 * p.Omega * x;
      const double kinetic = (ax * ax + ay * ay) / (2.0 * m);
      const double a0 = -0.5 * m * p.Omega * p.Omega * c.n0 * c.n0 * (x * x + y * y);
      if (kinetic == 0.0 && a0 == 0.0) continue;
      worst = std::max(worst, std::abs(kinetic + a0) / std::abs(kinetic));
    }
  return worst;
}

double near_origin_exponent(std::span<const double> r, std::span<const double> u, double r_lo) {
  if (r.size() != u.size()) throw Error(ErrorKind::InvalidArgument, "r and u differ in length");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_lo || r[i] > 10.0 * r_lo || u[i] == 0.0) continue;
    const double x = std::log(r[i]);
    const double y = std::log(std::abs(u[i]) / std::sqrt(r[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "too few samples for the exponent fit");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace acsq
