#include "acsq/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "acsq/error.hpp"

namespace acsq {

std::string_view to_string(Verdict v) {
  return v == Verdict::Bounded ? "bounded" : "escape";
}

namespace {

using State = std::array<double, 4>;  // qx, qy, vx, vy

}  // namespace

double growth_exponent(const FrameParams& p) {
  const double k = p.omega * p.omega - p.Omega * p.Omega;
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 2) = 1.0;
  a(1, 3) = 1.0;
  a(2, 0) = -k;
  a(2, 3) = 2.0 * p.Omega;
  a(3, 1) = -k;
  a(3, 2) = -2.0 * p.Omega;
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(a, false);
  return solver.eigenvalues().real().maxCoeff();
}

std::vector<double> trap_periods(const FrameParams& p, double periods, int samples_per_period) {
  const double period = 2.0 * std::numbers::pi / p.omega;
  const int count = static_cast<int>(std::ceil(periods * samples_per_period));
  std::vector<double> t(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) t[i] = period * periods * i / count;
  return t;
}

ClassicalResult classical_trajectory(const FrameParams& p, const ClassicalState& initial,
                                     std::span<const double> times, double escape_factor) {
  p.validate();
  if (times.empty() || !std::is_sorted(times.begin(), times.end()))
    throw Error(ErrorKind::InvalidArgument, "time grid must be nonempty and ascending");

  ClassicalResult out;
  out.stiffness = p.omega * p.omega - p.Omega * p.Omega;
  out.marginal = std::abs(out.stiffness) <= 1e-12 * p.omega * p.omega;
  out.energy_bounded_below = out.stiffness >= 0.0 || out.marginal;
  out.growth_exponent = growth_exponent(p);
  out.initial_scale = std::max(std::hypot(initial.qx, initial.qy),
                               std::hypot(initial.vx, initial.vy) / p.omega);

  const double k = out.stiffness;
  const double w = p.Omega;
  auto rhs = [k, w](const State& s, State& ds, double) {
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = 2.0 * w * s[3] - k * s[0];
    ds[3] = -2.0 * w * s[2] - k * s[1];
  };

  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(1e-11, 1e-11, ode::runge_kutta_dopri5<State>());
  State state{initial.qx, initial.qy, initial.vx, initial.vy};
  std::vector<double> grid(times.begin(), times.end());
  const double dt0 = grid.size() > 1 ? (grid[1] - grid[0]) / 4.0 : 1e-3;

  try {
    ode::integrate_times(
        stepper, rhs, state, grid.begin(), grid.end(), dt0,
        [&out](const State& s, double t) { out.samples.push_back({t, s[0], s[1]}); },
        ode::max_step_checker(100000));
  } catch (const std::exception& e) {
    throw Error(ErrorKind::StepSizeError, std::string("classical integrator failed: ") + e.what());
  }

  for (const auto& s : out.samples) {
    const double r = std::hypot(s.qx, s.qy);
    if (!std::isfinite(r))
      throw Error(ErrorKind::StepSizeError, "classical integrator produced a non-finite state");
    out.max_radius = std::max(out.max_radius, r);
  }
  const double limit = escape_factor * std::max(out.initial_scale, 1e-300);
  out.verdict = out.max_radius > limit ? Verdict::Escape : Verdict::Bounded;
  return out;
}

}  // namespace acsq
