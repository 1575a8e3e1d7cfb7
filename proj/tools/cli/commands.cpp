#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "acsq/classical.hpp"
#include "acsq/moments.hpp"
#include "acsq/quantize.hpp"
#include "acsq/radial_solver.hpp"
#include "acsq/text.hpp"
#include "table.hpp"

namespace acsq::cli {

namespace {

using text::format_double;

void warn(Streams io, Warning w, const std::string& detail) {
  io.diag << "warning: " << to_string(w) << ": " << detail << '\n';
}

int max_abs_l(const RunConfig& cfg) { return std::max(std::abs(cfg.l_min), std::abs(cfg.l_max)); }

void check_ranges(const RunConfig& cfg) {
  if (cfg.n_max < 0) throw Error(ErrorKind::ConfigError, "n_max must be nonnegative");
  if (cfg.l_min > cfg.l_max) throw Error(ErrorKind::ConfigError, "l_min must not exceed l_max");
}

RadialGrid solver_grid(const RunConfig& cfg, const FrameParams& p, const QuantumCoefficients& c) {
  auto g = default_grid(p, c, cfg.n_max, max_abs_l(cfg));
  if (cfg.r_min) g.r_min = *cfg.r_min;
  if (cfg.r_max) g.r_max = *cfg.r_max;
  g.n = cfg.grid_n;
  g.spacing = cfg.spacing;
  g.validate();
  return g;
}

InnerBoundary inner_for(const QuantumCoefficients& c, const FrameParams& p, int l) {
  const double l_eff = l + p.varsigma;
  return c.sigma + l_eff * l_eff == 0.0 ? InnerBoundary::Regular : InnerBoundary::Dirichlet;
}

// One convergence study per sector, run concurrently; each sector is
// computed independently, so the results do not depend on scheduling.
std::vector<ConvergenceStudy> sector_studies(const RunConfig& cfg, const FrameParams& p,
                                             const QuantumCoefficients& c, int rungs) {
  const auto ladder = grid_ladder(solver_grid(cfg, p, c), rungs);
  std::vector<std::future<ConvergenceStudy>> jobs;
  for (int l = cfg.l_min; l <= cfg.l_max; ++l)
    jobs.push_back(std::async(std::launch::async, [&, l] {
      return convergence_study(c, p, l, cfg.n_max + 1, ladder, inner_for(c, p, l));
    }));
  std::vector<ConvergenceStudy> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

double rel_dev(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["parameters"] = r.parameters;
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  if (r.skipped) j["skipped"] = true;
  if (!r.warnings.empty()) {
    auto& w = j["warnings"] = nlohmann::json::array();
    for (auto x : r.warnings) w.push_back(std::string(to_string(x)));
  }
  return j;
}

CheckReport failed_report(std::string check, const Error& e, double tol) {
  CheckReport r;
  r.check = std::move(check);
  r.tolerance = tol;
  r.max_deviation = std::numeric_limits<double>::infinity();
  r.parameters["error"] = std::string(to_string(e.kind())) + ": " + e.what();
  return r;
}

std::vector<CheckReport> verify_identity(const RunConfig& cfg) {
  return {identity_check(fiducial_spec(cfg), sample_points(20), cfg.tol.value_or(1e-8))};
}

std::vector<CheckReport> verify_powerlaw(const RunConfig& cfg) {
  std::vector<CheckReport> out;
  const auto spec = fiducial_spec(cfg);
  for (double beta : {0.0, 1.0, 2.0, 2.5}) out.push_back(power_law_check(spec, beta, sample_points(10), cfg.tol.value_or(1e-6)));
  return out;
}

std::vector<CheckReport> verify_covariance(const RunConfig& cfg) {
  const auto spec = fiducial_spec(cfg);
  const GroupElement g(1.7, 0.9, {0.3, -2.0});
  const double tol = cfg.tol.value_or(1e-6);
  return {covariance_check(spec, Observable::qx(), g, sample_points(5), tol),
          covariance_check(spec, Observable::power(2.0), g, sample_points(5), tol)};
}

std::vector<CheckReport> verify_commutator(const RunConfig& cfg, Streams io) {
  const auto spec = fiducial_spec(cfg);
  const auto pos = position_symbol(spec, compute_moments(spec));
  for (auto w : pos.warnings) warn(io, w, "Fc = 0, the position symbol vanishes; commutator check skipped");
  const std::vector<TestFunction> fns{gaussian_ring(1.2, 0.3), offset_gaussian({0.8, 0.5}, 0.35)};
  auto rep = commutator_check(pos, fns, PolarGrid{}, cfg.tol.value_or(1e-6));
  rep.summary.parameters["coefficient"] = format_double(pos.coefficient);
  for (const auto& e : rep.entries)
    rep.summary.parameters[e.function + "[" + "xy"[e.i] + "," + "xy"[e.j] + "]"] =
        format_double(e.constant.real()) + (e.constant.imag() < 0 ? "-" : "+") +
        format_double(std::abs(e.constant.imag())) + "i";
  return {rep.summary};
}

std::vector<CheckReport> verify_oracle(const RunConfig& cfg, Streams io) {
  check_ranges(cfg);
  const auto c = coefficients(cfg, io);
  const auto p = frame_params(cfg, Mode::HamiltonianDerived);
  const auto studies = sector_studies(cfg, p, c, std::max(3, cfg.rungs));

  CheckReport grid, rich, order;
  grid.check = "oracle";
  grid.tolerance = cfg.tol.value_or(1e-4);
  rich.check = "oracle_richardson";
  rich.tolerance = 1e-6;
  order.check = "oracle_order";
  order.tolerance = 0.2;
  for (auto* r : {&grid, &rich, &order}) {
    r->parameters["n_max"] = std::to_string(cfg.n_max);
    r->parameters["l_range"] = std::to_string(cfg.l_min) + ".." + std::to_string(cfg.l_max);
    r->parameters["grid_N"] = std::to_string(studies.front().grid_n.front());
    r->parameters["compared"] = "Omega-free energies; rotation is an exact shift";
  }
  for (const auto& st : studies)
    for (const auto& row : st.rows) {
      const auto s = spectral_params(p, c, st.l);
      const double exact = s.omega_eff * (2.0 * row.n + 1.0 + s.alpha);
      grid.max_deviation = std::max(grid.max_deviation, rel_dev(row.energies.front(), exact));
      rich.max_deviation = std::max(rich.max_deviation, rel_dev(row.extrapolated, exact));
      const double o = std::isnan(row.order) ? std::numeric_limits<double>::infinity() : std::abs(row.order - 2.0);
      order.max_deviation = std::max(order.max_deviation, o);
    }
  for (auto* r : {&grid, &rich, &order}) r->pass = r->max_deviation <= r->tolerance;
  return {grid, rich, order};
}

std::vector<CheckReport> verify_cancellation(const RunConfig& cfg, Streams io) {
  const auto c = coefficients(cfg, io, false);
  const auto p = frame_params(cfg, Mode::HamiltonianDerived);
  CheckReport r;
  r.check = "cancellation";
  r.tolerance = cfg.tol.value_or(1e-12);
  r.parameters["Omega"] = format_double(p.Omega);
  r.parameters["N0"] = format_double(c.n0);
  if (p.Omega == 0.0) r.parameters["note"] = "Omega = 0: both centrifugal terms vanish identically";
  r.max_deviation = centrifugal_cancellation_check(c, p, RadialGrid{1e-3, 10.0, 512, Spacing::Geometric});
  r.pass = r.max_deviation <= r.tolerance;
  return {r};
}

// Least-squares slope of log|y| against log r.
double log_slope(const std::vector<double>& r, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = std::log(r[i]), v = std::log(std::abs(y[i]));
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivergentMoment:
    case ErrorKind::DivergentSigma:
    case ErrorKind::DivergentSymbol:
      return kDivergentMoment;
    case ErrorKind::StepSizeError:
    case ErrorKind::ConvergenceError:
    case ErrorKind::NonConvergent:
    case ErrorKind::QuadratureFailure:
      return kIntegratorFailure;
    case ErrorKind::GridTooCoarse:
      return kVerifyFailed;
    default:
      return kConfigError;
  }
}

QuantumCoefficients coefficients(const RunConfig& cfg, Streams io, bool need_sigma) {
  QuantumCoefficients c;
  c.sigma = std::numeric_limits<double>::quiet_NaN();
  const bool need_moments = !cfg.n0 || !cfg.n1 || (need_sigma && !cfg.sigma);
  if (need_moments) {
    const auto spec = fiducial_spec(cfg);
    const auto m = compute_moments(spec);
    c.n0 = m.n0();
    c.n1 = m.n1();
    if (need_sigma && !cfg.sigma) {
      const auto s = compute_sigma(spec);
      c.sigma = s.sigma;
    }
  }
  if (cfg.n0) c.n0 = *cfg.n0;
  if (cfg.n1) c.n1 = *cfg.n1;
  if (cfg.sigma) c.sigma = *cfg.sigma;
  if (!(c.n0 > 0.0) || !(c.n1 > 0.0))
    throw Error(ErrorKind::ConfigError, "N0 and N1 must be positive");
  if (need_sigma) {
    if (!(c.sigma >= 0.0)) throw Error(ErrorKind::ConfigError, "sigma must be nonnegative");
    if (c.sigma < 1.0)
      warn(io, Warning::SelfAdjointness, "sigma = " + format_double(c.sigma) + " < 1");
  }
  return c;
}

int cmd_moments(const RunConfig& cfg, Streams io) {
  const auto spec = fiducial_spec(cfg);
  const auto m = compute_moments(spec, cfg.orders);
  const auto s = compute_sigma(spec);
  for (auto w : s.warnings) warn(io, w, "sigma = " + format_double(s.sigma) + " < 1");

  Table t;
  t.notes = {"fiducial " + spec.radial.describe() + ", angular " + spec.angular.describe() +
                 ", kappa " + format_double(spec.kappa),
             "d_s = F0 G_s, N_s = G_s / (2 G_-1)"};
  t.columns = {"quantity", "s", "value"};
  t.add({std::string("c_psi"), std::string(), m.c_psi});
  t.add({std::string("F0"), std::string(), m.angular.f0});
  t.add({std::string("Fc"), std::string(), m.angular.fc});
  t.add({std::string("Fs"), std::string(), m.angular.fs});
  t.add({std::string("Fder"), std::string(), m.angular.fder});
  for (const auto& [order, v] : m.g) t.add({std::string("G"), format_double(order), v});
  for (const auto& [order, v] : m.d) t.add({std::string("d"), format_double(order), v});
  for (const auto& [order, v] : m.n) t.add({std::string("N"), format_double(order), v});
  t.add({std::string("sigma"), std::string(), s.sigma});
  t.add({std::string("sigma_radial"), std::string(), s.radial_part});
  t.add({std::string("sigma_angular"), std::string(), s.angular_part});
  t.write(io.data, cfg.format);
  return kOk;
}

int cmd_sigma(const RunConfig& cfg, Streams io) {
  const auto s = compute_sigma(fiducial_spec(cfg));
  for (auto w : s.warnings) warn(io, w, "sigma = " + format_double(s.sigma) + " < 1");
  Table t;
  t.columns = {"quantity", "value"};
  t.add({std::string("sigma"), s.sigma});
  t.add({std::string("radial_part"), s.radial_part});
  t.add({std::string("angular_part"), s.angular_part});
  t.write(io.data, cfg.format);
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, bool with_solver, Streams io) {
  check_ranges(cfg);
  const auto c = coefficients(cfg, io);
  const auto modes = selected_modes(cfg);
  if (with_solver && cfg.mode == ModeSelection::Paper)
    throw Error(ErrorKind::ConfigError, "the printed eigenvalue formula has no solver counterpart; use mode derived or both");

  bool unbounded = false;
  for (auto mode : modes) {
    const auto p = frame_params(cfg, mode);
    if (!is_bounded(p, c)) {
      io.diag << (cfg.allow_unbounded ? "warning" : "error") << ": |Omega| = " << format_double(std::abs(p.Omega))
              << " reaches the " << to_string(mode) << " critical value " << format_double(critical_omega(p, c))
              << "; E_{n,l} has no lower bound\n";
      unbounded = true;
    }
  }
  if (unbounded && !cfg.allow_unbounded) return kUnbounded;

  const double scale = cfg.omega_unit ? 1.0 / cfg.omega : 1.0;
  std::vector<std::vector<double>> solver;  // [l - l_min][n]
  if (with_solver) {
    const auto p = frame_params(cfg, Mode::HamiltonianDerived);
    const auto grid = solver_grid(cfg, p, c);
    for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
      auto e = solve_sector(build_sector(c, p, l, grid, inner_for(c, p, l)), cfg.n_max + 1).energies;
      for (auto& v : e) v = (v + solver_rotation_shift(p, c, l)) * scale;
      solver.push_back(std::move(e));
    }
  }

  Table t;
  if (cfg.omega_unit) t.notes.push_back("energies in units of omega");
  if (modes.size() == 1) {
    const auto p = frame_params(cfg, modes.front());
    t.columns = {"n", "l", "varsigma", "mode", "E", "bounded"};
    if (with_solver) t.columns.push_back("E_solver");
    for (const auto& r : spectrum_table(p, c, cfg.n_max, cfg.l_min, cfg.l_max)) {
      std::vector<Cell> row{long{r.n}, long{r.l}, r.varsigma, std::string(to_string(r.mode)), r.energy * scale, r.bounded};
      if (with_solver) row.push_back(solver[r.l - cfg.l_min][r.n]);
      t.add(std::move(row));
    }
  } else {
    const auto pp = frame_params(cfg, Mode::PaperFormula);
    const auto pd = frame_params(cfg, Mode::HamiltonianDerived);
    t.notes.push_back("E_paper and E_derived differ only in the Omega coupling");
    t.notes.push_back("coupling_paper = -(N0/sqrt(2)) Omega l, from the printed eigenvalue formula");
    t.notes.push_back("coupling_derived = -N0 Omega (l + varsigma), from diagonalizing the rotating-frame Hamiltonian");
    t.notes.push_back("coupling_difference = E_paper - E_derived = N0 Omega (l + varsigma) - (N0/sqrt(2)) Omega l");
    t.notes.push_back("open question: the two couplings disagree and their critical velocities differ by sqrt(2); both are reported, neither is preferred");
    t.notes.push_back("critical_omega paper=" + format_double(critical_omega(pp, c)) +
                      " derived=" + format_double(critical_omega(pd, c)) + " classical=" + format_double(cfg.omega));
    t.columns = {"n", "l", "varsigma", "E_paper", "E_derived", "coupling_paper", "coupling_derived",
                 "coupling_difference", "bounded_paper", "bounded_derived"};
    if (with_solver) t.columns.push_back("E_solver_derived");
    const auto paper = spectrum_table(pp, c, cfg.n_max, cfg.l_min, cfg.l_max);
    const auto derived = spectrum_table(pd, c, cfg.n_max, cfg.l_min, cfg.l_max);
    for (std::size_t i = 0; i < paper.size(); ++i) {
      const auto& a = paper[i];
      const auto& b = derived[i];
      std::vector<Cell> row{long{a.n}, long{a.l}, a.varsigma, a.energy * scale, b.energy * scale,
                            a.coupling * scale, b.coupling * scale, (a.coupling - b.coupling) * scale,
                            a.bounded, b.bounded};
      if (with_solver) row.push_back(solver[a.l - cfg.l_min][a.n]);
      t.add(std::move(row));
    }
  }
  t.write(io.data, cfg.format);
  return kOk;
}

int cmd_critical(const RunConfig& cfg, Streams io) {
  const auto c = coefficients(cfg, io, false);
  Table t;
  t.notes = {"N0=" + format_double(c.n0) + " N1=" + format_double(c.n1)};
  t.columns = {"quantity", "value"};
  t.add({std::string("paper"), critical_omega(frame_params(cfg, Mode::PaperFormula), c)});
  t.add({std::string("derived"), critical_omega(frame_params(cfg, Mode::HamiltonianDerived), c)});
  t.add({std::string("classical"), classical_critical_omega(frame_params(cfg, Mode::HamiltonianDerived))});
  t.write(io.data, cfg.format);
  return kOk;
}

int cmd_eigenfunction(const RunConfig& cfg, Streams io) {
  if (cfg.n < 0) throw Error(ErrorKind::ConfigError, "n must be nonnegative");
  if (cfg.samples < 10) throw Error(ErrorKind::ConfigError, "samples must be at least 10");
  const auto c = coefficients(cfg, io);
  const auto p = frame_params(cfg, selected_modes(cfg).back());
  const auto s = spectral_params(p, c, cfg.l);

  // Radial ray at theta = 0, geometric from 1e-3 l_osc past the classical turning point.
  const double r_lo = 1e-3 * s.osc_length;
  const double r_hi = s.osc_length * (std::sqrt(2.0 * cfg.n + s.alpha + 1.0) + 4.0);
  std::vector<double> ray(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) ray[i] = r_lo * std::pow(r_hi / r_lo, double(i) / (cfg.samples - 1));

  Table t;
  t.columns = {"r", "theta", "re", "im"};
  std::vector<double> fit_r, fit_v;
  for (double r : ray) {
    const auto v = eigenfunction(p, c, {cfg.n, cfg.l}, Vec2{r, 0.0});
    t.add({r, 0.0, v.real(), v.imag()});
    if (r <= 10.0 * r_lo && std::abs(v) > 0.0) {
      fit_r.push_back(r);
      fit_v.push_back(std::abs(v));
    }
  }
  // Circle through the n = 0 maximum.
  const double ring = s.osc_length * std::sqrt(std::max(s.alpha, 1e-3));
  for (int i = 0; i < cfg.samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / cfg.samples;
    const auto v = eigenfunction(p, c, {cfg.n, cfg.l}, rotate({ring, 0.0}, theta));
    t.add({ring, theta, v.real(), v.imag()});
  }

  t.notes = {"n=" + std::to_string(cfg.n) + " l=" + std::to_string(cfg.l) + " varsigma=" + format_double(p.varsigma),
             "alpha=" + format_double(s.alpha) + " osc_length=" + format_double(s.osc_length),
             "near_origin_exponent=" + (fit_r.size() >= 2 ? format_double(log_slope(fit_r, fit_v)) : std::string("nan")),
             "rows: radial ray at theta=0, then the circle r=" + format_double(ring)};
  t.write(io.data, cfg.format);
  return kOk;
}

int cmd_radial(const RunConfig& cfg, Streams io) {
  check_ranges(cfg);
  if (cfg.mode == ModeSelection::Paper)
    throw Error(ErrorKind::ConfigError, "the printed eigenvalue formula has no solver counterpart; use mode derived");
  if (cfg.mode == ModeSelection::Both) io.diag << "note: the radial solver reports the derived mode only\n";
  if (cfg.rungs < 3) throw Error(ErrorKind::ConfigError, "rungs must be at least 3 for Richardson extrapolation");
  const auto c = coefficients(cfg, io);
  const auto p = frame_params(cfg, Mode::HamiltonianDerived);
  const double scale = cfg.omega_unit ? 1.0 / cfg.omega : 1.0;
  const auto studies = sector_studies(cfg, p, c, cfg.rungs);

  Table t;
  if (cfg.omega_unit) t.notes.push_back("energies in units of omega");
  t.columns = {"l", "n", "grid_N", "E", "E_extrapolated", "order", "err_estimate"};
  for (const auto& st : studies) {
    const double shift = solver_rotation_shift(p, c, st.l);
    for (const auto& row : st.rows)
      for (std::size_t k = 0; k < row.energies.size(); ++k)
        t.add({long{st.l}, long{row.n}, long{st.grid_n[k]}, (row.energies[k] + shift) * scale,
               (row.extrapolated + shift) * scale, row.order, row.err_estimate * scale});
  }
  t.write(io.data, cfg.format);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::string_view check, Streams io) {
  std::vector<CheckReport> reports;
  auto guarded = [&](auto&& fn, const char* name, double tol) {
    try {
      auto r = fn();
      reports.insert(reports.end(), r.begin(), r.end());
    } catch (const DivergentMoment&) {
      throw;
    } catch (const Error& e) {
      reports.push_back(failed_report(name, e, tol));
    }
  };
  if (check == "identity") guarded([&] { return verify_identity(cfg); }, "identity", cfg.tol.value_or(1e-8));
  else if (check == "powerlaw") guarded([&] { return verify_powerlaw(cfg); }, "powerlaw", cfg.tol.value_or(1e-6));
  else if (check == "covariance") guarded([&] { return verify_covariance(cfg); }, "covariance", cfg.tol.value_or(1e-6));
  else if (check == "commutator") guarded([&] { return verify_commutator(cfg, io); }, "commutator", cfg.tol.value_or(1e-6));
  else if (check == "oracle") guarded([&] { return verify_oracle(cfg, io); }, "oracle", cfg.tol.value_or(1e-4));
  else if (check == "cancellation") guarded([&] { return verify_cancellation(cfg, io); }, "cancellation", cfg.tol.value_or(1e-12));
  else throw Error(ErrorKind::ConfigError, "unknown check '" + std::string(check) + "'");

  nlohmann::json out = nlohmann::json::array();
  bool pass = true;
  for (const auto& r : reports) {
    out.push_back(to_json(r));
    if (!r.pass && !r.skipped) {
      pass = false;
      io.diag << "verification failed: " << r.check << " (max deviation " << format_double(r.max_deviation)
              << ", tolerance " << format_double(r.tolerance) << ")\n";
    }
  }
  io.data << out.dump(2) << '\n';
  return pass ? kOk : kVerifyFailed;
}

int cmd_classical(const RunConfig& cfg, Streams io) {
  if (!(cfg.periods > 0.0)) throw Error(ErrorKind::ConfigError, "periods must be positive");
  const auto p = frame_params(cfg, Mode::HamiltonianDerived);
  const auto times = trap_periods(p, cfg.periods);
  const auto res = classical_trajectory(p, {cfg.qx, cfg.qy, cfg.vx, cfg.vy}, times);

  Table t;
  t.columns = {"t", "qx", "qy"};
  for (const auto& s : res.samples) t.add({s.t, s.qx, s.qy});
  t.write(io.data, cfg.format);

  io.diag << "verdict=" << to_string(res.verdict) << " marginal=" << (res.marginal ? "true" : "false")
          << " max_radius=" << format_double(res.max_radius)
          << " energy_bounded_below=" << (res.energy_bounded_below ? "true" : "false")
          << " growth_exponent=" << format_double(res.growth_exponent) << '\n';
  return kOk;
}

}  // namespace acsq::cli
