#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "acsq/classical.hpp"
#include "acsq/error.hpp"
#include "acsq/moments.hpp"
#include "acsq/quantize.hpp"
#include "acsq/radial_solver.hpp"
#include "acsq/spectrum.hpp"
#include "cli/commands.hpp"

namespace py = pybind11;
using namespace acsq;

namespace {

std::vector<std::string> names(const Warnings& ws) {
  std::vector<std::string> out;
  for (auto w : ws) out.emplace_back(to_string(w));
  return out;
}

py::dict report(const CheckReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["parameters"] = r.parameters;
  d["max_deviation"] = r.max_deviation;
  d["tolerance"] = r.tolerance;
  d["pass"] = r.pass;
  d["skipped"] = r.skipped;
  d["warnings"] = names(r.warnings);
  return d;
}

FiducialSpec make_spec(const std::string& radial, const std::string& angular, double kappa) {
  return {AngularProfile::parse(angular), RadialProfile::parse(radial), kappa};
}

std::vector<Vec2> points(const py::array_t<double, py::array::c_style | py::array::forcecast>& xy) {
  if (xy.ndim() != 2 || xy.shape(1) != 2) throw py::value_error("expected an (n, 2) array of points");
  auto a = xy.unchecked<2>();
  std::vector<Vec2> out;
  for (py::ssize_t i = 0; i < a.shape(0); ++i) out.push_back({a(i, 0), a(i, 1)});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Affine coherent state quantization of a particle in a rotating punctured plane";

  // Raised exceptions carry the error kind and, for divergent moments, the order s.
  static PyObject* error = PyErr_NewException("acsq._core.AcsqError", PyExc_RuntimeError, nullptr);
  static PyObject* divergent = PyErr_NewException("acsq._core.DivergentMomentError", error, nullptr);
  m.attr("AcsqError") = py::handle(error);
  m.attr("DivergentMomentError") = py::handle(divergent);
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](PyObject* type, const Error& e, py::object order) {
      py::object inst = py::reinterpret_borrow<py::object>(type)(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      inst.attr("order") = order;
      PyErr_SetObject(type, inst.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DivergentMoment& e) {
      raise(divergent, e, py::float_(e.order()));
    } catch (const Error& e) {
      raise(error, e, py::none());
    }
  });

  py::class_<FiducialSpec>(m, "FiducialSpec")
      .def(py::init(&make_spec), py::arg("radial") = "gamma:nu=5,lambda=1", py::arg("angular") = "paper",
           py::arg("kappa") = 1.0)
      .def_readonly("kappa", &FiducialSpec::kappa)
      .def("density", &FiducialSpec::density, py::arg("q"), py::arg("theta"))
      .def("__repr__", [](const FiducialSpec& s) {
        std::ostringstream os;
        os << "FiducialSpec(radial='" << s.radial.describe() << "', angular='" << s.angular.describe()
           << "', kappa=" << s.kappa << ")";
        return os.str();
      });

  m.def(
      "compute_moments",
      [](const FiducialSpec& spec, std::vector<double> orders) {
        const auto ms = compute_moments(spec, orders);
        py::dict d;
        d["c_psi"] = ms.c_psi;
        d["kappa"] = ms.kappa;
        d["F0"] = ms.angular.f0;
        d["Fc"] = ms.angular.fc;
        d["Fs"] = ms.angular.fs;
        d["Fder"] = ms.angular.fder;
        d["G"] = ms.g;
        d["d"] = ms.d;
        d["N"] = ms.n;
        return d;
      },
      py::arg("spec"), py::arg("orders") = std::vector<double>{-1.0, 0.0, 1.0, 2.0},
      "Admissibility constant and the moment ladders G_s, d_s, N_s.");

  m.def(
      "compute_sigma",
      [](const FiducialSpec& spec) {
        const auto s = compute_sigma(spec);
        py::dict d;
        d["sigma"] = s.sigma;
        d["radial_part"] = s.radial_part;
        d["angular_part"] = s.angular_part;
        d["warnings"] = names(s.warnings);
        return d;
      },
      py::arg("spec"));

  m.def(
      "affine_convolve",
      [](const FiducialSpec& spec, const std::string& observable, double x, double y) {
        return affine_convolve(spec, Observable::parse(observable), {x, y});
      },
      py::arg("spec"), py::arg("observable"), py::arg("x"), py::arg("y"),
      "Observable spelled qx, qy, const:<c>, power:<beta> or harmonic:<m>,<omega>.");

  m.def("identity_check", [](const FiducialSpec& s, int n, double tol) { return report(identity_check(s, sample_points(n), tol)); },
        py::arg("spec"), py::arg("points") = 20, py::arg("tol") = 1e-8);
  m.def(
      "power_law_check",
      [](const FiducialSpec& s, double beta, int n, double tol) {
        return report(power_law_check(s, beta, sample_points(n), tol));
      },
      py::arg("spec"), py::arg("beta"), py::arg("points") = 10, py::arg("tol") = 1e-6);
  m.def(
      "commutator_check",
      [](const FiducialSpec& s, double tol) {
        const auto pos = position_symbol(s, compute_moments(s));
        const std::vector<TestFunction> fns{gaussian_ring(1.2, 0.3), offset_gaussian({0.8, 0.5}, 0.35)};
        const auto rep = commutator_check(pos, fns, PolarGrid{}, tol);
        auto d = report(rep.summary);
        py::list entries;
        for (const auto& e : rep.entries)
          entries.append(py::dict(py::arg("function") = e.function, py::arg("i") = e.i, py::arg("j") = e.j,
                                  py::arg("constant") = e.constant, py::arg("max_deviation") = e.max_deviation));
        d["entries"] = entries;
        return d;
      },
      py::arg("spec"), py::arg("tol") = 1e-6);

  py::enum_<Mode>(m, "Mode")
      .value("PAPER", Mode::PaperFormula)
      .value("DERIVED", Mode::HamiltonianDerived);

  py::class_<FrameParams>(m, "FrameParams")
      .def(py::init([](double mass, double omega, double Omega, double varsigma, Mode mode) {
             FrameParams p;
             p.mass = mass;
             p.omega = omega;
             p.Omega = Omega;
             p.varsigma = varsigma;
             p.mode = mode;
             p.validate();
             return p;
           }),
           py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("Omega") = 0.0, py::arg("varsigma") = 0.0,
           py::arg("mode") = Mode::HamiltonianDerived)
      .def_readwrite("mass", &FrameParams::mass)
      .def_readwrite("omega", &FrameParams::omega)
      .def_readwrite("Omega", &FrameParams::Omega)
      .def_readwrite("varsigma", &FrameParams::varsigma)
      .def_readwrite("mode", &FrameParams::mode);

  py::class_<QuantumCoefficients>(m, "QuantumCoefficients")
      .def(py::init([](double n0, double n1, double sigma) { return QuantumCoefficients{n0, n1, sigma}; }),
           py::arg("N0"), py::arg("N1"), py::arg("sigma"))
      .def_static(
          "from_spec",
          [](const FiducialSpec& spec) { return QuantumCoefficients::from_moments(analyze(spec)); },
          py::arg("spec"))
      .def_readwrite("N0", &QuantumCoefficients::n0)
      .def_readwrite("N1", &QuantumCoefficients::n1)
      .def_readwrite("sigma", &QuantumCoefficients::sigma)
      .def("__repr__", [](const QuantumCoefficients& c) {
        std::ostringstream os;
        os.precision(17);
        os << "QuantumCoefficients(N0=" << c.n0 << ", N1=" << c.n1 << ", sigma=" << c.sigma << ")";
        return os.str();
      });

  m.def(
      "spectral_params",
      [](const FrameParams& p, const QuantumCoefficients& c, int l) {
        const auto s = spectral_params(p, c, l);
        py::dict d;
        d["alpha"] = s.alpha;
        d["omega_eff"] = s.omega_eff;
        d["osc_length"] = s.osc_length;
        return d;
      },
      py::arg("frame"), py::arg("coefficients"), py::arg("l"));
  m.def(
      "eigenvalue", [](const FrameParams& p, const QuantumCoefficients& c, int n, int l) { return eigenvalue(p, c, {n, l}); },
      py::arg("frame"), py::arg("coefficients"), py::arg("n"), py::arg("l"));
  m.def(
      "eigenfunction",
      [](const FrameParams& p, const QuantumCoefficients& c, int n, int l,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& xy) {
        const auto xs = points(xy);
        const auto v = eigenfunction(p, c, {n, l}, xs);
        py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.size()));
        std::copy(v.begin(), v.end(), out.mutable_data());
        return out;
      },
      py::arg("frame"), py::arg("coefficients"), py::arg("n"), py::arg("l"), py::arg("points"),
      "phi_{n,l} at an (n, 2) array of Cartesian points.");
  m.def("critical_omega", &critical_omega, py::arg("frame"), py::arg("coefficients"));
  m.def("is_bounded", &is_bounded, py::arg("frame"), py::arg("coefficients"));
  m.def(
      "spectrum_table",
      [](const FrameParams& p, const QuantumCoefficients& c, int n_max, int l_min, int l_max) {
        py::list rows;
        for (const auto& r : spectrum_table(p, c, n_max, l_min, l_max))
          rows.append(py::dict(py::arg("n") = r.n, py::arg("l") = r.l, py::arg("varsigma") = r.varsigma,
                               py::arg("E") = r.energy, py::arg("coupling") = r.coupling,
                               py::arg("bounded") = r.bounded));
        return rows;
      },
      py::arg("frame"), py::arg("coefficients"), py::arg("n_max") = 4, py::arg("l_min") = -3, py::arg("l_max") = 3);
  m.def(
      "gram_matrix",
      [](const FrameParams& p, const QuantumCoefficients& c, int l, int n_max) {
        const auto g = gram_matrix(p, c, l, n_max);
        const py::ssize_t k = n_max + 1;
        py::array_t<double> out({k, k});
        std::copy(g.begin(), g.end(), out.mutable_data());
        return out;
      },
      py::arg("frame"), py::arg("coefficients"), py::arg("l"), py::arg("n_max"));
  m.def("fit_sigma", &fit_sigma, py::arg("ls"), py::arg("delta_e"), py::arg("omega_eff"), py::arg("varsigma") = 0.0);

  py::enum_<Spacing>(m, "Spacing").value("UNIFORM", Spacing::Uniform).value("GEOMETRIC", Spacing::Geometric);

  py::class_<RadialGrid>(m, "RadialGrid")
      .def(py::init([](double r_min, double r_max, int n, Spacing spacing) {
             RadialGrid g{r_min, r_max, n, spacing};
             g.validate();
             return g;
           }),
           py::arg("r_min") = 1e-4, py::arg("r_max") = 10.0, py::arg("n") = 4096,
           py::arg("spacing") = Spacing::Geometric)
      .def_readonly("r_min", &RadialGrid::r_min)
      .def_readonly("r_max", &RadialGrid::r_max)
      .def_readonly("n", &RadialGrid::n)
      .def_readonly("spacing", &RadialGrid::spacing)
      .def("nodes", &RadialGrid::nodes)
      .def("halved", &RadialGrid::halved);

  m.def("default_grid", &default_grid, py::arg("frame"), py::arg("coefficients"), py::arg("n_max"),
        py::arg("l_abs_max"));
  m.def(
      "solve_sector",
      [](const QuantumCoefficients& c, const FrameParams& p, int l, const RadialGrid& grid, int k) {
        const auto sol = solve_sector(build_sector(c, p, l, grid), k);
        py::dict d;
        d["energies"] = sol.energies;
        d["r"] = sol.r;
        d["u"] = sol.u;
        return d;
      },
      py::arg("coefficients"), py::arg("frame"), py::arg("l"), py::arg("grid"), py::arg("k"),
      "Lowest k Omega-free energies and u = sqrt(r) phi on the grid nodes.");
  m.def(
      "convergence_study",
      [](const QuantumCoefficients& c, const FrameParams& p, int l, int k, const RadialGrid& base, int rungs) {
        const auto st = convergence_study(c, p, l, k, grid_ladder(base, rungs));
        py::list rows;
        for (const auto& r : st.rows)
          rows.append(py::dict(py::arg("n") = r.n, py::arg("energies") = r.energies,
                               py::arg("extrapolated") = r.extrapolated, py::arg("order") = r.order,
                               py::arg("err_estimate") = r.err_estimate));
        return py::dict(py::arg("l") = st.l, py::arg("grid_n") = st.grid_n, py::arg("rows") = rows);
      },
      py::arg("coefficients"), py::arg("frame"), py::arg("l"), py::arg("k"), py::arg("base"), py::arg("rungs") = 3);

  m.def(
      "classical_trajectory",
      [](const FrameParams& p, std::array<double, 4> initial, double periods) {
        const auto res =
            classical_trajectory(p, {initial[0], initial[1], initial[2], initial[3]}, trap_periods(p, periods));
        py::array_t<double> traj({static_cast<py::ssize_t>(res.samples.size()), py::ssize_t{3}});
        auto t = traj.mutable_unchecked<2>();
        for (std::size_t i = 0; i < res.samples.size(); ++i) {
          t(i, 0) = res.samples[i].t;
          t(i, 1) = res.samples[i].qx;
          t(i, 2) = res.samples[i].qy;
        }
        py::dict d;
        d["trajectory"] = traj;
        d["verdict"] = std::string(to_string(res.verdict));
        d["marginal"] = res.marginal;
        d["max_radius"] = res.max_radius;
        d["energy_bounded_below"] = res.energy_bounded_below;
        d["growth_exponent"] = res.growth_exponent;
        return d;
      },
      py::arg("frame"), py::arg("initial") = std::array<double, 4>{1.0, 0.0, 0.0, 0.0}, py::arg("periods") = 100.0,
      "Trajectory columns t, qx, qy from initial (qx, qy, vx, vy).");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "acsq");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");
}
