#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "acsq/text.hpp"
#include "commands.hpp"

namespace acsq::cli {

namespace {

// Ties --flags to config keys; only flags that were given override the file.
class FlagSet {
 public:
  void option(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& slot = values_[key];
    bound_.emplace_back(app->add_option(flag, slot, help), key);
  }
  void option(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help,
              std::vector<std::string> choices) {
    auto& slot = values_[key];
    bound_.emplace_back(app->add_option(flag, slot, help)->check(CLI::IsMember(std::move(choices))), key);
  }
  void flag(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    values_[key] = "true";
    bound_.emplace_back(app->add_flag(flag, help), key);
  }

  void apply(RunConfig& cfg) const {
    for (const auto& [opt, key] : bound_)
      if (opt->count() > 0) set_key(cfg, key, values_.at(key), opt->get_name());
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<CLI::Option*, std::string>> bound_;
};

void solver_options(FlagSet& f, CLI::App* cmd) {
  f.option(cmd, "--grid-n", "grid_n", "interior radial grid points (default 4096)");
  f.option(cmd, "--r-min", "r_min", "inner radius (default 1e-4 l_osc)");
  f.option(cmd, "--r-max", "r_max", "outer radius (default 8 l_osc sqrt(2 n_max + alpha + 1))");
  f.option(cmd, "--spacing", "spacing", "radial grid spacing", {"geometric", "uniform"});
}

void range_options(FlagSet& f, CLI::App* cmd) {
  f.option(cmd, "--n-max", "n_max", "largest radial index");
  f.option(cmd, "--l-min", "l_min", "smallest angular index");
  f.option(cmd, "--l-max", "l_max", "largest angular index");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine coherent state quantization of a particle in a rotating punctured plane", "acsq"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  FlagSet flags;
  std::string config_path;
  bool dump = false;
  app.add_option("--config", config_path, "key=value run configuration file");
  app.add_flag("--dump-config", dump, "print the merged configuration and exit");
  flags.option(&app, "--fiducial", "fiducial", "radial profile: gamma:nu=<v>,lambda=<v> or tabulated:<path>");
  flags.option(&app, "--angular", "angular", "angular profile: paper or tabulated:<path>");
  flags.option(&app, "--kappa", "kappa", "dilation of the fiducial");
  flags.option(&app, "--mass", "mass", "particle mass");
  flags.option(&app, "--omega", "omega", "trap frequency");
  flags.option(&app, "--Omega", "Omega", "frame angular velocity");
  flags.option(&app, "--varsigma", "varsigma", "quasiperiodicity, 0 or 0.5");
  flags.option(&app, "--mode", "mode", "eigenvalue mode", {"paper", "derived", "both"});
  flags.option(&app, "--format", "format", "output format", {"csv", "json"});
  flags.option(&app, "--out", "out", "write data to this file instead of stdout");
  flags.option(&app, "--tol", "tol", "tolerance override for verify checks");
  flags.option(&app, "--N0", "N0", "override N0");
  flags.option(&app, "--N1", "N1", "override N1");
  flags.option(&app, "--sigma", "sigma", "override sigma");
  flags.flag(&app, "--allow-unbounded", "allow_unbounded", "emit spectra beyond the critical velocity");
  flags.flag(&app, "--omega-unit", "omega_unit", "print energies as E / omega");

  auto* moments = app.add_subcommand("moments", "admissibility constant, moment ladder and sigma");
  flags.option(moments, "--orders", "orders", "comma separated moment orders s");

  app.add_subcommand("sigma", "strength of the quantization-induced inverse-square term");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form eigenvalues E_{n,l}");
  range_options(flags, spectrum);
  solver_options(flags, spectrum);
  bool with_solver = false;
  spectrum->add_flag("--solver", with_solver, "add radial-solver energies (derived mode)");

  app.add_subcommand("critical-omega", "critical angular velocity in both modes and the classical value");

  auto* eigen = app.add_subcommand("eigenfunction", "samples of phi_{n,l} on a ray and a circle");
  flags.option(eigen, "--n", "n", "radial index");
  flags.option(eigen, "--l", "l", "angular index");
  flags.option(eigen, "--samples", "samples", "points per ray and per circle");

  auto* radial = app.add_subcommand("radial", "finite-difference spectrum with Richardson extrapolation");
  range_options(flags, radial);
  solver_options(flags, radial);
  flags.option(radial, "--rungs", "rungs", "grids in the refinement ladder (>= 3)");

  auto* verify = app.add_subcommand("verify", "numerical verification reports (JSON)");
  std::string check;
  verify->add_option("check", check, "which check")
      ->required()
      ->check(CLI::IsMember({"identity", "powerlaw", "covariance", "commutator", "oracle", "cancellation"}));
  range_options(flags, verify);
  solver_options(flags, verify);
  flags.option(verify, "--rungs", "rungs", "grids in the refinement ladder (>= 3)");

  auto* classical = app.add_subcommand("classical", "classical trajectory in the rotating frame");
  flags.option(classical, "--qx", "qx", "initial x");
  flags.option(classical, "--qy", "qy", "initial y");
  flags.option(classical, "--vx", "vx", "initial x velocity");
  flags.option(classical, "--vy", "vy", "initial y velocity");
  flags.option(classical, "--periods", "periods", "trap periods to integrate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    flags.apply(cfg);

    if (dump) {
      out << dump_config(cfg);
      return kOk;
    }
    if (app.get_subcommands().empty()) {
      err << app.help();
      return kConfigError;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) throw Error(ErrorKind::ConfigError, "cannot open output file '" + cfg.out + "'");
    }
    Streams io{cfg.out.empty() ? out : file, err};

    const auto* cmd = app.get_subcommands().front();
    const auto& name = cmd->get_name();
    if (name == "moments") return cmd_moments(cfg, io);
    if (name == "sigma") return cmd_sigma(cfg, io);
    if (name == "spectrum") return cmd_spectrum(cfg, with_solver, io);
    if (name == "critical-omega") return cmd_critical(cfg, io);
    if (name == "eigenfunction") return cmd_eigenfunction(cfg, io);
    if (name == "radial") return cmd_radial(cfg, io);
    if (name == "verify") return cmd_verify(cfg, check, io);
    if (name == "classical") return cmd_classical(cfg, io);
    err << "error: unhandled command " << name << '\n';
    return kConfigError;
  } catch (const DivergentMoment& e) {
    err << "error: DivergentMoment(s=" << text::format_double(e.order()) << "): " << e.what() << '\n';
    return kDivergentMoment;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace acsq::cli
