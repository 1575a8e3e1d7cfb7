#pragma once

// Run configuration shared by every subcommand. The same key names are
// accepted in a key=value file and as --flags; flags win.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acsq/profiles.hpp"
#include "acsq/radial_solver.hpp"
#include "acsq/spectrum.hpp"

namespace acsq::cli {

enum class ModeSelection { Paper, Derived, Both };
enum class Format { Csv, Json };

struct RunConfig {
  std::string fiducial = "gamma:nu=5,lambda=1";
  std::string angular = "paper";
  double kappa = 1.0;

  double mass = 1.0;
  double omega = 1.0;
  double Omega = 0.0;
  double varsigma = 0.0;
  ModeSelection mode = ModeSelection::Derived;

  // Replace the fiducial-derived coefficients.
  std::optional<double> n0, n1, sigma;

  std::vector<double> orders{-1.0, 0.0, 1.0, 2.0};
  int n_max = 4;
  int l_min = -3;
  int l_max = 3;

  // Radial solver; unset bounds fall back to default_grid.
  int grid_n = 4096;
  std::optional<double> r_min, r_max;
  Spacing spacing = Spacing::Geometric;
  int rungs = 3;

  // eigenfunction
  int n = 0;
  int l = 0;
  int samples = 200;

  // classical
  double qx = 1.0, qy = 0.0, vx = 0.0, vy = 0.0;
  double periods = 100.0;

  Format format = Format::Csv;
  std::string out;
  std::optional<double> tol;
  bool allow_unbounded = false;
  bool omega_unit = false;

  bool operator==(const RunConfig&) const = default;
};

/// Every key understood by set_key, in dump order.
const std::vector<std::string_view>& config_keys();

/// Assigns one key from its text form. Throws ConfigError with `where`
/// prefixed to the message.
void set_key(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where = {});

/// Parses key=value lines; `#` starts a comment. Errors name
/// source:line:column.
RunConfig parse_config(std::string_view text, const std::string& source, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Inverse of parse_config: reparsing the result yields an identical config.
std::string dump_config(const RunConfig& cfg);

/// Library-facing views of the configuration.
FiducialSpec fiducial_spec(const RunConfig& cfg);
FrameParams frame_params(const RunConfig& cfg, Mode mode);
std::vector<Mode> selected_modes(const RunConfig& cfg);

}  // namespace acsq::cli
