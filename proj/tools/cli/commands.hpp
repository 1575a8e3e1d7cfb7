#pragma once

#include <ostream>
#include <string_view>

#include "acsq/error.hpp"
#include "acsq/spectrum.hpp"
#include "config.hpp"

namespace acsq::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kDivergentMoment = 2,
  kUnbounded = 3,
  kVerifyFailed = 4,
  kIntegratorFailure = 5,
};

int exit_code(ErrorKind kind);

/// Data goes to `data`, diagnostics to `diag`.
struct Streams {
  std::ostream& data;
  std::ostream& diag;
};

/// N0, N1 and sigma from the fiducial, with any configured overrides
/// applied. sigma is only computed when `need_sigma` is set.
QuantumCoefficients coefficients(const RunConfig& cfg, Streams io, bool need_sigma = true);

int cmd_moments(const RunConfig& cfg, Streams io);
int cmd_sigma(const RunConfig& cfg, Streams io);
int cmd_spectrum(const RunConfig& cfg, bool with_solver, Streams io);
int cmd_critical(const RunConfig& cfg, Streams io);
int cmd_eigenfunction(const RunConfig& cfg, Streams io);
int cmd_radial(const RunConfig& cfg, Streams io);
int cmd_verify(const RunConfig& cfg, std::string_view check, Streams io);
int cmd_classical(const RunConfig& cfg, Streams io);

/// Full command line: parsing, config merge, dispatch and error mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acsq::cli
