#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acsq {

enum class ErrorKind {
  InvalidArgument,
  NonIntegrableAngular,
  DivergentMoment,
  Inadmissible,
  DivergentSigma,
  DivergentSymbol,
  Anisotropy,
  GridTooCoarse,
  GridError,
  ConvergenceError,
  NonConvergent,
  StepSizeError,
  QuadratureFailure,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Base of every exception thrown by the library. The kind lets callers
/// (the CLI in particular) map failures to exit codes without RTTI chains.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A radial moment G_s that does not converge for the given profile.
class DivergentMoment : public Error {
 public:
  DivergentMoment(double s, const std::string& what)
      : Error(ErrorKind::DivergentMoment, what), s_(s) {}

  double order() const noexcept { return s_; }

 private:
  double s_;
};

/// Non-fatal conditions. Operations return them next to their result.
enum class Warning {
  SelfAdjointness,     // sigma < 1: the kinetic operator needs a boundary condition
  DegeneratePosition,  // Fc = 0: the position symbol vanishes identically
  BoundaryAmbiguity,   // radial solver run with sigma < 1
};

std::string_view to_string(Warning w);

using Warnings = std::vector<Warning>;

}  // namespace acsq
