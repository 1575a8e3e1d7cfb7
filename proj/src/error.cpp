#include "acsq/error.hpp"

namespace acsq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonIntegrableAngular: return "NonIntegrableAngular";
    case ErrorKind::DivergentMoment: return "DivergentMoment";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::DivergentSigma: return "DivergentSigma";
    case ErrorKind::DivergentSymbol: return "DivergentSymbol";
    case ErrorKind::Anisotropy: return "AnisotropyError";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::GridError: return "GridError";
    case ErrorKind::ConvergenceError: return "ConvergenceError";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::StepSizeError: return "StepSizeError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

std::string_view to_string(Warning w) {
  switch (w) {
    case Warning::SelfAdjointness: return "SelfAdjointnessWarning";
    case Warning::DegeneratePosition: return "DegeneratePosition";
    case Warning::BoundaryAmbiguity: return "BoundaryAmbiguity";
  }
  return "Unknown";
}

}  // namespace acsq
