#pragma once

// Moment integrals of a factorized fiducial vector: the admissibility
// constant c_psi, the angular integrals, the radial ladder G_s / d_s / N_s
// and the strength sigma of the inverse-square term in the quantized p^2.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "acsq/error.hpp"
#include "acsq/profiles.hpp"

namespace acsq {

struct AngularIntegrals {
  double f0 = 0.0;    // int f
  double fc = 0.0;    // int f cos
  double fs = 0.0;    // int f sin
  double fder = 0.0;  // int f'^2 / (4 f)
};

AngularIntegrals angular_integrals(const AngularProfile& f);

/// G_s = int_0^inf q^-(s+2) g(q) dq for the undilated profile.
/// Throws DivergentMoment when the integral does not converge.
double radial_moment(const RadialProfile& g, double s);

inline const std::vector<double> kDefaultOrders{-1.0, 0.0, 1.0, 2.0};

struct MomentSet {
  double c_psi = 0.0;
  double kappa = 1.0;
  AngularIntegrals angular;
  std::map<double, double> g;  // G_s, dilation applied
  std::map<double, double> d;  // d_s = F0 G_s
  std::map<double, double> n;  // N_s = d_s / (2 d_{-1})
  std::optional<double> sigma;

  /// N_s, throwing InvalidArgument if s was not computed.
  double ladder(double s) const;
  double n0() const { return ladder(0.0); }
  double n1() const { return ladder(1.0); }
};

/// Fills c_psi and the ladder for every order in `orders` (s = -1 is
/// always included). Dilation enters as G_s(kappa) = kappa^-(s+1) G_s(1).
MomentSet compute_moments(const FiducialSpec& spec,
                          std::span<const double> orders = kDefaultOrders);

struct SigmaResult {
  double sigma = 0.0;
  double radial_part = 0.0;   // F0 int q g'^2/(4g) dq / c_psi
  double angular_part = 0.0;  // Fder G_{-1} / c_psi
  Warnings warnings;
};

/// sigma = (1/c_psi) int |grad psi|^2 d^2q, split into its polar pieces.
/// Emits SelfAdjointness when sigma < 1.
SigmaResult compute_sigma(const FiducialSpec& spec);

/// compute_moments followed by compute_sigma.
MomentSet analyze(const FiducialSpec& spec, std::span<const double> orders = kDefaultOrders);

}  // namespace acsq
