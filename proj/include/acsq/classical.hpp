#pragma once

// Classical motion in the rotating frame:
//
//   q_x'' =  2 Omega q_y' - (omega^2 - Omega^2) q_x
//   q_y'' = -2 Omega q_x' - (omega^2 - Omega^2) q_y

#include <span>
#include <string_view>
#include <vector>

#include "acsq/spectrum.hpp"

namespace acsq {

struct ClassicalState {
  double qx = 1.0, qy = 0.0;
  double vx = 0.0, vy = 0.0;
};

struct TrajectorySample {
  double t, qx, qy;
};

enum class Verdict { Bounded, Escape };

std::string_view to_string(Verdict v);

struct ClassicalResult {
  std::vector<TrajectorySample> samples;
  Verdict verdict = Verdict::Bounded;
  bool marginal = false;            // omega^2 - Omega^2 == 0: no restoring force in the frame
  double max_radius = 0.0;
  double initial_scale = 0.0;       // max(|q0|, |v0| / omega)
  double stiffness = 0.0;           // omega^2 - Omega^2
  bool energy_bounded_below = true; // rotating-frame Hamiltonian bounded below (|Omega| <= omega)
  double growth_exponent = 0.0;     // max Re of the linear system's eigenvalues
};

/// Largest real part among the eigenvalues of the first-order 4x4 system.
double growth_exponent(const FrameParams& p);

/// Integrates with an adaptive Dormand-Prince stepper and reports the
/// trajectory at `times` (ascending, starting at 0). The verdict is
/// Escape when the radius leaves `escape_factor * initial_scale`.
/// Throws StepSizeError if the stepper stalls.
ClassicalResult classical_trajectory(const FrameParams& p, const ClassicalState& initial,
                                     std::span<const double> times, double escape_factor = 10.0);

/// Uniform time grid over `periods` trap periods.
std::vector<double> trap_periods(const FrameParams& p, double periods, int samples_per_period = 64);

}  // namespace acsq
