#pragma once

// Affine coherent state quantization of position observables, momentum
// and p^2, plus the numerical checks of the quantization map's defining
// properties (resolution of identity, power-law closure, canonical
// commutation, covariance).

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "acsq/error.hpp"
#include "acsq/group.hpp"
#include "acsq/moments.hpp"
#include "acsq/observable.hpp"
#include "acsq/profiles.hpp"

namespace acsq {

/// (|psi|^2 *_aff u)(x) = int dphi int dq/q |psi(q, phi)|^2 u(R(-phi) x / q).
/// Throws DivergentSymbol when u grows beyond the fiducial's moment ladder.
double affine_convolve(const FiducialSpec& spec, const Observable& u, Vec2 x,
                       double rel_tol = 1e-11);

/// The multiplication function m_u = (|psi|^2 *_aff u) / c_psi of the
/// quantized observable A_u.
class MultiplicationSymbol {
 public:
  MultiplicationSymbol(FiducialSpec spec, Observable u, double c_psi);
  MultiplicationSymbol(FiducialSpec spec, Observable u);

  double operator()(Vec2 x) const;
  const Observable& observable() const noexcept { return u_; }
  double c_psi() const noexcept { return c_psi_; }

 private:
  FiducialSpec spec_;
  Observable u_;
  double c_psi_;
};

struct PositionSymbol {
  double coefficient = 0.0;  // A_{q_i} = coefficient * x_i
  Warnings warnings;
};

/// Fc G_0 / c_psi. Throws Anisotropy when Fs is nonzero (beyond 1e-10
/// relative to F0); warns DegeneratePosition when Fc vanishes.
PositionSymbol position_symbol(const FiducialSpec& spec, const MomentSet& moments);

struct KineticOperator {
  double laplacian_coeff = -1.0;
  double inverse_square_coeff = 0.0;  // sigma
  Warnings warnings;
};

/// A_{p^2} = -laplacian + sigma / q^2.
KineticOperator kinetic_operator(const MomentSet& moments);

/// One verification outcome, serialized by the CLI as a JSON record.
struct CheckReport {
  std::string check;
  std::map<std::string, std::string> parameters;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  Warnings warnings;
  std::vector<double> deviations;  // per sample, when meaningful
};

/// m_1(x) = 1 at every sample, i.e. the convolution of |psi|^2 with 1
/// reproduces c_psi.
CheckReport identity_check(const FiducialSpec& spec, std::span<const Vec2> xs, double tol = 1e-8);

/// Relative deviation of m_{q^beta}(x) from (d_{beta-1}/c_psi) |x|^beta.
CheckReport power_law_check(const FiducialSpec& spec, double beta, std::span<const Vec2> xs,
                            double tol = 1e-6);

/// Real test function on the punctured plane in polar coordinates.
struct TestFunction {
  std::string name;
  std::function<double(double r, double theta)> fn;
};

TestFunction gaussian_ring(double r0, double width);
TestFunction offset_gaussian(Vec2 center, double width);

/// Polar grid: uniform in theta, geometric in r on [r_min, r_max].
struct PolarGrid {
  double r_min = 0.15;
  double r_max = 4.0;
  int n_r = 400;
  int n_theta = 128;

  PolarGrid refined() const { return {r_min, r_max, 2 * n_r, 2 * n_theta}; }
};

struct CommutatorEntry {
  std::string function;
  int i = 0;  // 0 = x, 1 = y
  int j = 0;
  std::complex<double> constant;  // <psi, C psi> / <psi, psi>
  double max_deviation = 0.0;     // max |C psi - i N0 delta psi| / max |psi|
};

struct CommutatorReport {
  CheckReport summary;
  std::vector<CommutatorEntry> entries;  // from the refined grid
};

/// Applies C = [coefficient x_i, -i d_j] to each test function with spectral
/// theta derivatives and eighth-order radial differences, on `grid` and on
/// its refinement. Throws GridTooCoarse if the two disagree by more than tol.
/// A vanishing coefficient yields a skipped report.
CommutatorReport commutator_check(const PositionSymbol& position,
                                  std::span<const TestFunction> functions,
                                  const PolarGrid& grid = {}, double tol = 1e-6);

/// Checks m_{U(g) u}(x) = m_u(a R(-theta) x) at every sample.
CheckReport covariance_check(const FiducialSpec& spec, const Observable& u, const GroupElement& g,
                             std::span<const Vec2> xs, double tol = 1e-6);

/// Pointwise m_{alpha u + beta v} against alpha m_u + beta m_v.
CheckReport linearity_check(const FiducialSpec& spec, const Observable& u, const Observable& v,
                            double alpha, double beta, std::span<const Vec2> xs,
                            double tol = 1e-8);

/// Sample points: `count` radii spread geometrically over [r_lo, r_hi],
/// with angles stepped by the golden angle.
std::vector<Vec2> sample_points(int count, double r_lo = 0.2, double r_hi = 5.0);

}  // namespace acsq
