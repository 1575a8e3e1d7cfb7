#pragma once

// Stationary states of the quantized rotating-frame Hamiltonian
//
//   H = -lap/(2m) + sigma/(2m|x|^2) - N0 Omega L_z + N1 m omega^2 |x|^2
//
// in natural units. Eigenvalues come in two modes: the formula as printed
// in the literature (PaperFormula) and the one obtained by diagonalizing
// the Hamiltonian above (HamiltonianDerived). They differ only in the
// Omega coupling; nothing here mixes them.

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "acsq/group.hpp"
#include "acsq/moments.hpp"

namespace acsq {

enum class Mode { PaperFormula, HamiltonianDerived };

std::string_view to_string(Mode m);

struct FrameParams {
  double mass = 1.0;
  double omega = 1.0;     // trap frequency
  double Omega = 0.0;     // frame angular velocity, sign is orientation
  double varsigma = 0.0;  // quasiperiodicity, 0 or 1/2
  Mode mode = Mode::HamiltonianDerived;

  /// Throws InvalidArgument on nonpositive mass/omega or varsigma not in {0, 1/2}.
  void validate() const;
};

/// The three fiducial-dependent numbers the Hamiltonian needs.
struct QuantumCoefficients {
  double n0 = 0.0;
  double n1 = 0.0;
  double sigma = 0.0;

  /// Requires N0, N1 and sigma in the moment set.
  static QuantumCoefficients from_moments(const MomentSet& m);
};

struct ModeIndex {
  int n = 0;  // radial, >= 0
  int l = 0;  // angular
};

struct SpectralParams {
  double alpha = 0.0;       // sqrt(sigma + (l + varsigma)^2)
  double omega_eff = 0.0;   // omega sqrt(2 N1)
  double osc_length = 0.0;  // (m omega_eff)^(-1/2)
  double paper_l0 = 0.0;    // (4 N1 m^2 omega^2)^(-1/4), kept for reference
};

SpectralParams spectral_params(const FrameParams& p, const QuantumCoefficients& c, int l);

/// Associated Laguerre polynomial L_n^(alpha)(t) by three-term recurrence.
double laguerre(int n, double alpha, double t);

/// The Omega-dependent part of E_{n,l} in the active mode.
double rotation_coupling(const FrameParams& p, const QuantumCoefficients& c, int l);

/// E_{n,l} in the active mode.
double eigenvalue(const FrameParams& p, const QuantumCoefficients& c, ModeIndex idx);

/// C_{n,alpha} such that int |phi_{n,l}|^2 d^2x = 1.
double eigenfunction_norm(int n, double alpha, double osc_length);

std::complex<double> eigenfunction(const FrameParams& p, const QuantumCoefficients& c, ModeIndex idx,
                                   Vec2 x);
std::vector<std::complex<double>> eigenfunction(const FrameParams& p, const QuantumCoefficients& c,
                                                ModeIndex idx, std::span<const Vec2> xs);

/// Critical angular velocity in the active mode:
/// paper (2 sqrt(N1) / N0) omega, derived omega_eff / N0.
double critical_omega(const FrameParams& p, const QuantumCoefficients& c);
inline double classical_critical_omega(const FrameParams& p) { return p.omega; }
bool is_bounded(const FrameParams& p, const QuantumCoefficients& c);

struct SignatureRow {
  int l = 0;
  double delta_e = 0.0;    // E_{0,l} - E_{0,0}
  double linear = 0.0;     // omega_eff |l|, the sigma = 0 prediction (Omega = 0, varsigma = 0)
  double deviation = 0.0;  // delta_e - linear
};

/// E_{0,l} - E_{0,0} for l in [l_lo, l_hi] in the active mode.
std::vector<SignatureRow> sigma_signature(const FrameParams& p, const QuantumCoefficients& c,
                                          int l_lo, int l_hi);

/// Least-squares sigma from measured E_{0,l} - E_{0,0} at Omega = 0.
double fit_sigma(std::span<const int> ls, std::span<const double> delta_e, double omega_eff,
                 double varsigma = 0.0);

struct SpectrumRow {
  int n = 0;
  int l = 0;
  double varsigma = 0.0;
  Mode mode = Mode::HamiltonianDerived;
  double energy = 0.0;
  double coupling = 0.0;  // rotation_coupling part of energy
  std::optional<double> solver_energy;
  bool bounded = true;
};

std::vector<SpectrumRow> spectrum_table(const FrameParams& p, const QuantumCoefficients& c, int n_max,
                                        int l_lo, int l_hi);

/// Gauss rule for int_0^inf h(t) t^alpha e^-t dt (Golub-Welsch).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_laguerre(int points, double alpha);

/// <phi_{n,l} | phi_{m,l}> for n, m <= n_max by generalized Gauss-Laguerre
/// quadrature over the radial variable; row-major (n_max+1)^2.
std::vector<double> gram_matrix(const FrameParams& p, const QuantumCoefficients& c, int l, int n_max);

}  // namespace acsq
