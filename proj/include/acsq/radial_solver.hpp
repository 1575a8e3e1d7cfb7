#pragma once

// Finite-difference eigensolver for one angular sector of
//
//   -lap/(2m) + sigma/(2m r^2) + N1 m omega^2 r^2
//
// on [r_min, r_max]. It is the numerical oracle for the closed-form
// spectrum; rotation enters only as the exact shift -N0 Omega (l + varsigma)
// applied after diagonalization.

#include <span>
#include <vector>

#include "acsq/error.hpp"
#include "acsq/spectrum.hpp"

namespace acsq {

enum class Spacing { Uniform, Geometric };

/// Condition imposed at r_min. Dirichlet is the default; Regular ties the
/// first interior node to the r^alpha behaviour of the regular solution and
/// is needed when alpha = 0 (sigma and l_eff both zero).
enum class InnerBoundary { Dirichlet, Regular };

struct RadialGrid {
  double r_min = 1e-4;
  double r_max = 10.0;
  int n = 4096;  // interior nodes; n + 1 intervals
  Spacing spacing = Spacing::Geometric;

  /// Throws GridError unless 0 < r_min < r_max and n >= 64.
  void validate() const;
  /// Spacing in r (Uniform) or in log r (Geometric).
  double step() const;
  std::vector<double> nodes() const;
  /// Quadrature weights dr at the nodes.
  std::vector<double> weights() const;
  /// Same bounds, half the step.
  RadialGrid halved() const;
};

/// r_max = 8 l_osc sqrt(2 n_max + alpha_max + 1), r_min = 1e-4 l_osc,
/// n = 4096 geometric nodes.
RadialGrid default_grid(const FrameParams& p, const QuantumCoefficients& c, int n_max, int l_abs_max);

struct SectorOperator {
  int l = 0;
  double l_eff = 0.0;
  RadialGrid grid;
  InnerBoundary inner = InnerBoundary::Dirichlet;
  std::vector<double> diag;
  std::vector<double> offdiag;  // n - 1 entries; the matrix is symmetric
  Warnings warnings;
};

/// Second-order discretization. Uniform grids use u = sqrt(r) phi with the
/// (l_eff^2 + sigma - 1/4)/(2m r^2) potential; geometric grids use the
/// symmetrized log-r form of the same operator.
SectorOperator build_sector(const QuantumCoefficients& c, const FrameParams& p, int l,
                            const RadialGrid& grid, InnerBoundary inner = InnerBoundary::Dirichlet);

struct SectorSolution {
  std::vector<double> energies;            // Omega-free, ascending
  std::vector<double> r;                   // grid nodes
  std::vector<double> weights;             // dr at the nodes
  std::vector<std::vector<double>> u;      // sqrt(r) phi, sum u^2 dr = 1
};

/// Lowest k eigenpairs; requires k <= n/4.
SectorSolution solve_sector(const SectorOperator& op, int k);

/// -N0 Omega (l + varsigma) in HamiltonianDerived mode. The printed formula
/// has no Hamiltonian behind it, so PaperFormula has no solver counterpart
/// and this throws InvalidArgument for it.
double solver_rotation_shift(const FrameParams& p, const QuantumCoefficients& c, int l);

struct ConvergenceRow {
  int n = 0;                    // radial index
  std::vector<double> energies; // one per rung
  double extrapolated = 0.0;
  double order = 0.0;           // observed, from the last three rungs
  double err_estimate = 0.0;
};

struct ConvergenceStudy {
  int l = 0;
  std::vector<int> grid_n;
  std::vector<ConvergenceRow> rows;
};

/// Solves on each rung (each must halve the previous step) and Richardson
/// extrapolates assuming second order. Throws NonConvergent if successive
/// differences fail to shrink.
ConvergenceStudy convergence_study(const QuantumCoefficients& c, const FrameParams& p, int l, int k,
                                   std::span<const RadialGrid> ladder,
                                   InnerBoundary inner = InnerBoundary::Dirichlet);

/// `rungs` grids starting at `base`, each with half the step of the last.
std::vector<RadialGrid> grid_ladder(const RadialGrid& base, int rungs);

/// Max over grid points and angles of |A^2/(2m) + A0_classical| relative to
/// |A^2/(2m)|, with A = m N0 x cross Omega and A0_classical = -(m/2) Omega^2 N0^2 |x|^2.
double centrifugal_cancellation_check(const QuantumCoefficients& c, const FrameParams& p,
                                      const RadialGrid& grid);

/// Fitted exponent of |u(r)| / sqrt(r) over the first decade of r above r_lo.
double near_origin_exponent(std::span<const double> r, std::span<const double> u, double r_lo);

}  // namespace acsq
