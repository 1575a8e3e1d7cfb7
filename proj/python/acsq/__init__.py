"""Affine coherent state quantization of a particle in a rotating punctured plane.

The heavy lifting lives in the C++ extension ``acsq._core``; this package
re-exports it and adds :func:`cli` as a thin wrapper over the command line.
"""

from ._core import (
    AcsqError,
    DivergentMomentError,
    FiducialSpec,
    FrameParams,
    Mode,
    QuantumCoefficients,
    RadialGrid,
    Spacing,
    affine_convolve,
    classical_trajectory,
    commutator_check,
    compute_moments,
    compute_sigma,
    convergence_study,
    critical_omega,
    default_grid,
    eigenfunction,
    eigenvalue,
    fit_sigma,
    gram_matrix,
    identity_check,
    is_bounded,
    power_law_check,
    run_cli,
    solve_sector,
    spectral_params,
    spectrum_table,
)

__version__ = "0.1.0"


def cli(*args):
    """Run ``acsq <args>`` in-process and return ``(exit_code, stdout, stderr)``."""
    return run_cli([str(a) for a in args])


__all__ = [name for name in dir() if not name.startswith("_")]
