import math

import numpy as np
import pytest

import acsq


@pytest.fixture(scope="module")
def spec():
    return acsq.FiducialSpec()


@pytest.fixture(scope="module")
def unit():
    return acsq.QuantumCoefficients(N0=1.0, N1=0.5, sigma=1.25)


def test_default_moments(spec):
    m = acsq.compute_moments(spec)
    assert m["c_psi"] == pytest.approx(math.pi**2 / 4, rel=1e-12)
    assert m["N"][0.0] == pytest.approx(1 / 6, rel=1e-12)
    assert m["N"][1.0] == pytest.approx(1 / 12, rel=1e-12)
    s = acsq.compute_sigma(spec)
    assert s["sigma"] == pytest.approx(1.25, rel=1e-12)
    assert s["warnings"] == []


def test_coefficients_from_spec(spec):
    c = acsq.QuantumCoefficients.from_spec(spec)
    assert (c.N0, c.N1) == pytest.approx((1 / 6, 1 / 12), rel=1e-12)
    assert c.sigma == pytest.approx(1.25, rel=1e-12)


def test_divergent_moment_is_typed():
    bad = acsq.FiducialSpec("gamma:nu=2.5,lambda=1")
    with pytest.raises(acsq.DivergentMomentError) as info:
        acsq.compute_moments(bad, [2.0])
    assert info.value.order == 2.0
    assert info.value.kind == "DivergentMoment"
    assert isinstance(info.value, acsq.AcsqError)


def test_bad_profile_raises():
    with pytest.raises(acsq.AcsqError):
        acsq.FiducialSpec("gamma:nu=0.5,lambda=1")


def test_identity_and_powerlaw(spec):
    assert acsq.identity_check(spec)["pass"]
    assert acsq.power_law_check(spec, 2.0)["max_deviation"] < 1e-6
    assert acsq.affine_convolve(spec, "const:1", 0.7, -0.2) == pytest.approx(math.pi**2 / 4, rel=1e-10)


def test_closed_form_spectrum(unit):
    paper = acsq.FrameParams(mode=acsq.Mode.PAPER)
    assert acsq.eigenvalue(paper, unit, 0, 0) == pytest.approx(1 + math.sqrt(1.25), rel=1e-14)
    assert acsq.critical_omega(paper, unit) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert acsq.critical_omega(acsq.FrameParams(), unit) == pytest.approx(1.0, abs=1e-12)
    assert not acsq.is_bounded(acsq.FrameParams(Omega=1.5, mode=acsq.Mode.PAPER), unit)
    rows = acsq.spectrum_table(acsq.FrameParams(), unit, n_max=1, l_min=-1, l_max=1)
    assert len(rows) == 6


def test_eigenfunctions_are_orthonormal(unit):
    g = acsq.gram_matrix(acsq.FrameParams(), unit, 1, 5)
    assert g.shape == (6, 6)
    assert np.abs(g - np.eye(6)).max() < 1e-8
    pts = np.array([[0.5, 0.0], [0.0, 0.5]])
    phi = acsq.eigenfunction(acsq.FrameParams(), unit, 0, 1, pts)
    assert phi.dtype == np.complex128
    assert abs(phi[0]) == pytest.approx(abs(phi[1]))


def test_radial_solver_matches_closed_form():
    c = acsq.QuantumCoefficients(N0=1 / 6, N1=1 / 12, sigma=1.25)
    p = acsq.FrameParams()
    grid = acsq.default_grid(p, c, 2, 1)
    study = acsq.convergence_study(c, p, 1, 3, grid)
    omega_eff = math.sqrt(2 * c.N1)
    for row in study["rows"]:
        exact = omega_eff * (2 * row["n"] + 1 + math.sqrt(1.25 + 1))
        assert row["extrapolated"] == pytest.approx(exact, rel=1e-6)
        assert row["order"] == pytest.approx(2.0, abs=0.2)


def test_classical_trajectory():
    res = acsq.classical_trajectory(acsq.FrameParams(Omega=0.5), periods=5)
    assert res["verdict"] == "bounded"
    assert res["trajectory"].shape[1] == 3
    assert res["trajectory"][0, 1] == 1.0


def test_cli_roundtrip():
    code, out, err = acsq.cli("--N0", 1, "--N1", 0.5, "critical-omega")
    assert code == 0
    assert "paper,1.4142135623730951" in out
    code, _, err = acsq.cli("--mode", "paper", "--N0", 1, "--N1", 0.5, "--sigma", 1.25, "--Omega", 1.5, "spectrum")
    assert code == 3
    assert "critical" in err
