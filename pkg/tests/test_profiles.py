import math

import numpy as np
import pytest

from slenderspec import bessel, profiles
from slenderspec.spectra import Mode


@pytest.mark.parametrize("direction", profiles.DIRECTIONS)
@pytest.mark.parametrize("eps", [0.1, 0.01])
@pytest.mark.parametrize("k", [1, 3, 7, 20])
def test_traction_matches_closed_form(direction, eps, k):
    num, cf, gap = profiles.traction_vs_closed_form(direction, Mode(k, eps))
    assert gap < 1e-6
    assert num > 0 and cf > 0


def test_traction_negative_k():
    # traction route is |k|-even like the closed form
    a = profiles.traction_eigenvalue_numeric("tangential", Mode(5, 0.02))
    b = profiles.traction_eigenvalue_numeric("tangential", Mode(-5, 0.02))
    assert a == pytest.approx(b, rel=1e-9)


@pytest.mark.parametrize("direction", profiles.DIRECTIONS)
def test_boundary_conditions(direction):
    for eps, k in ((0.1, 2), (0.01, 11), (0.05, -4)):
        sol = profiles.solve_mode(direction, Mode(k, eps))
        res = profiles.boundary_residuals(sol)
        assert max(res.values()) < 1e-12


def test_laplace_profile_shape():
    mode = Mode(3, 0.05)
    sol = profiles.solve_mode("laplace_scalar", mode)
    r = np.linspace(mode.eps, 1.0, 50)
    prof = profiles.evaluate_profile(sol, r)
    a = math.pi * 3
    expected = bessel.bessel_k(0, a * r) / bessel.bessel_k(0, a * mode.eps)
    assert np.max(np.abs(prof["U"] - expected)) < 1e-14
    assert np.all(prof["p"] == 0)


def test_profile_constants_vs_oracle():
    # the constants are rational in K0, K1, K2; recompute with the oracle
    mode = Mode(4, 0.03)
    z = mode.z
    k0 = bessel.oracle_bessel_k(0, z)
    k1 = bessel.oracle_bessel_k(1, z)
    sol = profiles.solve_mode("tangential", mode)
    c_p = -1j * 2.0 * math.pi * mode.k * k1 / (2.0 * k0 * k1 + z * (k0 * k0 - k1 * k1))
    assert sol.c_p == pytest.approx(c_p, rel=1e-12)
    assert sol.c1 == pytest.approx(-c_p * mode.eps * k0 / (2.0 * k1), rel=1e-12)


def test_far_field_decay():
    for direction in profiles.DIRECTIONS:
        mode = Mode(5, 0.02)
        sol = profiles.solve_mode(direction, mode)
        r_far = 10.0 / (math.pi * abs(mode.k))
        prof = profiles.evaluate_profile(sol, np.array([r_far]))
        vals = [abs(prof[key][0]) for key in prof]
        assert max(vals) < 1e-3


def test_incompressibility():
    for direction in ("tangential", "normal"):
        mode = Mode(6, 0.04)
        sol = profiles.solve_mode(direction, mode)
        r = np.linspace(mode.eps, 0.5, 40)
        res = profiles.incompressibility_residual(sol, r)
        assert np.max(res) < 1e-6
    sol = profiles.solve_mode("laplace_scalar", Mode(2, 0.1))
    with pytest.raises(ValueError):
        profiles.incompressibility_residual(sol, np.array([0.2]))


@pytest.mark.parametrize("direction", profiles.DIRECTIONS)
def test_momentum_residuals(direction):
    mode = Mode(3, 0.05)
    sol = profiles.solve_mode(direction, mode)
    r = np.linspace(2.0 * mode.eps, 0.8, 20)
    res = profiles.residual_momentum(sol, r)
    for key, vals in res.items():
        assert np.max(vals) < 1e-5, (key, float(np.max(vals)))


def test_domain_guards():
    mode = Mode(2, 0.1)
    sol = profiles.solve_mode("tangential", mode)
    with pytest.raises(ValueError):
        profiles.evaluate_profile(sol, np.array([0.05]))
    with pytest.raises(ValueError):
        profiles.residual_momentum(sol, np.array([0.1]))
    with pytest.raises(ValueError):
        profiles.solve_mode("sideways", mode)


def test_underflow_guard():
    # z = pi*eps*k far past the K underflow point
    with pytest.raises(profiles.UnderflowError):
        profiles.solve_mode("tangential", Mode(100_000, 0.01))


def test_normal_plus_minus_split():
    mode = Mode(2, 0.1)
    sol = profiles.solve_mode("normal", mode)
    r = np.linspace(mode.eps, 0.5, 10)
    prof = profiles.evaluate_profile(sol, r)
    assert np.max(np.abs(prof["U_r"] - 0.5 * (prof["U_plus"] + prof["U_minus"]))) < 1e-14
    assert np.max(np.abs(prof["U_theta"] - 0.5 * (prof["U_plus"] - prof["U_minus"]))) < 1e-14
