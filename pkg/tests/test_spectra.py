import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slenderspec import spectra
from slenderspec.spectra import EigenFamily, Mode, PoleError, WindowError

GAMMA = spectra.EULER_GAMMA


# ---------------------------------------------------------------------------
# families, modes, validation
# ---------------------------------------------------------------------------

def test_mode_validation():
    m = Mode(3, 0.1)
    assert m.z == pytest.approx(3 * math.pi * 0.1)
    with pytest.raises(ValueError):
        Mode(0, 0.1)
    with pytest.raises(ValueError):
        Mode(1, 0.7)
    with pytest.raises(ValueError):
        Mode(1, -0.1)


def test_family_validation():
    EigenFamily("laplace", "longitudinal", "pde")
    EigenFamily("stokes", "tangential", "sbt")
    EigenFamily("stokes", "normal", "delta_reg", delta=2.0)
    with pytest.raises(ValueError):
        EigenFamily("laplace", "tangential", "pde")
    with pytest.raises(ValueError):
        EigenFamily("stokes", "longitudinal", "pde")
    with pytest.raises(ValueError):
        EigenFamily("laplace", "longitudinal", "nope")
    with pytest.raises(ValueError):
        EigenFamily("laplace", "longitudinal", "pde", delta=2.0)


def test_delta_thresholds():
    # laplace needs delta > 1, stokes needs delta > sqrt(e)
    EigenFamily("laplace", "longitudinal", "delta_reg", delta=1.01)
    with pytest.raises(ValueError):
        EigenFamily("laplace", "longitudinal", "delta_reg", delta=1.0)
    EigenFamily("stokes", "tangential", "delta_reg", delta=1.66)
    with pytest.raises(ValueError):
        EigenFamily("stokes", "tangential", "delta_reg", delta=1.6)
    with pytest.raises(ValueError):
        EigenFamily("stokes", "normal", "delta_reg")


def test_default_cutoffs():
    eps = 0.01
    assert EigenFamily("stokes", "normal", "sbt_truncated").default_cutoff(eps) == \
        int(73.0 / (100.0 * math.pi * eps))
    assert EigenFamily("stokes", "tangential", "sbt_truncated").default_cutoff(eps) == \
        int(1.0 / (4.0 * math.pi * eps))
    assert EigenFamily("laplace", "longitudinal", "sbt_truncated").default_cutoff(eps) == \
        int(9.0 / (20.0 * math.pi * eps))


# ---------------------------------------------------------------------------
# B-functions and ODEs
# ---------------------------------------------------------------------------

def test_b_scalar_and_vector():
    v = spectra.b_function("B", 2.0)
    assert isinstance(v, float)
    arr = spectra.b_function("B", np.array([1.0, 2.0]))
    assert arr.shape == (2,) and arr[1] == pytest.approx(v)


def test_b_frozen_values():
    assert spectra.b_function("B", 2.0) == pytest.approx(2.4560738596378133, rel=1e-12)


@pytest.mark.parametrize("fam", spectra.ODE_FAMILIES)
def test_ode_consistency(fam):
    """Central difference of each B-family matches its claimed ODE."""
    delta = 2.0 if fam.startswith("B_delta") else None
    if fam in ("B_SB", "B_SB_t", "B_SB_n"):
        z = np.linspace(0.05, 0.55, 25)
        kw = {"allow_past_singularity": False}
    else:
        z = np.linspace(0.05, 5.0, 40)
        kw = {}
    h = 1e-6 * z
    num = (spectra.b_function(fam, z + h, delta=delta, **kw)
           - spectra.b_function(fam, z - h, delta=delta, **kw)) / (2.0 * h)
    rhs = spectra.ode_rhs(fam, z, spectra.b_function(fam, z, delta=delta, **kw), delta=delta)
    assert np.max(np.abs(num - rhs) / np.maximum(np.abs(rhs), 1e-3)) < 1e-5


def test_sbt_pole_guard():
    pole = spectra.SBT_SINGULARITY["longitudinal"]
    with pytest.raises(PoleError):
        spectra.b_function("B_SB", pole + 0.1)
    v = spectra.b_function("B_SB", pole + 0.1, allow_past_singularity=True)
    assert v < 0  # past the singularity the formula flips sign


def test_h_function_bound_and_ratio():
    z = np.linspace(1e-3, 20.0, 10_000)
    h = spectra.h_function(z)
    assert np.all(np.abs(h) < 1.125 * z)
    # the bound is nearly attained somewhere
    assert np.max(np.abs(h) / (1.125 * z)) > 0.9


def test_appendix_c_positivity():
    z = np.geomspace(1e-3, 50.0, 20_000)
    m_minus, m_plus = spectra.appendix_c_margins(z)
    assert np.all(m_minus > 0) and np.all(m_plus > 0)


def test_envelope_spot_values_exact():
    assert spectra.g2_polynomial(Fraction(3, 2)) == Fraction(646907, 163840)
    assert spectra.g3_polynomial(Fraction(1)) == Fraction(3881062, 455625)
    # float path agrees with the exact path
    assert spectra.g2_polynomial(1.5) == pytest.approx(float(Fraction(646907, 163840)), rel=1e-14)
    assert spectra.g3_polynomial(1.0) == pytest.approx(float(Fraction(3881062, 455625)), rel=1e-14)


def test_envelopes_positive_on_range():
    # positivity of the rational envelopes on their stated half-lines is
    # what certifies the margin signs at large z
    for z in np.linspace(1.5, 50.0, 400):
        assert spectra.g2_polynomial(float(z)) > 0
    for z in np.linspace(1.0, 50.0, 400):
        assert spectra.g3_polynomial(float(z)) > 0


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def test_eigenvalue_prefactors():
    eps, k = 0.01, 5
    z = math.pi * eps * k
    lam = spectra.eigenvalue(EigenFamily("laplace", "longitudinal", "pde"), Mode(k, eps))
    assert lam == pytest.approx(2.0 * math.pi * spectra.b_function("B", z), rel=1e-13)
    lam = spectra.eigenvalue(EigenFamily("stokes", "tangential", "pde"), Mode(k, eps))
    assert lam == pytest.approx(4.0 * math.pi * spectra.b_function("B_t", z), rel=1e-13)
    lam = spectra.eigenvalue(EigenFamily("stokes", "normal", "pde"), Mode(k, eps))
    assert lam == pytest.approx(2.0 * math.pi * spectra.b_function("B_n", z), rel=1e-13)


def test_eigenvalues_depend_on_abs_k():
    fam = EigenFamily("stokes", "normal", "pde")
    lam = spectra.eigenvalues(fam, 0.02, np.array([-7, 7]))
    assert lam[0] == lam[1]


def test_k_zero_rejected():
    fam = EigenFamily("laplace", "longitudinal", "pde")
    with pytest.raises(ValueError):
        spectra.eigenvalues(fam, 0.01, np.array([0, 1]))


def test_truncation_zeroes_high_band():
    eps = 0.01
    fam = EigenFamily("laplace", "longitudinal", "sbt_truncated")
    cutoff = fam.default_cutoff(eps)
    lam = spectra.eigenvalues(fam, eps, np.arange(1, cutoff + 10))
    assert np.all(lam[:cutoff] != 0.0)
    assert np.all(lam[cutoff:] == 0.0)
    fam8 = EigenFamily("laplace", "longitudinal", "sbt_truncated", cutoff=8)
    lam = spectra.eigenvalues(fam8, eps, np.arange(1, 12))
    assert np.all(lam[8:] == 0.0) and np.all(lam[:8] != 0.0)


def test_sign_change_laplace():
    """1/lambda_sbt flips sign across k = 2 e^{-gamma}/(pi eps)."""
    eps = 0.1
    fam = EigenFamily("laplace", "longitudinal", "sbt")
    kc = spectra.sign_change_wavenumber(fam, eps)
    assert kc == pytest.approx(2.0 * math.exp(-GAMMA) / (math.pi * eps), rel=1e-14)
    assert 3 < kc < 4
    assert spectra.eigenvalues(fam, eps, 3) > 0
    assert spectra.eigenvalues(fam, eps, 4) < 0
    with pytest.raises(ValueError):
        spectra.sign_change_wavenumber(EigenFamily("laplace", "longitudinal", "pde"), eps)


def test_sign_change_thresholds():
    assert spectra.SBT_SINGULARITY["longitudinal"] == pytest.approx(1.1229, abs=1e-4)
    assert spectra.SBT_SINGULARITY["tangential"] == pytest.approx(0.6811, abs=1e-4)
    assert spectra.SBT_SINGULARITY["normal"] == pytest.approx(1.8514, abs=1e-4)


def test_delta_high_k_limits():
    """For eps*k large the delta families flatten to their K0 -> 0 plateaus."""
    eps, k = 0.1, 10_000  # eps*k = 1e3
    delta = 2.0
    lam_t = spectra.eigenvalues(
        EigenFamily("stokes", "tangential", "delta_reg", delta=delta), eps, k)
    assert lam_t == pytest.approx(4.0 * math.pi / (-1.0 + 2.0 * math.log(delta)), rel=1e-3)
    lam_n = spectra.eigenvalues(
        EigenFamily("stokes", "normal", "delta_reg", delta=delta), eps, k)
    assert lam_n == pytest.approx(8.0 * math.pi / (1.0 + 2.0 * math.log(delta)), rel=1e-3)


def test_pde_eigenvalues_positive_and_bounded():
    ks = np.arange(1, 2001)
    for setting, direction, lo_f, width in (
        ("laplace", "longitudinal", 2.0, math.pi),
        ("stokes", "tangential", 4.0, 2.0 * math.pi),
        ("stokes", "normal", 3.0, 3.0 * math.pi),
    ):
        for eps in (0.1, 0.01):
            lam = spectra.eigenvalues(EigenFamily(setting, direction, "pde"), eps, ks)
            base = math.pi**2 * eps * ks
            assert np.all(lam > lo_f * base)
            assert np.all(lam < lo_f * base + width)


# ---------------------------------------------------------------------------
# Gronwall constants and difference bounds
# ---------------------------------------------------------------------------

def test_gronwall_constants_values():
    c = spectra.gronwall_constants()
    assert c["c_B"] == pytest.approx(1.9339, abs=5e-4)
    assert c["c_t"] == pytest.approx(0.90533, abs=5e-4)
    assert c["c_n"] == pytest.approx(3.91618, abs=5e-4)
    assert c["c_l2"] == pytest.approx(1.87531, abs=5e-4)
    assert c["c_t2"] == pytest.approx(0.98352, abs=5e-4)
    assert c["c_n2"] == pytest.approx(3.87653, abs=5e-4)
    # the strict inequalities the bounds rely on
    assert c["c_B"] < 2 and c["c_t"] < 1 and c["c_n"] < 4
    assert c["c_l2"] < 2 and c["c_t2"] < 1 and c["c_n2"] < 4


def test_difference_margin_holds():
    for setting, direction in (
        ("laplace", "longitudinal"), ("stokes", "tangential"), ("stokes", "normal"),
    ):
        eps = 1e-2
        kmax = int(spectra._difference_window(setting, direction, "sbt", eps))
        for k in (1, kmax // 2, kmax):
            m = spectra.eigen_difference_margin(setting, direction, eps, k, "sbt")
            assert m.margin >= 0
        kmax = int(spectra._difference_window(setting, direction, "delta_reg", eps))
        for k in (1, kmax):
            m = spectra.eigen_difference_margin(
                setting, direction, eps, k, "delta_reg", delta=2.0)
            assert m.margin >= 0


def test_difference_window_error():
    eps = 1e-2
    kmax = int(spectra._difference_window("laplace", "longitudinal", "sbt", eps))
    with pytest.raises(WindowError):
        spectra.eigen_difference_margin("laplace", "longitudinal", eps, kmax + 1, "sbt")
    with pytest.raises(ValueError):
        spectra.eigen_difference_margin("laplace", "longitudinal", eps, 1, "midpoint")


# ---------------------------------------------------------------------------
# line / periodic singular operators
# ---------------------------------------------------------------------------

def test_legendre_mu_values():
    assert spectra.legendre_mu(0) == 0.0
    assert spectra.legendre_mu(1) == 2.0
    assert spectra.legendre_mu(3) == pytest.approx(2.0 * (1 + 0.5 + 1 / 3), rel=1e-14)


def test_s_transform_constant_is_zero():
    res = spectra.s_transform_apply(lambda s: np.ones_like(s), resolution=256)
    assert np.max(np.abs(res.values)) < 1e-12
    assert res.warning is None


def test_s_transform_legendre_eigenfunctions():
    from numpy.polynomial import legendre

    for k in (3, 5):
        pk = legendre.Legendre.basis(k)
        res = spectra.s_transform_apply(pk, resolution=2048)
        target = -spectra.legendre_mu(k) * pk(res.points)
        mask = np.abs(pk(res.points)) > 0.2
        rel = np.abs(res.values[mask] - target[mask]) / np.abs(target[mask])
        assert np.max(rel) < 0.02


def test_s_transform_low_resolution_warning():
    res = spectra.s_transform_apply(lambda s: s, resolution=32)
    assert res.warning is not None
    with pytest.raises(ValueError):
        spectra.s_transform_apply(lambda s: s, resolution=4)


def test_s_transform_sample_input():
    h = 2.0 / 512
    s = -1.0 + h * np.arange(1, 512)
    res = spectra.s_transform_apply(1.5 * s**2 - 0.5, resolution=512)
    target = -spectra.legendre_mu(2) * (1.5 * res.points**2 - 0.5)
    mask = np.abs(target) > 0.5
    assert np.max(np.abs(res.values[mask] - target[mask]) / np.abs(target[mask])) < 0.02
    with pytest.raises(ValueError):
        spectra.s_transform_apply(np.ones(10), resolution=512)


def test_periodic_kernel_eigenvalues():
    assert spectra.periodic_kernel_eigenvalue(1) == 4.0
    assert spectra.periodic_kernel_eigenvalue(2) == pytest.approx(4.0 * (1 + 1 / 3), rel=1e-14)
    assert spectra.periodic_kernel_eigenvalue(3) == pytest.approx(4.0 * (1 + 1 / 3 + 1 / 5), rel=1e-14)
    assert spectra.periodic_kernel_eigenvalue(-3) == spectra.periodic_kernel_eigenvalue(3)
    with pytest.raises(ValueError):
        spectra.periodic_kernel_eigenvalue(0)


def test_periodic_kernel_quadrature_matches():
    for k in range(1, 9):
        val = spectra.periodic_kernel_apply_mode(k, resolution=8192)
        mu = spectra.periodic_kernel_eigenvalue(k)
        assert abs(val.imag) < 1e-10
        assert abs(val.real + mu) / mu < 0.01


def test_sbt_symbol_forms_agree():
    eps = 0.01
    # the two symbol forms differ by the O(1/k^2) harmonic-sum defect
    gap1 = abs(spectra.sbt_symbol_log_form(eps, 1) - spectra.sbt_symbol_harmonic_form(eps, 1))
    assert gap1 == pytest.approx(0.0732, abs=5e-4)
    gap20 = abs(spectra.sbt_symbol_log_form(eps, 20) - spectra.sbt_symbol_harmonic_form(eps, 20))
    assert gap20 < 3e-4
    # quadratic decay of the defect
    gap40 = abs(spectra.sbt_symbol_log_form(eps, 40) - spectra.sbt_symbol_harmonic_form(eps, 40))
    assert gap40 == pytest.approx(gap20 / 4.0, rel=0.1)


def test_periodization_identity():
    value, closed, err = spectra.periodization_identity_check()
    assert closed == pytest.approx(-2.0 * math.log(math.pi / 4.0), rel=1e-15)
    assert err < 1e-8
    # halving the tolerance keeps the result stable
    v2, _, err2 = spectra.periodization_identity_check(tol=5e-11)
    assert abs(v2 - value) < 1e-9 and err2 < 1e-8


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-4, max_value=0.1),
       st.integers(min_value=1, max_value=1000))
def test_property_pde_positive(eps, k):
    for setting, direction in (
        ("laplace", "longitudinal"), ("stokes", "tangential"), ("stokes", "normal"),
    ):
        lam = spectra.eigenvalues(EigenFamily(setting, direction, "pde"), eps, k)
        assert lam > 0


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.05, max_value=10.0))
def test_property_h_bound(z):
    assert abs(spectra.h_function(z)) < 1.125 * z
