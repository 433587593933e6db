"""Linearized relaxation of a nearly straight inextensible filament.

Normal perturbations Y(z, t) of the straight periodic fiber decouple by
wavenumber, each mode decaying at rate

    nu_k = (-k^4 + k^2) / lambda_n(eps, k)

with lambda_n the normal-direction Dirichlet-to-force eigenvalue.  nu_1
vanishes exactly (translation-like neutral mode) and every |k| >= 2 mode
decays.  Two steppers are provided: explicit Euler, whose stability
ceiling dt < 2/|nu_Kmax| reproduces the dt ~ ds^4 (grid coarser than the
fiber radius) and dt ~ eps * ds^3 (grid finer than the radius) scalings,
and the exact exponential integrator, unconditionally stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectra import EigenFamily, eigenvalues

_NORMAL_PDE = EigenFamily("stokes", "normal", "pde")


def nu(eps, k):
    """Decay rate of the wavenumber-k normal perturbation; nu_1 = 0 exactly."""
    k_arr = np.atleast_1d(np.asarray(k))
    if np.any(k_arr == 0):
        raise ValueError("k = 0 is excluded from the dynamics")
    lam = eigenvalues(_NORMAL_PDE, eps, k_arr)
    kk = np.abs(k_arr).astype(float)
    out = (-(kk**4) + kk**2) / lam
    return float(out[0]) if np.ndim(k) == 0 else out


@dataclass(frozen=True)
class DynamicsState:
    """Normal displacement coefficients for 1 <= |k| <= K_max, two components."""

    coeffs: np.ndarray  # shape (2, 2*K_max+1), k = -K..K, k=0 slot always 0
    eps: float
    t: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] != 2 or c.shape[1] % 2 == 0:
            raise ValueError("coeffs must have shape (2, 2*K_max+1)")
        if c[:, (c.shape[1] - 1) // 2].any():
            raise ValueError("the k = 0 coefficient must vanish (zero-mean constraint)")
        object.__setattr__(self, "coeffs", c)

    @property
    def k_max(self):
        return (self.coeffs.shape[1] - 1) // 2

    @property
    def k_values(self):
        return np.arange(-self.k_max, self.k_max + 1)

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))


def single_mode_state(eps, k_max, k, amplitude=1.0):
    """A state holding one conjugate-symmetric mode pair in the x component."""
    coeffs = np.zeros((2, 2 * k_max + 1), dtype=complex)
    coeffs[0, k_max + abs(k)] = amplitude
    coeffs[0, k_max - abs(k)] = np.conj(amplitude)
    return DynamicsState(coeffs, eps)


def step(state, dt, scheme):
    """One time step: explicit_euler (1 + dt nu) or implicit_exact (e^{dt nu})."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    k = state.k_values
    mult = np.ones_like(k, dtype=float)
    nz = k != 0
    rates = nu(state.eps, k[nz])
    if scheme == "explicit_euler":
        mult[nz] = 1.0 + dt * rates
    elif scheme == "implicit_exact":
        mult[nz] = np.exp(dt * rates)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return DynamicsState(state.coeffs * mult[None, :], state.eps, state.t + dt)


def energy(state):
    """Bending + tension quadratic form: (1/2) sum (pi k)^4 |Y|^2 + (1/2) sum (pi k)^2 |Y|^2."""
    pk2 = (math.pi * state.k_values) ** 2
    mag2 = np.sum(np.abs(state.coeffs) ** 2, axis=0)
    return float(0.5 * np.sum((pk2 * pk2 + pk2) * mag2))


def grid_spacing(k_max):
    """ds of the synthesis grid holding modes up to K_max: 2/(2 K_max + 2)."""
    return 2.0 / (2 * k_max + 2)


def max_stable_dt(eps, k_max, empirical=False, n_steps=200, amp_window=1e6):
    """Largest explicit-Euler step that keeps the stiffest mode bounded.

    Analytic value: 2/|nu_{K_max}|.  Empirical mode bisects dt until the
    n_steps-step amplification of a pure K_max mode sits at the 10^{+6}
    growth boundary; agrees with the analytic value to a few percent
    (the boundary sits at (1 + 10^{6/n_steps})/|nu|).
    """
    if k_max < 8:
        raise ValueError("k_max >= 8 required")
    rate = nu(eps, k_max)
    analytic = 2.0 / abs(rate)
    if not empirical:
        return analytic

    def grows(dt):
        amp = abs(1.0 + dt * rate) ** n_steps
        return amp > amp_window

    lo, hi = 0.5 * analytic, 4.0 * analytic
    assert not grows(lo) and grows(hi)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if grows(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def stability_sweep(eps, k_max_list, empirical=True):
    """Rows (eps, K_max, ds, dt_analytic, dt_empirical) over a K_max sweep."""
    rows = []
    for k_max in k_max_list:
        ds = grid_spacing(k_max)
        dt_a = max_stable_dt(eps, k_max, empirical=False)
        dt_e = max_stable_dt(eps, k_max, empirical=True) if empirical else float("nan")
        rows.append((eps, int(k_max), ds, dt_a, dt_e))
    return rows


def stability_slope(eps, k_max_list):
    """OLS slope of log(max stable dt) against log(ds) across the sweep."""
    rows = stability_sweep(eps, k_max_list, empirical=False)
    ds = np.log([r[2] for r in rows])
    dt = np.log([r[3] for r in rows])
    slope, _ = np.polyfit(ds, dt, 1)
    return float(slope)
