"""Exterior radial mode solutions and the traction route to the eigenvalues.

For each wavenumber the exterior field around the straight fiber of radius
eps separates into radial profiles built from K0, K1, K2.  Three boundary
data sets matter:

laplace_scalar  U(eps) = 1                      U(r) = K0(pi r|k|)/K0(pi eps|k|)
tangential      U_z(eps) = 1, U_r(eps) = 0      Stokes, theta-independent
normal          U_r(eps) = 1, U_th(eps) = 1,    Stokes, cos/sin theta structure
                U_z(eps) = 0                    (via U+ = U_r + U_th, U- = U_r - U_th)

The traction of the solution, integrated over the cross-section, is an
independent numerical route to the same eigenvalues that spectra.py writes
down in closed form; matching the two to 1e-6 is the module's central
oracle property.  Derivatives at r = eps use one-sided 4-point stencils
(the fluid only exists for r >= eps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_k, bessel_k_detail
from .spectra import EigenFamily, Mode, eigenvalue

DIRECTIONS = ("laplace_scalar", "tangential", "normal")

_FAMILY_OF = {
    "laplace_scalar": EigenFamily("laplace", "longitudinal", "pde"),
    "tangential": EigenFamily("stokes", "tangential", "pde"),
    "normal": EigenFamily("stokes", "normal", "pde"),
}


class UnderflowError(ArithmeticError):
    """eps*k so large that the boundary K-values underflow to zero."""


class AccuracyError(ArithmeticError):
    """Finite-difference step fell below the resolvable precision floor."""


@dataclass(frozen=True)
class RadialModeSolution:
    """Profile constants of one exterior mode (subset used per direction)."""

    mode: Mode
    direction: str
    c_p: complex
    c0: complex | None = None
    c1: complex | None = None
    c2: complex | None = None


def _boundary_k(mode):
    z = mode.z
    evals = [bessel_k_detail(order, z) for order in (0, 1, 2)]
    if any(e.underflowed or e.value == 0.0 for e in evals):
        raise UnderflowError(f"K underflow at z = pi*eps*|k| = {z:.3f}")
    return tuple(e.value for e in evals)


def solve_mode(direction, mode):
    """Compute the profile constants for one (direction, mode) pair."""
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    k0, k1, k2 = _boundary_k(mode)
    eps, k = mode.eps, mode.k
    z = mode.z
    sgn = 1.0 if k > 0 else -1.0

    if direction == "laplace_scalar":
        # c0 stores the normalization 1/K0(pi eps |k|); no pressure
        return RadialModeSolution(mode, direction, c_p=0.0 + 0.0j, c0=1.0 / k0)

    if direction == "tangential":
        c_p = -1j * 2.0 * math.pi * k * k1 / (2.0 * k0 * k1 + z * (k0 * k0 - k1 * k1))
        c1 = -c_p * eps * k0 / (2.0 * k1)
        c0 = 1.0 / k0 + 1j * c_p * eps * k1 * sgn / (2.0 * k0)
        return RadialModeSolution(mode, direction, c_p=c_p, c0=c0, c1=c1)

    # normal
    den = 2.0 * k0 * k1 * k2 + z * (k1 * k1 * (k0 + k2) - 2.0 * k0 * k0 * k2)
    c_p = 4.0 * math.pi * abs(k) * k1 * k2 / den
    c1 = 1j * c_p * eps * k0 * sgn / (2.0 * k1)
    c0 = 2.0 / k0 - c_p * eps * k1 / (2.0 * k0)
    c2 = -c_p * eps * k1 / (2.0 * k2)
    return RadialModeSolution(mode, direction, c_p=c_p, c0=c0, c1=c1, c2=c2)


def evaluate_profile(sol, r):
    """Profile values at radii r >= eps.

    Returns a dict of complex arrays.  Keys: laplace_scalar -> U, p (p = 0);
    tangential -> U_r, U_z, p; normal -> U_r, U_theta, U_z, U_plus, U_minus, p.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < sol.mode.eps * (1.0 - 1e-12)):
        raise ValueError("profiles are defined for r >= eps only")
    a = math.pi * abs(sol.mode.k)
    k0r = bessel_k(0, a * r)
    k1r = bessel_k(1, a * r)
    sgn = 1.0 if sol.mode.k > 0 else -1.0

    if sol.direction == "laplace_scalar":
        return {"U": sol.c0 * k0r, "p": np.zeros_like(k0r, dtype=complex)}

    if sol.direction == "tangential":
        p = sol.c_p * k0r
        u_r = sol.c1 * k1r + 0.5 * sol.c_p * r * k0r
        u_z = sol.c0 * k0r - 0.5j * sol.c_p * r * k1r * sgn
        return {"U_r": u_r, "U_z": u_z, "p": p}

    k2r = bessel_k(2, a * r)
    p = sol.c_p * k1r
    u_z = sol.c1 * k1r - 0.5j * sol.c_p * r * k0r * sgn
    u_plus = sol.c0 * k0r + 0.5 * sol.c_p * r * k1r
    u_minus = sol.c2 * k2r + 0.5 * sol.c_p * r * k1r
    return {
        "U_r": 0.5 * (u_plus + u_minus),
        "U_theta": 0.5 * (u_plus - u_minus),
        "U_z": u_z,
        "U_plus": u_plus,
        "U_minus": u_minus,
        "p": p,
    }


def _deriv_at_eps(values_fn, eps, h):
    """One-sided 4-point first derivative at r = eps, O(h^3)."""
    if h < eps * 1e-12:
        raise AccuracyError("finite-difference step below precision floor")
    r = eps + h * np.arange(4)
    f = values_fn(r)
    return (-11.0 * f[0] + 18.0 * f[1] - 9.0 * f[2] + 2.0 * f[3]) / (6.0 * h)


def traction_eigenvalue_numeric(direction, mode, h_rel=1e-5):
    """Surface-traction recomputation of the pde eigenvalue.

    Differentiates the exterior profiles one-sidedly at r = eps and
    assembles the cross-section-integrated force; theta integration is
    analytic.  The result must be real to 1e-10 relative.
    """
    sol = solve_mode(direction, mode)
    eps = mode.eps
    h = eps * h_rel
    k = mode.k

    if direction == "laplace_scalar":
        dU = _deriv_at_eps(lambda r: evaluate_profile(sol, r)["U"], eps, h)
        lam = -2.0 * math.pi * eps * dU
    elif direction == "tangential":
        prof = evaluate_profile(sol, np.array([eps]))
        dUz = _deriv_at_eps(lambda r: evaluate_profile(sol, r)["U_z"], eps, h)
        # sigma_rz = dU_z/dr + dU_r/dz with U_z(eps) = 1 normalization
        lam = -2.0 * math.pi * eps * (dUz + 1j * math.pi * k * prof["U_r"][0])
    else:
        prof = evaluate_profile(sol, np.array([eps]))
        dUr = _deriv_at_eps(lambda r: evaluate_profile(sol, r)["U_r"], eps, h)
        dUth = _deriv_at_eps(lambda r: evaluate_profile(sol, r)["U_theta"], eps, h)
        lam = -math.pi * eps * (2.0 * dUr + dUth - prof["p"][0])

    lam = complex(lam)
    if abs(lam.imag) > 1e-10 * max(abs(lam.real), 1.0):
        raise AccuracyError(f"traction eigenvalue not real: {lam}")
    return lam.real


def boundary_residuals(sol):
    """Max abs deviation of the boundary data from its target values."""
    eps = sol.mode.eps
    prof = evaluate_profile(sol, np.array([eps]))
    if sol.direction == "laplace_scalar":
        return {"U": abs(prof["U"][0] - 1.0)}
    if sol.direction == "tangential":
        return {"U_r": abs(prof["U_r"][0]), "U_z": abs(prof["U_z"][0] - 1.0)}
    return {
        "U_minus": abs(prof["U_minus"][0]),
        "U_plus": abs(prof["U_plus"][0] - 2.0),
        "U_z": abs(prof["U_z"][0]),
    }


def incompressibility_residual(sol, r, h_rel=1e-6):
    """Relative divergence residual at interior radii r (centered differences)."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    eps = sol.mode.eps
    h = eps * h_rel
    k = sol.mode.k
    if sol.direction == "laplace_scalar":
        raise ValueError("incompressibility applies to the Stokes directions")
    # centered stencil; nudge boundary points inward so r - h stays >= eps
    r = np.maximum(r, eps + h)
    up = evaluate_profile(sol, r + h)
    dn = evaluate_profile(sol, r - h)
    mid = evaluate_profile(sol, r)
    dUr = (up["U_r"] - dn["U_r"]) / (2.0 * h)
    if sol.direction == "tangential":
        div = dUr + mid["U_r"] / r + 1j * math.pi * k * mid["U_z"]
    else:
        div = dUr + (mid["U_r"] - mid["U_theta"]) / r + 1j * math.pi * k * mid["U_z"]
    scale = np.maximum.reduce(
        [np.abs(dUr), np.abs(mid["U_r"] / r), np.abs(math.pi * k * mid["U_z"]), 1e-300 * np.ones_like(r)]
    )
    return np.abs(div) / scale


def _second_deriv(fn, r, h):
    return (fn(r + h) - 2.0 * fn(r) + fn(r - h)) / (h * h)


def _first_deriv(fn, r, h):
    return (fn(r + h) - fn(r - h)) / (2.0 * h)


def residual_momentum(sol, r, h_rel=1e-3):
    """Relative residuals of the radial momentum/pressure equations at r > eps.

    Each profile satisfies a modified-Bessel-type operator
    L_m = d^2/dr^2 + (1/r) d/dr - m^2/r^2 - (pi k)^2 forced by the
    pressure gradient; pressure itself is harmonic (L_0 or L_1 annihilates
    it).  Residuals are measured against the magnitude of the largest term.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= sol.mode.eps):
        raise ValueError("residual_momentum needs strictly interior radii r > eps")
    # step resolves both the K-function oscillation scale 1/(pi|k|) and 1/r terms
    h = h_rel * np.minimum(r, 1.0 / (math.pi * abs(sol.mode.k)))
    h = np.minimum(h, 0.5 * (r - sol.mode.eps))
    a2 = (math.pi * sol.mode.k) ** 2
    k = sol.mode.k

    def get(key):
        return lambda rr: evaluate_profile(sol, rr)[key]

    def lop(key, m):
        f = get(key)
        val = f(r)
        d2 = _second_deriv(f, r, h)
        d1 = _first_deriv(f, r, h)
        out = d2 + d1 / r - (m * m / (r * r) + a2) * val
        # scale from the pre-cancellation term sizes: for small pi|k|r the
        # Laplacian pieces cancel to O((pi k r)^2) of their own magnitude,
        # and a residual relative to that cancellation is the honest FD
        # figure of merit
        scale = np.abs(d2) + np.abs(d1) / r + (m * m / (r * r) + a2) * np.abs(val)
        return out, scale

    res = {}
    if sol.direction == "laplace_scalar":
        out, scale = lop("U", 0)
        res["U"] = np.abs(out) / scale
        return res

    if sol.direction == "tangential":
        out, scale = lop("p", 0)
        res["p"] = np.abs(out) / np.maximum(scale, 1e-300)
        dp = _first_deriv(get("p"), r, h)
        out, scale = lop("U_r", 1)
        res["U_r"] = np.abs(out - dp) / np.maximum(scale + np.abs(dp), 1e-300)
        out, scale = lop("U_z", 0)
        rhs = 1j * math.pi * k * get("p")(r)
        res["U_z"] = np.abs(out - rhs) / np.maximum(scale + np.abs(rhs), 1e-300)
        return res

    out, scale = lop("p", 1)
    res["p"] = np.abs(out) / np.maximum(scale, 1e-300)
    dp = _first_deriv(get("p"), r, h)
    pval = get("p")(r)
    out, scale = lop("U_plus", 0)
    rhs = dp + pval / r
    res["U_plus"] = np.abs(out - rhs) / np.maximum(scale + np.abs(rhs), 1e-300)
    out, scale = lop("U_minus", 2)
    rhs = dp - pval / r
    res["U_minus"] = np.abs(out - rhs) / np.maximum(scale + np.abs(rhs), 1e-300)
    out, scale = lop("U_z", 1)
    rhs = 1j * math.pi * k * pval
    res["U_z"] = np.abs(out - rhs) / np.maximum(scale + np.abs(rhs), 1e-300)
    return res


def traction_vs_closed_form(direction, mode):
    """(numeric traction eigenvalue, closed-form eigenvalue, relative gap)."""
    lam_num = traction_eigenvalue_numeric(direction, mode)
    lam_cf = eigenvalue(_FAMILY_OF[direction], mode)
    return lam_num, lam_cf, abs(lam_num - lam_cf) / abs(lam_cf)
