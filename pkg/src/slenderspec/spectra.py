"""Closed-form spectra of the slender-fiber Dirichlet-to-force maps.

Every eigenvalue family lives on the period-2 torus with Fourier basis
e^{i pi k z} and depends on the wavenumber only through z = pi * eps * |k|:

setting   direction     exact (pde)                 local-expansion (sbt)
-------   ----------    ------------------------    ----------------------------
laplace   longitudinal  2 pi B(z)                   2 pi * -1/(log(z/2)+g)
stokes    tangential    4 pi Bt(z)                  4 pi * -1/(1+2 log(z/2)+2g)
stokes    normal        2 pi Bn(z)                  2 pi *  4/(1-2 log(z/2)-2g)

with g the Euler-Mascheroni constant, B = z K1/K0 and Bt, Bn rational
combinations of K0, K1, K2.  The delta-regularized families replace the
logarithm by log(delta) + K0(delta z) combinations and stay positive and
bounded for delta above the setting's threshold (1 for Laplace, sqrt(e)
for Stokes).

The module also carries the scalar machinery behind the eigenvalue
difference bounds (the ODEs each B-family satisfies, the h(z) forcing of
the normal ODE and its 9z/8 bound, the Gronwall constants) and the
Legendre / harmonic-sum spectrum of the line and periodic singular
integral operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate

from .bessel import EULER_GAMMA, bessel_k, ratio_A, ratio_B

SQRT_E = math.sqrt(math.e)

#: poles of the three sbt B-functions, in z = pi eps |k|
SBT_SINGULARITY = {
    "longitudinal": 2.0 * math.exp(-EULER_GAMMA),
    "tangential": 2.0 * math.exp(-EULER_GAMMA - 0.5),
    "normal": 2.0 * math.exp(0.5 * (1.0 - 2.0 * EULER_GAMMA)),
}


class PoleError(ArithmeticError):
    """Evaluation at (or past) an sbt singularity without opting in."""


class WindowError(ValueError):
    """Wavenumber outside the validity window of a difference bound."""


@dataclass(frozen=True)
class Mode:
    """A single periodic wavenumber paired with a fiber radius."""

    k: int
    eps: float

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("k = 0 is excluded (2D fundamental-solution mode)")
        if not (0.0 < self.eps < 0.5):
            raise ValueError("fiber radius must lie in (0, 1/2)")

    @property
    def z(self):
        return math.pi * self.eps * abs(self.k)


@dataclass(frozen=True)
class EigenFamily:
    """Selector for one eigenvalue formula.

    setting:   'laplace' or 'stokes'
    direction: 'longitudinal' (laplace only), 'tangential', 'normal'
    method:    'pde', 'sbt', 'sbt_truncated', 'delta_reg'
    cutoff:    truncation wavenumber for sbt_truncated (None = standard default)
    delta:     regularization parameter for delta_reg
    """

    setting: str
    direction: str
    method: str
    cutoff: int | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.setting not in ("laplace", "stokes"):
            raise ValueError(f"unknown setting {self.setting!r}")
        if self.direction not in ("longitudinal", "tangential", "normal"):
            raise ValueError(f"unknown direction {self.direction!r}")
        if (self.direction == "longitudinal") != (self.setting == "laplace"):
            raise ValueError("longitudinal <=> laplace")
        if self.method not in ("pde", "sbt", "sbt_truncated", "delta_reg"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "delta_reg":
            threshold = 1.0 if self.setting == "laplace" else SQRT_E
            if self.delta is None or self.delta <= threshold:
                raise ValueError(
                    f"delta_reg in the {self.setting} setting needs delta > {threshold:.4f}"
                )
        elif self.delta is not None:
            raise ValueError("delta only applies to delta_reg")

    def default_cutoff(self, eps):
        """Standard truncation default: N = 1/(4 pi eps) tangential/longitudinal
        (9/(20 pi eps) for Laplace), M = 73/(100 pi eps) normal."""
        if self.direction == "normal":
            return int(73.0 / (100.0 * math.pi * eps))
        if self.direction == "tangential":
            return int(1.0 / (4.0 * math.pi * eps))
        return int(9.0 / (20.0 * math.pi * eps))


# ---------------------------------------------------------------------------
# B-functions and their ODEs
# ---------------------------------------------------------------------------

ODE_FAMILIES = (
    "B", "B_SB", "B_t", "B_SB_t", "B_n", "B_SB_n",
    "B_delta", "B_delta_t", "B_delta_n",
)


def b_function(fam, z, delta=None, allow_past_singularity=False):
    """Evaluate one of the scalar eigenvalue profiles at z > 0.

    sbt families blow up at their singularity (see ``SBT_SINGULARITY``);
    evaluation there raises :class:`PoleError` unless
    ``allow_past_singularity`` is set (needed to plot the blow-up).
    """
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z <= 0) or not np.all(np.isfinite(z)):
        raise ValueError("b_function requires finite z > 0")

    if fam == "B":
        out = ratio_B(z)
    elif fam == "B_t":
        # K1^2-normalized form, finite even where K itself underflows
        a = np.atleast_1d(ratio_A(z))
        out = z / (2.0 * a + z * (a * a - 1.0))
    elif fam == "B_n":
        # K1^3-normalized form with C = K2/K1 = A + 2/z (exact recurrence)
        a = np.atleast_1d(ratio_A(z))
        c = a + 2.0 / z
        num = 4.0 * z * c + z * z * (1.0 - a * c)
        den = 2.0 * a * c + z * (a + c - 2.0 * a * a * c)
        out = num / den
    elif fam in ("B_SB", "B_SB_t", "B_SB_n"):
        direction = {"B_SB": "longitudinal", "B_SB_t": "tangential", "B_SB_n": "normal"}[fam]
        pole = SBT_SINGULARITY[direction]
        if not allow_past_singularity and np.any(z >= pole):
            raise PoleError(f"{fam} has a pole at z = {pole:.6f}; pass allow_past_singularity")
        lg = np.log(0.5 * z)
        if fam == "B_SB":
            out = -1.0 / (lg + EULER_GAMMA)
        elif fam == "B_SB_t":
            out = -1.0 / (1.0 + 2.0 * lg + 2.0 * EULER_GAMMA)
        else:
            out = 4.0 / (1.0 - 2.0 * lg - 2.0 * EULER_GAMMA)
    elif fam in ("B_delta", "B_delta_t", "B_delta_n"):
        if delta is None:
            raise ValueError(f"{fam} requires delta")
        k0d = bessel_k(0, delta * z)
        if fam == "B_delta":
            out = 1.0 / (math.log(delta) + k0d)
        elif fam == "B_delta_t":
            out = 1.0 / (-1.0 + 2.0 * math.log(delta) + 2.0 * k0d)
        else:
            out = 4.0 / (1.0 + 2.0 * math.log(delta) + 2.0 * k0d)
    else:
        raise ValueError(f"unknown B-family {fam!r}")
    out = np.atleast_1d(np.asarray(out, dtype=float))
    return float(out[0]) if scalar else out


def ode_rhs(fam, z, b_value, delta=None):
    """Right-hand side of dB/dz for the named family, at (z, B)."""
    z = np.asarray(z, dtype=float)
    b = np.asarray(b_value, dtype=float)
    if np.any(z <= 0):
        raise ValueError("ode_rhs requires z > 0")
    if fam == "B":
        out = (b * b - z * z) / z
    elif fam == "B_SB":
        out = b * b / z
    elif fam == "B_t":
        out = 2.0 * b * b / z - 2.0 * ratio_A(z) * b
    elif fam == "B_SB_t":
        out = 2.0 * b * b / z
    elif fam == "B_n":
        out = 0.5 * b * b / z - h_function(z)
    elif fam == "B_SB_n":
        out = 0.5 * b * b / z
    elif fam in ("B_delta", "B_delta_t", "B_delta_n"):
        if delta is None:
            raise ValueError(f"{fam} requires delta")
        dk1 = delta * bessel_k(1, delta * z)
        factor = {"B_delta": 1.0, "B_delta_t": 2.0, "B_delta_n": 0.5}[fam]
        out = factor * dk1 * b * b
    else:
        raise ValueError(f"unknown B-family {fam!r}")
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def h_function(z):
    """Forcing term of the normal-direction ODE; satisfies |h(z)| < 9z/8.

    Written in the well-scaled ratio variable A = K0/K1 in (0, 1) so that
    no K-powers overflow or underflow.
    """
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z <= 0):
        raise ValueError("h_function requires z > 0")
    a = np.atleast_1d(ratio_A(z))
    n3 = _n3_of_a(z, a)
    d3 = _d3_of_a(z, a)
    out = 0.125 * z * n3 / d3
    return float(out[0]) if scalar else out


def _n3_of_a(z, a):
    z2 = z * z
    return (
        4.0 * z2 * z2 * a**6
        - 16.0 * z2 * z * a**5
        - z2 * (120.0 + 11.0 * z2) * a**4
        + 4.0 * z * (-40.0 + 3.0 * z2) * a**3
        + 2.0 * (-16.0 + 66.0 * z2 + 5.0 * z2 * z2) * a**2
        + 4.0 * z * (32.0 + z2) * a
        - 3.0 * z2 * (8.0 + z2)
    )


def _d3_of_a(z, a):
    inner = z * z * a**3 + z * a * a - (2.0 + z * z) * a - z
    return inner * inner


def appendix_c_margins(z):
    """(9 D3 - N3, 9 D3 + N3); strict positivity of both is |h| < 9z/8."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    a = np.atleast_1d(ratio_A(z))
    n3 = _n3_of_a(z, a)
    d3 = _d3_of_a(z, a)
    return 9.0 * d3 - n3, 9.0 * d3 + n3


_G2_COEFFS = (
    -3105, -32886, -162858, -483254, -891642, -966847, -508816, -12905,
    109108, 93644, 134944, 122960, 51264, 8000,
)
_G3_COEFFS = (
    -4704, -49399, -218100, -514979, -636860, -132064, 944672, 1784464,
    1643712, 834432, 211456, 18432,
)


def g2_polynomial(z):
    """Lower-bound envelope of 9 D3 - N3 for z >= 3/2; g2(3/2) = 646907/163840."""
    if isinstance(z, Fraction) or isinstance(z, int):
        z = Fraction(z)
        poly = sum(c * z**i for i, c in enumerate(_G2_COEFFS))
        return Fraction(8, 5) * poly / ((1 + 2 * z) ** 6 * (3 + 2 * z) ** 4)
    z = float(z)
    poly = sum(c * z**i for i, c in enumerate(_G2_COEFFS))
    return 8.0 * poly / (5.0 * (1.0 + 2.0 * z) ** 6 * (3.0 + 2.0 * z) ** 4)


def g3_polynomial(z):
    """Lower-bound envelope of 9 D3 + N3 for z >= 1; g3(1) = 3881062/455625."""
    if isinstance(z, Fraction) or isinstance(z, int):
        z = Fraction(z)
        poly = sum(c * z**i for i, c in enumerate(_G3_COEFFS))
        return z * poly / ((1 + 2 * z) ** 6 * (3 + 2 * z) ** 4)
    z = float(z)
    poly = sum(c * z**i for i, c in enumerate(_G3_COEFFS))
    return z * poly / ((1.0 + 2.0 * z) ** 6 * (3.0 + 2.0 * z) ** 4)


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

_PREFACTOR = {"longitudinal": 2.0 * math.pi, "tangential": 4.0 * math.pi,
              "normal": 2.0 * math.pi}

_PDE_FAMILY = {"longitudinal": "B", "tangential": "B_t", "normal": "B_n"}
_SBT_FAMILY = {"longitudinal": "B_SB", "tangential": "B_SB_t", "normal": "B_SB_n"}
_DELTA_FAMILY = {"longitudinal": "B_delta", "tangential": "B_delta_t",
                 "normal": "B_delta_n"}


def eigenvalues(family, eps, k, allow_past_singularity=True):
    """Vectorized eigenvalue of ``family`` at radius ``eps`` and wavenumbers ``k``.

    Every formula depends on k only through |k|; k may be any nonzero
    integer array.  sbt values past the blow-up are returned as-is by
    default (callers interpret the sign change); sbt_truncated zeroes
    modes beyond the cutoff.
    """
    k = np.asarray(k)
    scalar = k.ndim == 0
    k = np.atleast_1d(k)
    if np.any(k == 0):
        raise ValueError("k = 0 is excluded")
    z = math.pi * eps * np.abs(k).astype(float)
    if family.method == "pde":
        out = _PREFACTOR[family.direction] * b_function(_PDE_FAMILY[family.direction], z)
    elif family.method in ("sbt", "sbt_truncated"):
        fam = _SBT_FAMILY[family.direction]
        pole = SBT_SINGULARITY[family.direction]
        out = np.empty_like(z)
        at_pole = z == pole
        if np.any(at_pole):
            raise PoleError(f"{fam} evaluated exactly at its pole z = {pole:.6f}")
        out = _PREFACTOR[family.direction] * b_function(
            fam, z, allow_past_singularity=allow_past_singularity
        )
        if family.method == "sbt_truncated":
            cutoff = family.cutoff if family.cutoff is not None else family.default_cutoff(eps)
            out = np.where(np.abs(k) <= cutoff, out, 0.0)
    else:  # delta_reg
        out = _PREFACTOR[family.direction] * b_function(
            _DELTA_FAMILY[family.direction], z, delta=family.delta
        )
    return float(out[0]) if scalar else out


def eigenvalue(family, mode):
    """Scalar convenience wrapper around :func:`eigenvalues`."""
    return eigenvalues(family, mode.eps, mode.k)


def sign_change_wavenumber(family, eps):
    """|k| where the reciprocal sbt eigenvalue 1/lambda changes sign.

    The underlying z-thresholds are 2 e^{-g} (Laplace longitudinal),
    2 e^{-g-1/2} (tangential) and 2 e^{-g+1/2} (normal).  Only sbt
    families blow up; anything else is a usage error.
    """
    if family.method not in ("sbt", "sbt_truncated"):
        raise ValueError("sign changes only occur for sbt families")
    return SBT_SINGULARITY[family.direction] / (math.pi * eps)


# ---------------------------------------------------------------------------
# Gronwall constants and eigenvalue-difference bounds
# ---------------------------------------------------------------------------

def gronwall_constants():
    """The six ODE-comparison constants, reproduced from b_function.

    c_B < 2, c_t < 1, c_n < 4 control the sbt difference bounds;
    c_l2 < 2, c_t2 < 1, c_n2 < 4 control the delta-regularized ones.
    """
    c_b = b_function("B_SB", 0.45) + b_function("B", 0.45)
    c_t = b_function("B_SB_t", 0.25) + b_function("B_t", 0.25)
    c_n = b_function("B_SB_n", 0.73) + b_function("B_n", 0.73)
    c_l2 = 1.0 / abs(math.log(0.4)) + b_function("B", 0.4)
    c_t2 = 4.0 / (5.0 * abs(math.log(0.25))) + b_function("B_t", 0.25)
    c_n2 = 4.0 / (1.0 + 2.0 * abs(math.log(2.0 / 3.0))) + b_function("B_n", 2.0 / 3.0)
    return {"c_B": c_b, "c_t": c_t, "c_n": c_n,
            "c_l2": c_l2, "c_t2": c_t2, "c_n2": c_n2}


@dataclass(frozen=True)
class DifferenceMargin:
    observed_diff: float
    paper_bound: float

    @property
    def margin(self):
        return self.paper_bound - self.observed_diff


def _difference_window(setting, direction, method2, eps):
    pi_eps = math.pi * eps
    if method2 == "sbt":
        return {"longitudinal": 9.0 / (20.0 * pi_eps),
                "tangential": 1.0 / (4.0 * pi_eps),
                "normal": 73.0 / (100.0 * pi_eps)}[direction]
    return {"longitudinal": 2.0 / (5.0 * pi_eps),
            "tangential": 1.0 / (4.0 * pi_eps),
            "normal": 2.0 / (3.0 * pi_eps)}[direction]


def eigen_difference_margin(setting, direction, eps, k, method2, delta=None):
    """Observed |lambda_pde - lambda_approx| against its proof-constant bound.

    method2 is 'sbt' or 'delta_reg'.  Raises :class:`WindowError` if |k|
    lies outside the bound's validity window.
    """
    if method2 not in ("sbt", "delta_reg"):
        raise ValueError("method2 must be 'sbt' or 'delta_reg'")
    kmax = _difference_window(setting, direction, method2, eps)
    if abs(k) > kmax:
        raise WindowError(f"|k| = {abs(k)} exceeds the validity window |k| <= {kmax:.2f}")
    pde = EigenFamily(setting, direction, "pde")
    if method2 == "sbt":
        approx = EigenFamily(setting, direction, "sbt")
    else:
        approx = EigenFamily(setting, direction, "delta_reg", delta=delta)
    lam_pde = eigenvalues(pde, eps, k)
    lam_2 = eigenvalues(approx, eps, k)
    observed = abs(lam_pde - lam_2)

    c = gronwall_constants()
    ek2 = (eps * k) ** 2
    pi3 = math.pi ** 3
    if method2 == "sbt":
        const = {"longitudinal": 2.0 * pi3 / (2.0 - c["c_B"]),
                 "tangential": 4.0 * pi3 / (1.0 - c["c_t"]),
                 "normal": 9.0 * pi3 / (2.0 * (4.0 - c["c_n"]))}[direction]
        bound = const * ek2
    else:
        dfac = delta * delta * (1.0 + math.log(delta))
        const = {"longitudinal": 82.0 * pi3,
                 "tangential": 24.0 * pi3 / (1.0 - c["c_t2"]),
                 "normal": 40.0 * pi3 / (4.0 - c["c_n2"])}[direction]
        bound = const * dfac * ek2
    return DifferenceMargin(float(observed), float(bound))


# ---------------------------------------------------------------------------
# line and periodic singular integral operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class STransformResult:
    points: np.ndarray
    values: np.ndarray
    resolution: int
    warning: str | None = None


def s_transform_apply(phi, resolution=512):
    """Apply S[phi](s) = int_-1^1 (phi(s') - phi(s))/|s - s'| ds' numerically.

    ``phi`` is a callable or an array of samples at the evaluation nodes.
    Evaluation nodes are the interior uniform grid points; the quadrature
    uses the midpoint rule on the half-step-offset midpoints, so the
    bounded (singularity-subtracted) integrand is never sampled at s'=s.
    Legendre polynomials are eigenfunctions: S[P_k] = -mu_k P_k with
    mu_k = 2 sum_{j<=k} 1/j.
    """
    resolution = int(resolution)
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    warning = None
    if resolution < 64:
        warning = "resolution below 64; expect > few-percent eigen-residuals"
    h = 2.0 / resolution
    s_eval = -1.0 + h * np.arange(1, resolution)
    mids = -1.0 + h * (np.arange(resolution) + 0.5)
    if callable(phi):
        phi_mid = np.asarray(phi(mids), dtype=float)
        phi_eval = np.asarray(phi(s_eval), dtype=float)
    else:
        phi_eval = np.asarray(phi, dtype=float)
        if phi_eval.shape != s_eval.shape:
            raise ValueError(
                f"expected {s_eval.size} samples at the interior grid nodes"
            )
        phi_mid = np.interp(mids, s_eval, phi_eval)
    diff = phi_mid[None, :] - phi_eval[:, None]
    dist = np.abs(s_eval[:, None] - mids[None, :])
    values = h * np.sum(diff / dist, axis=1)
    return STransformResult(s_eval, values, resolution, warning)


def legendre_mu(k):
    """Eigenvalue magnitude mu_k = 2 H_k of the line operator; mu_0 = 0."""
    return 2.0 * sum(1.0 / j for j in range(1, k + 1))


def periodic_kernel_eigenvalue(k):
    """mu_k^per = 4 sum_{j=1}^{|k|} 1/(2j-1) for the periodic kernel; |k| >= 1."""
    k = abs(int(k))
    if k == 0:
        raise ValueError("k = 0 has no periodic-kernel eigenvalue")
    return 4.0 * sum(1.0 / (2 * j - 1) for j in range(1, k + 1))


def sbt_symbol_log_form(eps, k):
    """Asymptotic log form of the slender-body symbol: -2(log(pi eps |k|/2) + gamma)."""
    k = abs(int(k))
    if k == 0:
        raise ValueError("k = 0 excluded")
    return -2.0 * (math.log(0.5 * math.pi * eps * k) + EULER_GAMMA)


def sbt_symbol_harmonic_form(eps, k):
    """Harmonic-sum form 2 log(8/(pi eps)) - mu_k^per of the same symbol.

    Since mu_k^per = 4(H_{2k} - H_k/2) -> 2 log|k| + 2 gamma + 4 log 2 with an
    O(1/k^2) defect, the two forms coincide up to that defect (0.073 at k=1,
    shrinking quadratically), which is why the log form can stand in for the
    exact periodic-kernel spectrum in every estimate.
    """
    k = abs(int(k))
    if k == 0:
        raise ValueError("k = 0 excluded")
    return 2.0 * math.log(8.0 / (math.pi * eps)) - periodic_kernel_eigenvalue(k)


def periodic_kernel_apply_mode(k, resolution=4096):
    """Quadrature of (pi/2) int (f(s')-f(s))/|sin(pi (s-s')/2)| ds' on f = e^{i pi k s}.

    Returns the ratio (applied value)/(f value) at s = 0, which should be
    close to -mu_k^per.  Midpoint rule on the torus; the evaluation point
    sits on the node grid, offset half a step from the quadrature grid.
    """
    if k == 0:
        raise ValueError("k = 0 excluded")
    h = 2.0 / resolution
    mids = -1.0 + h * (np.arange(resolution) + 0.5)
    f_mid = np.exp(1j * math.pi * k * mids)
    # evaluation at s = 0, f(0) = 1
    kernel = np.abs(np.sin(math.pi * (0.0 - mids) / 2.0))
    val = 0.5 * math.pi * h * np.sum((f_mid - 1.0) / kernel)
    return complex(val)


def periodization_identity_check(tol=1e-10):
    """Quadrature of int_-1^1 (pi/|2 sin(pi z/2)| - 1/|z|) dz vs -2 log(pi/4).

    The integrand has a removable singularity at z = 0, handled by a series
    branch for small |z|.  Returns (value, closed_form, abs_error).
    """

    def integrand(z):
        # f(z) = (u/sin u - 1)/z with u = pi z / 2
        u = 0.5 * math.pi * z
        if abs(z) < 0.1:
            u2 = u * u
            series = u2 / 6.0 + 7.0 * u2 * u2 / 360.0 + 31.0 * u2 * u2 * u2 / 15120.0
            return series / z
        return (u / math.sin(u) - 1.0) / z

    val, est = integrate.quad(integrand, 0.0, 1.0, epsabs=tol, epsrel=tol, limit=200)
    total = 2.0 * val
    closed = -2.0 * math.log(math.pi / 4.0)
    return total, closed, abs(total - closed)
