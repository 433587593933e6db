"""Desk-scale reproductions of the quantitative claims.

Three experiment families:

* convergence_study -- L2 error between the exact inverse map and an
  approximate one (spectral truncation or delta-regularization) on rough
  random inputs, swept over a geometric eps-grid and summarized by a
  log-log least-squares slope.  H1-regular inputs give rate ~eps, H2
  inputs ~eps^2.
* wellposedness_constant -- the combination ||L^{-1}u|| |log eps| / ||u||_H1,
  which stays bounded (varies by less than 2x over two decades of eps).
* optimal_delta / cdelta_profile -- the regularization parameter that
  minimizes the error constant C_delta, found as the root of a monotone
  scalar equation, landing in [1.72, 2.5] (Stokes) or [1.1, 2.1] (Laplace)
  for constant ratios spanning a couple of decades.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .operators import PeriodicField, apply_operator, make_test_field, sobolev_norm
from .spectra import SQRT_E, EigenFamily

DEFAULT_EPS_GRID = tuple(np.geomspace(10**-1.5, 1e-3, 6))
DEFAULT_SEEDS = (11, 23, 47)


@dataclass(frozen=True)
class ConvergenceReport:
    setting: str
    method: str
    regularity: str
    eps_grid: tuple
    errors: tuple
    slope: float
    residual: float
    seed: int

    def to_json(self):
        return json.dumps({
            "setting": self.setting, "method": self.method,
            "regularity": self.regularity, "eps": list(self.eps_grid),
            "errors": list(self.errors), "slope": self.slope,
            "residual": self.residual, "seed": self.seed,
        })

    def to_csv(self):
        lines = ["setting,method,regularity,seed,eps,error,slope,residual"]
        for e, err in zip(self.eps_grid, self.errors):
            lines.append(
                f"{self.setting},{self.method},{self.regularity},{self.seed},"
                f"{e:.17g},{err:.17g},{self.slope:.17g},{self.residual:.17g}"
            )
        return "\n".join(lines) + "\n"


def _required_k_max(eps_min):
    return int(math.ceil(2.0 / (math.pi * eps_min))) + 8


def _input_field(setting, regularity, k_max, seed, profile=None):
    profile = profile or {"H1": "h1_rough", "H2": "h2_rough"}[regularity]
    n_comp = 1 if setting == "laplace" else 3
    u = make_test_field(profile, k_max, seed=seed, n_components=n_comp)
    s = {"H1": 1, "H2": 2}[regularity]
    return PeriodicField(u.coeffs / sobolev_norm(u, s))


def _families(setting, method, delta):
    direction = "longitudinal" if setting == "laplace" else "tangential"
    pde = EigenFamily(setting, direction, "pde")
    if method == "sbt_truncated":
        approx = EigenFamily(setting, direction, "sbt_truncated")
    elif method == "delta_reg":
        approx = EigenFamily(setting, direction, "delta_reg", delta=delta)
    else:
        raise ValueError("method must be 'sbt_truncated' or 'delta_reg'")
    return pde, approx


def approximation_error(setting, method, u, eps, delta=None):
    """||L_eps^{-1} u - approx^{-1} u||_{L^2} for one input field."""
    pde, approx = _families(setting, method, delta)
    f_exact = apply_operator(pde, u, eps, inverse=True)
    f_approx = apply_operator(approx, u, eps, inverse=True)
    diff = f_exact.with_coeffs(f_exact.coeffs - f_approx.coeffs)
    return sobolev_norm(diff, 0)


def fit_slope(eps_grid, errors):
    """OLS slope of log(error) vs log(eps), plus RMS fit residual."""
    x = np.log(np.asarray(eps_grid))
    y = np.log(np.asarray(errors))
    coef = np.polyfit(x, y, 1)
    resid = y - np.polyval(coef, x)
    return float(coef[0]), float(np.sqrt(np.mean(resid**2)))


def convergence_study(setting, method, regularity, eps_grid=None, seed=11,
                      delta=2.0, k_max=None):
    """Error-vs-eps sweep for one estimate configuration."""
    eps_grid = tuple(eps_grid) if eps_grid is not None else DEFAULT_EPS_GRID
    if len(eps_grid) < 4 or not all(a > b for a, b in zip(eps_grid, eps_grid[1:])):
        raise ValueError("eps_grid must be strictly decreasing with >= 4 points")
    k_max = k_max or _required_k_max(min(eps_grid))
    if k_max < 2.0 / (math.pi * min(eps_grid)):
        raise ValueError("k_max does not resolve the 1/eps truncation scale")
    u = _input_field(setting, regularity, k_max, seed)
    errors = tuple(approximation_error(setting, method, u, e, delta=delta)
                   for e in eps_grid)
    if any(err <= 0 for err in errors):
        raise ValueError("degenerate zero error; input field too sparse")
    slope, residual = fit_slope(eps_grid, errors)
    method_tag = method if method != "delta_reg" else f"delta_reg({delta})"
    return ConvergenceReport(setting, method_tag, regularity, eps_grid, errors,
                             slope, residual, seed)


def wellposedness_constant(setting, eps_grid=None, seed=11, profile="h1_rough",
                           k_max=None):
    """Per-eps values of ||L_eps^{-1} u||_{L^2} |log eps| / ||u||_{H^1}."""
    eps_grid = tuple(eps_grid) if eps_grid is not None else DEFAULT_EPS_GRID
    k_max = k_max or _required_k_max(min(eps_grid))
    direction = "longitudinal" if setting == "laplace" else "tangential"
    pde = EigenFamily(setting, direction, "pde")
    n_comp = 1 if setting == "laplace" else 3
    u = make_test_field(profile, k_max, seed=seed, n_components=n_comp)
    h1 = sobolev_norm(u, 1)
    out = []
    for eps in eps_grid:
        f = apply_operator(pde, u, eps, inverse=True)
        out.append(sobolev_norm(f, 0) * abs(math.log(eps)) / h1)
    return eps_grid, out


# ---------------------------------------------------------------------------
# optimal regularization parameter
# ---------------------------------------------------------------------------

def _root_lhs(setting, delta):
    if setting == "stokes":
        return delta**2 * (-1.0 + 2.0 * math.log(delta)) ** 2 * (1.5 + math.log(delta))
    if setting == "laplace":
        return delta**2 * math.log(delta) ** 2 * (3.0 + 2.0 * math.log(delta))
    raise ValueError(f"unknown setting {setting!r}")


def optimal_delta(setting, ratio):
    """delta* solving the monotone optimality equation at C2/C1 = ratio."""
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    lo = (SQRT_E if setting == "stokes" else 1.0) * (1.0 + 1e-12)
    hi = 10.0
    while _root_lhs(setting, hi) < ratio:
        hi *= 2.0
    return float(optimize.brentq(lambda d: _root_lhs(setting, d) - ratio,
                                 lo, hi, xtol=1e-12, rtol=1e-12))


def cdelta_profile(setting, delta_grid, c1, c2):
    """The error constant C_delta = C1 d^2 (1+log d) + C2/(denominator) on a grid."""
    d = np.asarray(delta_grid, dtype=float)
    if setting == "stokes":
        if np.any(d <= SQRT_E):
            raise ValueError("stokes requires delta > sqrt(e)")
        tail = c2 / (-1.0 + 2.0 * np.log(d))
    elif setting == "laplace":
        if np.any(d <= 1.0):
            raise ValueError("laplace requires delta > 1")
        tail = c2 / np.log(d)
    else:
        raise ValueError(f"unknown setting {setting!r}")
    return c1 * d * d * (1.0 + np.log(d)) + tail


def measured_delta_error(setting, eps, delta_grid, regularity="H1", seed=11,
                         k_max=None):
    """Measured approximation error as a function of delta at fixed eps."""
    k_max = k_max or _required_k_max(eps)
    u = _input_field(setting, regularity, k_max, seed)
    return [approximation_error(setting, "delta_reg", u, eps, delta=d)
            for d in delta_grid]
