"""Verification suites: every inequality the toolkit claims, swept hard.

Each suite returns a :class:`SuiteResult` whose ``checks`` map names to
(ok, worst_margin_or_error) pairs; the CLI ``verify`` subcommand prints
them and exits nonzero if anything fails.  The same suites back the
acceptance tests, so a green ``verify all`` is the library's own
statement of health.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bessel, dynamics, spectra


@dataclass
class SuiteResult:
    name: str
    checks: dict = field(default_factory=dict)

    def add(self, check, ok, detail):
        self.checks[check] = (bool(ok), float(detail))

    @property
    def ok(self):
        return all(v[0] for v in self.checks.values())

    def lines(self):
        out = [f"[{'PASS' if self.ok else 'FAIL'}] suite {self.name}"]
        for check, (ok, detail) in self.checks.items():
            out.append(f"  {'ok  ' if ok else 'FAIL'} {check}: {detail:.6e}")
        return out


def verify_bessel(n_points=10_000):
    """Implementation vs quadrature oracle, recurrence, crossover continuity."""
    res = SuiteResult("bessel")
    z = np.geomspace(1e-8, 100.0, n_points)
    worst = 0.0
    for order in (0, 1, 2):
        mine = bessel.bessel_k(order, z)
        ref = bessel.oracle_bessel_k(order, z)
        worst = max(worst, float(np.max(np.abs(mine - ref) / ref)))
    res.add("rel_error_vs_oracle", worst <= 1e-12, worst)

    k0 = bessel.bessel_k(0, z)
    k1 = bessel.bessel_k(1, z)
    k2 = bessel.bessel_k(2, z)
    rec = float(np.max(np.abs(k2 - k0 - 2.0 * k1 / z) / k2))
    res.add("recurrence_residual", rec <= 1e-12, rec)

    zc = bessel.SERIES_CUTOFF
    gaps = []
    for order in (0, 1, 2):
        left = bessel.bessel_k(order, np.array([zc]))[0]
        right = bessel.bessel_k(order, np.array([np.nextafter(zc, 10.0)]))[0]
        gaps.append(abs(left - right) / left)
    res.add("crossover_continuity", max(gaps) <= 1e-12, max(gaps))

    mono = float(np.max(np.diff(bessel.bessel_k(0, z))))
    res.add("monotone_decreasing", mono < 0.0, mono)
    return res


def verify_oracle(n_points=200):
    """Self-consistency of the quadrature oracle."""
    res = SuiteResult("oracle")
    z = np.geomspace(1e-6, 90.0, n_points)
    k0 = bessel.oracle_bessel_k(0, z)
    k1 = bessel.oracle_bessel_k(1, z)
    k2 = bessel.oracle_bessel_k(2, z)
    res.add("positivity", bool(np.all(k0 > 0) and np.all(k1 > 0)), float(min(k0.min(), k1.min())))
    rec = float(np.max(np.abs(k2 - k0 - 2.0 * k1 / z) / k2))
    res.add("recurrence_residual", rec <= 1e-13, rec)
    far = bessel.oracle_bessel_k(0, 50.0)
    res.add("deep_decay_finite", 0.0 < far < 1e-20, far)
    return res


def verify_inequalities(n_ratio=100_000, n_small=10_000, k_top=10_000):
    """Ratio bounds, small-z bounds, eigenvalue growth bounds, |h| < 9z/8."""
    res = SuiteResult("inequalities")
    grid = np.geomspace(1e-6, 100.0, n_ratio)
    rb = bessel.check_ratio_bounds(grid)
    res.add("ratio_lower_bound", np.all(rb.lower_margin > 0), float(rb.lower_margin.min()))
    res.add("ratio_upper_bound", np.all(rb.upper_margin > 0), float(rb.upper_margin.min()))

    zs = np.linspace(1e-4, 1.0, n_small, endpoint=False)
    m0, m1 = bessel.check_small_z_bounds(zs)
    res.add("small_z_k0_bound", np.all(m0 >= 0), float(m0.min()))
    res.add("small_z_zk1_bound", np.all(m1 >= 0), float(m1.min()))

    ks = np.arange(1, k_top + 1)
    worst = math.inf
    for eps in (1e-1, 1e-2, 1e-3, 1e-4):
        base = math.pi**2 * eps * ks
        for setting, direction, lo_f, width in (
            ("laplace", "longitudinal", 2.0, math.pi),
            ("stokes", "tangential", 4.0, 2.0 * math.pi),
            ("stokes", "normal", 3.0, 3.0 * math.pi),
        ):
            lam = spectra.eigenvalues(spectra.EigenFamily(setting, direction, "pde"), eps, ks)
            lo = lo_f * base
            worst = min(worst, float(np.min(lam - lo)), float(np.min(lo + width - lam)))
    res.add("growth_bounds_margin", worst > 0, worst)

    z = np.linspace(20.0 / n_small, 20.0, n_small)
    hmargin = float(np.min(1.125 * z - np.abs(spectra.h_function(z))))
    res.add("h_bound_margin", hmargin > 0, hmargin)
    return res


def verify_appendix_c(n_points=10_000):
    """9 D3 +/- N3 positivity and the exact rational spot values."""
    res = SuiteResult("appendixC")
    z = np.geomspace(1e-3, 50.0, n_points)
    m_minus, m_plus = spectra.appendix_c_margins(z)
    res.add("nine_d3_minus_n3", float(m_minus.min()) > 0, float(m_minus.min()))
    res.add("nine_d3_plus_n3", float(m_plus.min()) > 0, float(m_plus.min()))
    g2 = spectra.g2_polynomial(Fraction(3, 2))
    res.add("g2_spot_value", g2 == Fraction(646907, 163840), float(g2 - Fraction(646907, 163840)))
    g3 = spectra.g3_polynomial(Fraction(1))
    res.add("g3_spot_value", g3 == Fraction(3881062, 455625), float(g3 - Fraction(3881062, 455625)))
    return res


def verify_difference_bounds(deltas=(1.7, 2.0, 3.0)):
    """Every eigenvalue-difference bound over its full validity window."""
    res = SuiteResult("difference_bounds")
    for setting, direction in (
        ("laplace", "longitudinal"), ("stokes", "tangential"), ("stokes", "normal"),
    ):
        for eps in (1e-1, 1e-2, 1e-3):
            kmax = int(spectra._difference_window(setting, direction, "sbt", eps))
            if kmax >= 1:  # at eps = 0.1 some windows admit no k at all
                worst = min(
                    spectra.eigen_difference_margin(setting, direction, eps, k, "sbt").margin
                    for k in range(1, kmax + 1))
                res.add(f"sbt_{setting}_{direction}_eps{eps:g}", worst >= 0, worst)
            for delta in deltas:
                kmax = int(spectra._difference_window(setting, direction, "delta_reg", eps))
                if kmax < 1:
                    continue
                worst = min(
                    spectra.eigen_difference_margin(
                        setting, direction, eps, k, "delta_reg", delta=delta).margin
                    for k in range(1, kmax + 1))
                res.add(f"delta{delta:g}_{setting}_{direction}_eps{eps:g}", worst >= 0, worst)
    return res


def verify_dynamics():
    """Sign structure of nu and the explicit-step stability scalings."""
    res = SuiteResult("dynamics")
    res.add("nu_1_is_zero", dynamics.nu(1e-3, 1) == 0.0, dynamics.nu(1e-3, 1))
    ks = np.arange(2, 10_001)
    worst = max(float(np.max(dynamics.nu(e, ks))) for e in (1e-1, 1e-2, 1e-3))
    res.add("nu_negative_k_ge_2", worst < 0, worst)
    for eps, k_max in ((1e-2, 32), (1e-1, 512)):
        a = dynamics.max_stable_dt(eps, k_max)
        e = dynamics.max_stable_dt(eps, k_max, empirical=True)
        res.add(f"empirical_dt_eps{eps:g}_K{k_max}", abs(e - a) / a < 0.1, abs(e - a) / a)
    s4 = dynamics.stability_slope(1e-3, [8, 16, 32, 64, 128])
    res.add("quartic_regime_slope", abs(s4 - 4.0) <= 0.3, s4)
    s3 = dynamics.stability_slope(1e-1, [512, 1024, 2048, 4096])
    res.add("cubic_regime_slope", abs(s3 - 3.0) <= 0.3, s3)
    return res


SUITES = {
    "bessel": verify_bessel,
    "oracle": verify_oracle,
    "inequalities": verify_inequalities,
    "appendixC": verify_appendix_c,
    "differences": verify_difference_bounds,
    "dynamics": verify_dynamics,
}


def run_suites(names):
    return [SUITES[name]() for name in names]
