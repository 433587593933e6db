"""Measure the eps-convergence rate of both approximate inverse maps.

Rough random inputs with one square-summable derivative give a first-order
rate; inputs with two give second order.  Each configuration is run in the
eps-regime where its rate is asymptotic (see the comments), and the log-log
slope is fit by least squares.
"""

import numpy as np

from slenderspec.experiments import convergence_study

runs = [
    # truncated method: default grid reaches eps = 1e-3
    ("laplace", "sbt_truncated", "H1", None, 20_000),
    ("laplace", "sbt_truncated", "H2", None, 20_000),
    ("stokes", "sbt_truncated", "H1", None, 20_000),
    ("stokes", "sbt_truncated", "H2", None, 20_000),
    # regularized H1 error saturates its band limit at small eps, so sweep high
    ("laplace", "delta_reg", "H1", tuple(np.geomspace(1e-1, 10**-2.5, 6)), 20_000),
    ("stokes", "delta_reg", "H1", tuple(np.geomspace(1e-1, 10**-2.5, 6)), 20_000),
    # regularized H2 error needs smaller eps to enter its quadratic regime
    ("laplace", "delta_reg", "H2", tuple(np.geomspace(10**-2.5, 1e-4, 6)), 60_000),
    ("stokes", "delta_reg", "H2", tuple(np.geomspace(10**-2.5, 1e-4, 6)), 60_000),
]

print(f"{'setting':>8} {'method':>14} {'reg':>4} {'slope':>7} {'fit rms':>8}")
for setting, method, reg, grid, k_max in runs:
    rep = convergence_study(setting, method, reg, eps_grid=grid, k_max=k_max)
    print(f"{setting:>8} {method:>14} {reg:>4} {rep.slope:>7.3f} {rep.residual:>8.1e}")
print("\nexpected: slope ~ 1 for H1 inputs, ~ 2 for H2 inputs")
