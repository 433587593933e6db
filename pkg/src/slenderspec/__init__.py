"""Spectral toolkit for the slender-body inverse problem on a straight periodic fiber.

Modules:
    bessel      from-scratch K0/K1/K2 with a quadrature oracle
    spectra     closed-form eigenvalue families and their ODE machinery
    profiles    exterior radial mode solutions and the traction oracle
    operators   periodic Fourier fields and diagonal operator application
    dynamics    linearized filament relaxation and time-step stability
    experiments convergence rates, well-posedness constants, optimal delta
    checks      verification suites
    cli         command-line interface
"""

from .bessel import bessel_k, oracle_bessel_k, ratio_A, ratio_B
from .spectra import EigenFamily, Mode, b_function, eigenvalue, eigenvalues

__version__ = "0.1.0"

__all__ = [
    "bessel_k", "oracle_bessel_k", "ratio_A", "ratio_B",
    "EigenFamily", "Mode", "b_function", "eigenvalue", "eigenvalues",
    "__version__",
]
