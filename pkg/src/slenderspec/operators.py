"""Periodic Fourier fields and diagonal application of the spectral maps.

Fields live on the period-2 torus with convention f(z) = sum_k fhat_k
e^{i pi k z}, stored densely for -K_max <= k <= K_max.  Every operator in
the toolkit is diagonal in this basis, so applying a forward or inverse
map is coefficient-wise multiplication by 1/lambda or lambda.  The k = 0
mode is excluded from all operators (it corresponds to the 2D fundamental
solution, which does not decay); feeding a field with nonzero mean to an
operator is a hard error rather than a silent drop.

Sobolev convention: ||f||_{H^s}^2 = 2 sum_k (1 + pi^2 k^2)^s |fhat_k|^2,
the factor 2 being Parseval's constant for the length-2 period, so that
a single unit mode has L2 norm sqrt(2) and H1 norm sqrt(2(1 + pi^2)).
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .spectra import EigenFamily, PoleError, eigenvalues

_COMPONENT_NAMES = {1: ("value",), 3: ("x", "y", "z")}


class MeanModeError(ValueError):
    """A field with nonzero k = 0 coefficient was fed to an operator."""


@dataclass(frozen=True)
class PeriodicField:
    """components x (2 K_max + 1) complex coefficient table, k = -K..K."""

    coeffs: np.ndarray
    eps: float | None = None  # optional bookkeeping; operators take eps from the family call

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim == 1:
            c = c[None, :]
        if c.shape[0] not in (1, 3):
            raise ValueError("fields have 1 (scalar) or 3 (vector) components")
        if c.shape[1] % 2 == 0 or c.shape[1] < 3:
            raise ValueError("coefficient axis must have odd length 2*K_max+1 >= 3")
        object.__setattr__(self, "coeffs", c)

    @property
    def n_components(self):
        return self.coeffs.shape[0]

    @property
    def k_max(self):
        return (self.coeffs.shape[1] - 1) // 2

    @property
    def k_values(self):
        return np.arange(-self.k_max, self.k_max + 1)

    def coeff(self, k, component=0):
        return self.coeffs[component, k + self.k_max]

    @property
    def mean_free(self):
        return bool(np.all(self.coeffs[:, self.k_max] == 0))

    def is_real(self, tol=1e-12):
        flipped = np.conj(self.coeffs[:, ::-1])
        scale = np.max(np.abs(self.coeffs)) or 1.0
        return bool(np.max(np.abs(self.coeffs - flipped)) <= tol * scale)

    def with_coeffs(self, coeffs):
        return PeriodicField(coeffs, eps=self.eps)


def analyze(samples):
    """Fourier-analyze samples on the uniform grid z_j = -1 + 2j/n.

    n must be even and >= 4; the result holds modes |k| <= n/2 - 1.  A
    sample set with Nyquist-frequency content cannot be represented in the
    symmetric coefficient table and is rejected.
    """
    x = np.asarray(samples, dtype=complex)
    if x.ndim == 1:
        x = x[None, :]
    n = x.shape[1]
    if n % 2 or n < 4:
        raise ValueError("grid size must be even and >= 4")
    spec = np.fft.fft(x, axis=1) / n
    shifted = np.fft.fftshift(spec, axes=1)  # frequencies -n/2 .. n/2-1
    nyq = np.abs(shifted[:, 0]).max()
    scale = max(np.abs(shifted).max(), 1e-300)
    if nyq > 1e-9 * scale:
        raise ValueError("samples carry Nyquist-mode content; use a larger grid")
    coeffs = shifted[:, 1:]
    k = np.arange(-(n // 2 - 1), n // 2)
    # grid phase: e^{i pi k z_j} = (-1)^k e^{2 pi i j k / n}
    coeffs = coeffs * ((-1.0) ** np.abs(k))[None, :]
    return PeriodicField(coeffs)


def synthesize(field, grid_size):
    """Evaluate the field on the uniform grid z_j = -1 + 2j/grid_size."""
    n = int(grid_size)
    if n % 2 or n < 2 * field.k_max + 2:
        raise ValueError("grid size must be even and >= 2*K_max+2")
    spec = np.zeros((field.n_components, n), dtype=complex)
    k = field.k_values
    spec[:, np.mod(k, n)] = field.coeffs * ((-1.0) ** np.abs(k))[None, :]
    return np.squeeze(np.fft.ifft(spec, axis=1) * n)


def grid(grid_size):
    """The synthesis grid z_j = -1 + 2j/n on [-1, 1)."""
    n = int(grid_size)
    return -1.0 + 2.0 * np.arange(n) / n


def sobolev_norm(field, s):
    """H^s norm under the (1 + pi^2 k^2)^s weight, Parseval constant 2."""
    if s < 0:
        raise ValueError("s >= 0 required")
    w = (1.0 + (math.pi * field.k_values) ** 2) ** s
    return math.sqrt(2.0 * float(np.sum(w[None, :] * np.abs(field.coeffs) ** 2)))


def l2_inner(f, g):
    """<f, g>_{L^2} = 2 sum_k fhat_k conj(ghat_k), summed over components."""
    if f.k_max != g.k_max or f.n_components != g.n_components:
        raise ValueError("fields must share shape")
    return 2.0 * complex(np.sum(f.coeffs * np.conj(g.coeffs)))


def _component_family(family, component_index, n_components):
    if n_components == 1:
        return family
    direction = "tangential" if component_index == 2 else "normal"
    return EigenFamily(family.setting, direction, family.method,
                       cutoff=family.cutoff, delta=family.delta)


def apply_operator(family, field, eps, inverse):
    """Apply the diagonal map: multiply by lambda (inverse) or 1/lambda (forward).

    Scalar fields use ``family`` as given.  Vector fields resolve the
    direction per component: z -> tangential, x/y -> normal, with the
    family's setting/method/parameters shared.  ``inverse=True`` is the
    velocity-to-force direction.
    """
    if not field.mean_free:
        raise MeanModeError("k = 0 coefficient must vanish before applying operators")
    k = field.k_values
    nonzero = k != 0
    out = np.zeros_like(field.coeffs)
    for ci in range(field.n_components):
        fam = _component_family(family, ci, field.n_components)
        lam = eigenvalues(fam, eps, k[nonzero])
        if inverse:
            out[ci, nonzero] = field.coeffs[ci, nonzero] * lam
        else:
            if np.any(lam == 0.0) or not np.all(np.isfinite(lam)):
                bad = k[nonzero][(lam == 0.0) | ~np.isfinite(lam)]
                # truncated families legitimately zero out the high band;
                # forward application there is division by zero = a pole hit
                raise PoleError(
                    f"forward map undefined at k in {bad[:5].tolist()} (1/lambda = 0)"
                )
            out[ci, nonzero] = field.coeffs[ci, nonzero] / lam
    return field.with_coeffs(out)


def make_test_field(profile, k_max, seed=0, n_components=1, mode_k=None):
    """Deterministic synthetic input fields for the experiments.

    h1_rough:  |fhat_k| = |k|^{-1.6}, random unit-modulus phases (H1 not H2)
    h2_rough:  |fhat_k| = |k|^{-2.6}  (H2 not H3)
    smooth:    |fhat_k| = e^{-|k|/4}
    single_mode: unit amplitude at k = +/- mode_k only
    All are real-valued (conjugate-symmetric) with zero mean.
    """
    k_max = int(k_max)
    if k_max < 8:
        raise ValueError("k_max >= 8 required")
    rng = np.random.default_rng(seed)
    coeffs = np.zeros((n_components, 2 * k_max + 1), dtype=complex)
    kpos = np.arange(1, k_max + 1)
    for ci in range(n_components):
        if profile == "single_mode":
            if mode_k is None or not (1 <= abs(int(mode_k)) <= k_max):
                raise ValueError("single_mode needs mode_k with 1 <= |mode_k| <= k_max")
            amp = np.zeros(k_max)
            amp[abs(int(mode_k)) - 1] = 1.0
            phase = np.zeros(k_max)
        else:
            if profile == "h1_rough":
                amp = kpos.astype(float) ** -1.6
            elif profile == "h2_rough":
                amp = kpos.astype(float) ** -2.6
            elif profile == "smooth":
                amp = np.exp(-kpos / 4.0)
            else:
                raise ValueError(f"unknown profile {profile!r}")
            phase = rng.uniform(0.0, 2.0 * math.pi, size=k_max)
        pos = amp * np.exp(1j * phase)
        coeffs[ci, k_max + 1:] = pos
        coeffs[ci, :k_max] = np.conj(pos[::-1])
    return PeriodicField(coeffs)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def field_to_csv(field):
    """CSV rows component,k,re,im at full double precision."""
    buf = io.StringIO()
    buf.write("component,k,re,im\n")
    names = _COMPONENT_NAMES[field.n_components]
    for ci, name in enumerate(names):
        for j, k in enumerate(field.k_values):
            c = field.coeffs[ci, j]
            buf.write(f"{name},{k},{c.real:.17g},{c.imag:.17g}\n")
    return buf.getvalue()


def field_to_json(field):
    names = _COMPONENT_NAMES[field.n_components]
    return json.dumps({
        "k_max": field.k_max,
        "components": {
            name: {"re": field.coeffs[ci].real.tolist(),
                   "im": field.coeffs[ci].imag.tolist()}
            for ci, name in enumerate(names)
        },
    })


def field_from_json(text):
    data = json.loads(text)
    k_max = data["k_max"]
    comps = data["components"]
    names = _COMPONENT_NAMES[3 if len(comps) == 3 else 1]
    coeffs = np.zeros((len(comps), 2 * k_max + 1), dtype=complex)
    for ci, name in enumerate(names):
        coeffs[ci] = np.array(comps[name]["re"]) + 1j * np.array(comps[name]["im"])
    return PeriodicField(coeffs)
