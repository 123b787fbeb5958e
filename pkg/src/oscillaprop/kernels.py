"""Closed-form propagator kernels.

Green functions for all models with branch tracking across caustics,
standing-wave kernels, the complex two-contour form, separable n-dimensional
kernels and the radial (partial-wave) kernel in n dimensions.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import gamma as _gamma

from .characteristic import Wronskian, eval_mu, wronskian_value
from .errors import (
    DimensionMismatch,
    InvalidQuantumNumbers,
    OscillapropError,
    SingularContour,
    SingularTime,
)
from .models import Model, ModelTag
from .phase import PhaseTriple, green_phase

_W1 = Wronskian.COS_SINH
_W2 = Wronskian.COS_COSH
_W3 = Wronskian.SIN_COSH
_W4 = Wronskian.SIN_SINH


@dataclass(frozen=True)
class KernelValue:
    """A kernel evaluation together with the caustic-crossing count."""

    value: complex
    branch_index: int


@functools.lru_cache(maxsize=None)
def _first_zero(tag: ModelTag) -> float:
    """First positive zero of the model's characteristic function."""
    from .characteristic import first_caustic

    return first_caustic(Model(tag))


def caustic_crossings(model: Model, t: float) -> int:
    """Number of zeros of the characteristic function strictly inside (0, t)."""
    T = abs(t)
    tag = model.tag
    if tag is ModelTag.FREE:
        return 0
    if tag is ModelTag.HARMONIC:
        return int(T / math.pi) if (T / math.pi) % 1 else int(T / math.pi) - 1
    if tag is ModelTag.DAMPED:
        q = T * model.omega / math.pi
        return int(q) if q % 1 else int(q) - 1
    # oscillating models: count sign changes on a dense grid
    if T < 1e-12 or T <= _first_zero(tag):
        return 0
    grid = np.linspace(1e-6 * T, T, 4097)
    vals = np.array([eval_mu(model, float(s) * math.copysign(1, t)).mu for s in grid])
    signs = np.sign(vals)
    return int(np.sum(signs[:-1] * signs[1:] < 0))


def branch_prefactor(model: Model, t: float) -> tuple[complex, int]:
    """(2 pi i mu)^(-1/2) continued through caustics, with the branch index.

    Each zero of mu advances the phase by -pi/2 for forward evolution (the
    Maslov correction) and by +pi/2 backwards; in the first regular interval
    the value coincides with the principal square root.
    """
    mu = eval_mu(model, t).mu
    if abs(mu) <= 1e-12:
        raise SingularTime(f"kernel is singular at the caustic t={t:.6g}")
    k = caustic_crossings(model, t)
    mag = 1.0 / math.sqrt(2 * math.pi * abs(mu))
    # start from the principal value of (2 pi i mu)^(-1/2) in the first
    # interval and rotate by a quarter turn per crossing
    if t >= 0:
        phase = -math.pi / 4 - (math.pi / 2) * k
    else:
        phase = math.pi / 4 + (math.pi / 2) * k
    return mag * cmath.exp(1j * phase), k


def green_kernel(model: Model, x: float, y: float, t: float) -> KernelValue:
    """Fundamental solution G(x, y, t) of the model's evolution equation."""
    pref, k = branch_prefactor(model, t)
    ph = green_phase(model, t)
    # grouping beta with (x * y) and fsum-ing the three terms makes the
    # phase symmetric bit-for-bit, so dual models with swapped coefficients
    # produce identical kernels under x <-> y even when beta is large
    total = math.fsum((ph.alpha * x * x, ph.beta * (x * y), ph.gamma * y * y))
    return KernelValue(pref * cmath.exp(1j * total), k)


class StandingKind(Enum):
    """The two standing-wave kernels (e^{+ixy} and e^{-ixy} initial data)."""

    PLUS = "+"
    MINUS = "-"


def standing_phase(kind: StandingKind, t: float) -> tuple[float, PhaseTriple]:
    """Denominator and phase triple of the standing-wave kernels."""
    u1v1 = math.cos(t) * math.cosh(t)
    u2v2 = math.sin(t) * math.sinh(t)
    u2v1 = math.sin(t) * math.cosh(t)
    u1v2 = math.cos(t) * math.sinh(t)
    if kind is StandingKind.PLUS:
        den = u1v1 + u2v2
        alpha = -(u2v1 - u1v2) / (2 * den)
        beta = 1.0 / den
        gamma = -(u2v1 + u1v2) / (2 * den)
    else:
        den = u1v1 - u2v2
        alpha = -(u2v1 + u1v2) / (2 * den)
        beta = -1.0 / den
        gamma = -(u2v1 - u1v2) / (2 * den)
    if abs(den) <= 1e-12:
        raise SingularTime(f"standing kernel singular at t={t:.6g}")
    return den, PhaseTriple(t, alpha, beta, gamma)


def standing_kernel(kind: StandingKind, x: float, y: float, t: float) -> KernelValue:
    """Kernel with standing-wave initial data e^{+/- ixy}/sqrt(2 pi).

    The quadratic phase follows from dividing the numerator of the closed
    form by 2i(cos t cosh t +/- sin t sinh t); the prefactor is the real
    reciprocal square root of 2 pi times that denominator.
    """
    den, ph = standing_phase(kind, t)
    pref = 1.0 / cmath.sqrt(2 * math.pi * den)
    val = pref * cmath.exp(1j * (ph.alpha * x**2 + ph.beta * x * y + ph.gamma * y**2))
    return KernelValue(val, 0)


# ---------------------------------------------------------------------------
# complex two-contour form


@dataclass(frozen=True)
class ContourPair:
    """A point (z, zeta) on the Euclidean / pseudo-Euclidean contours."""

    z: complex
    zeta: complex


def modified_contour(t: float) -> ContourPair:
    """Contour pair reproducing the first modified-oscillator propagator."""
    return ContourPair(cmath.exp(1j * t), math.cosh(t) + 1j * math.sinh(t))


def free_contour(t: float) -> ContourPair:
    """Contour pair reproducing the free-particle propagator."""
    return ContourPair(1.0, 1.0 + 1j * t)


def harmonic_contour(t: float) -> ContourPair:
    """Contour pair reproducing the harmonic-oscillator propagator."""
    return ContourPair(1.0, cmath.exp(1j * t))


def complex_form_kernel(x: float, y: float, pair: ContourPair) -> complex:
    """Propagator as a symmetric function of the two complex contour points."""
    z, zt = pair.z, pair.zeta
    det = z * zt - (z * zt).conjugate()  # purely imaginary for real kernels
    if abs(det) <= 1e-12:
        raise SingularContour("contour determinant vanishes")
    num = (
        (z * zt + (z * zt).conjugate()) * x**2
        - 4 * x * y
        + (z * zt.conjugate() + z.conjugate() * zt) * y**2
    )
    return cmath.exp(num / (2 * (-det))) / cmath.sqrt(math.pi * det)


# ---------------------------------------------------------------------------
# n dimensions


def _as_vectors(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise DimensionMismatch(f"coordinate shapes {xs.shape} and {ys.shape} differ")
    return xs, ys


def ndim_green(model: Model, xs, ys, t: float) -> KernelValue:
    """Separable n-dimensional Green function (product over coordinates)."""
    xs, ys = _as_vectors(xs, ys)
    val = complex(1.0)
    k = 0
    for xi, yi in zip(xs, ys):
        kv = green_kernel(model, float(xi), float(yi), t)
        val *= kv.value
        k = kv.branch_index
    return KernelValue(val, k)


def ndim_green_closed(model: Model, xs, ys, t: float) -> complex:
    """Closed n-dimensional form with dot products (oscillating models only).

    Offers an independent code path against the coordinate product; the
    models with hyperbolic diffusion are the x <-> x' duals of the
    trigonometric ones.
    """
    xs, ys = _as_vectors(xs, ys)
    n = len(xs)
    if model.tag in (ModelTag.M2, ModelTag.M4):
        xs, ys = ys, xs
    u1v1 = math.cos(t) * math.cosh(t)
    u2v2 = math.sin(t) * math.sinh(t)
    x2, y2, dot = float(xs @ xs), float(ys @ ys), float(xs @ ys)
    if model.tag in (ModelTag.M1, ModelTag.M2):
        mu = wronskian_value(_W2, t)
        num = (x2 - y2) * u2v2 + 2 * dot - (x2 + y2) * u1v1
    elif model.tag in (ModelTag.M3, ModelTag.M4):
        mu = wronskian_value(_W4, t)
        num = -(x2 - y2) * u2v2 + 2 * dot - (x2 + y2) * u1v1
    else:
        raise OscillapropError(f"closed n-dim form is for M1..M4, not {model}")
    if abs(mu) <= 1e-12:
        raise SingularTime(f"kernel is singular at the caustic t={t:.6g}")
    return (2 * math.pi * 1j * mu) ** (-n / 2) * cmath.exp(num / (2j * mu))


def ndim_standing(kind: StandingKind, xs, ys, t: float) -> complex:
    """Separable n-dimensional standing-wave kernel."""
    xs, ys = _as_vectors(xs, ys)
    val = complex(1.0)
    for xi, yi in zip(xs, ys):
        val *= standing_kernel(kind, float(xi), float(yi), t).value
    return val


def hyp0f1(c: float, z: float, max_terms: int = 500, tol: float = 1e-16) -> float:
    """Confluent limit series 0F1(; c; z), summed to stagnation."""
    term = 1.0
    total = 1.0
    for k in range(1, max_terms):
        term *= z / ((c + k - 1) * k)
        total += term
        if abs(term) <= tol * abs(total):
            break
    return total


def radial_kernel(K: int, n: int, r: float, rp: float, t: float) -> complex:
    """Partial-wave radial kernel of the n-dimensional propagator.

    Valid in the first regular interval (principal branch).  K is the
    hyperspherical angular momentum, n the space dimension.
    """
    if K < 0 or n < 1:
        raise InvalidQuantumNumbers("need K >= 0 and n >= 1")
    mu = wronskian_value(_W2, t)
    if abs(mu) <= 1e-12:
        raise SingularTime(f"kernel is singular at the caustic t={t:.6g}")
    u1v1 = math.cos(t) * math.cosh(t)
    u2v2 = math.sin(t) * math.sinh(t)
    c = K + n / 2
    pref = cmath.exp(-1j * math.pi * (2 * K + n) / 4) / (2 ** (c - 1) * _gamma(c))
    phase = ((r**2 + rp**2) * u1v1 - (r**2 - rp**2) * u2v2) / (2 * mu)
    return (
        pref
        * (r * rp) ** K
        / mu**c
        * cmath.exp(1j * phase)
        * hyp0f1(c, -((r * rp) ** 2) / (4 * mu**2))
    )


# ---------------------------------------------------------------------------
# kernel symmetry of dual model pairs


_DUAL_PAIRS = {
    (ModelTag.M1, ModelTag.M2),
    (ModelTag.M2, ModelTag.M1),
    (ModelTag.M3, ModelTag.M4),
    (ModelTag.M4, ModelTag.M3),
}


def check_duality_symmetry(
    model_a: Model,
    model_b: Model,
    sample_count: int = 50,
    seed: int = 0,
    t_range: tuple[float, float] = (0.05, 1.2),
) -> float:
    """Largest deviation of G_a(x, y, t) from G_b(y, x, t) over random samples."""
    if (model_a.tag, model_b.tag) not in _DUAL_PAIRS:
        raise OscillapropError(f"{model_a} and {model_b} are not a dual pair")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(sample_count):
        x, y = rng.uniform(-3, 3, size=2)
        t = rng.uniform(*t_range)
        ga = green_kernel(model_a, x, y, t).value
        gb = green_kernel(model_b, y, x, t).value
        worst = max(worst, abs(ga - gb))
    return worst
