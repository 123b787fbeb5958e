"""Classical Hamiltonian structure of the characteristic equations.

The characteristic function of each quantum model solves the classical
equation of motion of the same quadratic Hamiltonian; this module provides
the phase-space flow, the closed-form solutions of the four classical
oscillator equations, and the damped-oscillator propagator phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .characteristic import Y1, Y2, Y3, Y4, eval_mu, wronskian_value
from .errors import OscillapropError, PoleCrossing
from .models import Model, ModelTag, coefficients, damped
from .phase import PhaseTriple, green_phase


@dataclass(frozen=True)
class PhasePoint:
    """A point of the classical phase space at time t."""

    q: float
    p: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise OscillapropError("phase-space components must be finite")


def hamilton_flow(model: Model, start: PhasePoint, t: float, dt: float = 1e-4) -> PhasePoint:
    """Integrate q' = 2ap + 2dq, p' = -2bq - 2dp by classic Runge-Kutta."""
    if dt > 1e-3:
        raise OscillapropError("dt must be at most 1e-3")

    def rhs(s, q, p):
        a, b, _, d = coefficients(model, s)
        if max(abs(a), abs(b), abs(d)) > 1e12:
            raise PoleCrossing(f"coefficients blow up at t={s:.6g}")
        return 2 * a * p + 2 * d * q, -2 * b * q - 2 * d * p

    n = max(1, round(abs(t - start.t) / dt))
    h = (t - start.t) / n
    q, p = start.q, start.p
    s = start.t
    for _ in range(n):
        k1q, k1p = rhs(s, q, p)
        k2q, k2p = rhs(s + h / 2, q + h / 2 * k1q, p + h / 2 * k1p)
        k3q, k3p = rhs(s + h / 2, q + h / 2 * k2q, p + h / 2 * k2p)
        k4q, k4p = rhs(s + h, q + h * k3q, p + h * k3p)
        q += h / 6 * (k1q + 2 * k2q + 2 * k3q + k4q)
        p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        s += h
    return PhasePoint(q, p, t)


_EQ_PAIRS = {
    "ahc1": (Y1, Y2),
    "ahc2": (Y1, Y4),
    "ahc3": (Y3, Y4),
    "ahc4": (Y2, Y3),
}


def classical_solution(eq_id: str, c_a: float, c_b: float, t: float) -> float:
    """Closed-form solution c_a y_i + c_b y_k of one classical oscillator.

    The four equations pair the damping terms +/-2 tan, +/-2 cot (and their
    hyperbolic duals) with fundamental sets drawn from the Wronskian basis.
    """
    try:
        wa, wb = _EQ_PAIRS[eq_id]
    except KeyError:
        raise OscillapropError(f"unknown equation id {eq_id!r}")
    return c_a * wronskian_value(wa, t) + c_b * wronskian_value(wb, t)


def damped_green_phase(omega0: float, lam: float, t: float) -> PhaseTriple:
    """Quadratic phases of the damped-oscillator propagator."""
    return green_phase(damped(omega0, lam), t)


# analytic derivatives of the diffusion and drift coefficients
def _a_prime(model: Model, t: float) -> float:
    tag = model.tag
    if tag is ModelTag.M1:
        return -math.sin(2 * t)
    if tag is ModelTag.M2:
        return math.sinh(2 * t)
    if tag is ModelTag.M3:
        return math.sin(2 * t)
    if tag is ModelTag.M4:
        return math.sinh(2 * t)
    if tag is ModelTag.DAMPED:
        return -model.lam * model.omega0 * math.exp(-2 * model.lam * t)
    return 0.0


def _d_prime(model: Model, t: float) -> float:
    tag = model.tag
    if tag is ModelTag.M1:
        return math.cos(2 * t)
    if tag is ModelTag.M2:
        return -math.cosh(2 * t)
    if tag is ModelTag.M3:
        return -math.cos(2 * t)
    if tag is ModelTag.M4:
        return math.cosh(2 * t)
    return 0.0


def characteristic_from_hamiltonian(model: Model, t: float) -> float:
    """Residual of mu in the classical equation of motion.

    The classical q-equation reads
    q'' - (a'/a) q' + 4(ab - d^2 + (d a')/(2a) - d'/2) q = 0; plugging in
    the model's characteristic function certifies the identification of the
    quantum characteristic equation with the classical flow.
    """
    a, b, _, d = coefficients(model, t)
    if abs(a) < 1e-12:
        raise PoleCrossing(f"diffusion coefficient vanishes at t={t:.6g}")
    ap = _a_prime(model, t)
    dp = _d_prime(model, t)
    st = eval_mu(model, t)
    coeff = 4 * (a * b - d**2 + d * ap / (2 * a) - dp / 2)
    return st.mu_double_prime - (ap / a) * st.mu_prime + coeff * st.mu
