"""Characteristic functions of the oscillator models.

The second-order characteristic equation mu'' - tau(t) mu' + 4 sigma(t) mu = 0
of every trigonometric/hyperbolic model is solved by Wronskians of cos/sin
with cosh/sinh.  This module provides those four basis functions in closed
form (values and derivatives), the Green-function branch mu(t) of every
model, an independent Runge-Kutta integrator used as an oracle in the tests,
and the algebraic machinery around the basis (pairwise Wronskians, the
fourth-order equation satisfied by the products, second-order operator
actions, shift relations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .errors import PoleCrossing
from .models import Model, ModelTag, sigma as model_sigma, tau as model_tau

# products of trig and hyperbolic factors, used throughout
_CC = lambda t: math.cos(t) * math.cosh(t)
_CS = lambda t: math.cos(t) * math.sinh(t)
_SC = lambda t: math.sin(t) * math.cosh(t)
_SS = lambda t: math.sin(t) * math.sinh(t)


class Wronskian(Enum):
    """The four Wronskians W(f, g) = f g' - f' g of trig/hyperbolic pairs."""

    COS_COSH = "cos,cosh"  # cos*sinh + sin*cosh
    COS_SINH = "cos,sinh"  # cos*cosh + sin*sinh
    SIN_SINH = "sin,sinh"  # sin*cosh - cos*sinh
    SIN_COSH = "sin,cosh"  # sin*sinh - cos*cosh


# aliases matching the fundamental-set labels of the characteristic equations
Y1 = Wronskian.COS_COSH
Y2 = Wronskian.COS_SINH
Y3 = Wronskian.SIN_SINH
Y4 = Wronskian.SIN_COSH


def wronskian_value(w: Wronskian, t: float) -> float:
    if w is Wronskian.COS_COSH:
        return _CS(t) + _SC(t)
    if w is Wronskian.COS_SINH:
        return _CC(t) + _SS(t)
    if w is Wronskian.SIN_SINH:
        return _SC(t) - _CS(t)
    return _SS(t) - _CC(t)


def wronskian_prime(w: Wronskian, t: float) -> float:
    if w is Wronskian.COS_COSH:
        return 2 * _CC(t)
    if w is Wronskian.COS_SINH:
        return 2 * _CS(t)
    if w is Wronskian.SIN_SINH:
        return 2 * _SS(t)
    return 2 * _SC(t)


def wronskian_second(w: Wronskian, t: float) -> float:
    # each basis function satisfies W'' = -/+ 2 * (partner Wronskian)
    if w is Wronskian.COS_COSH:
        return -2 * wronskian_value(Wronskian.SIN_SINH, t)
    if w is Wronskian.COS_SINH:
        return -2 * wronskian_value(Wronskian.SIN_COSH, t)
    if w is Wronskian.SIN_SINH:
        return 2 * wronskian_value(Wronskian.COS_COSH, t)
    return 2 * wronskian_value(Wronskian.COS_SINH, t)


def wronskian_pair(w_a: Wronskian, w_b: Wronskian, t: float) -> float:
    """Wronskian y_a y_b' - y_a' y_b of two basis functions."""
    return wronskian_value(w_a, t) * wronskian_prime(w_b, t) - wronskian_prime(
        w_a, t
    ) * wronskian_value(w_b, t)


@dataclass(frozen=True)
class CharacteristicState:
    """mu and its first two derivatives at time t."""

    t: float
    mu: float
    mu_prime: float
    mu_double_prime: float


# below this |t| the cubic-order branch is evaluated by series to avoid
# catastrophic cancellation (sin*cosh - cos*sinh = 2t^3/3 + O(t^7))
_SERIES_CUTOFF = 1e-3


def _cubic_branch(t: float) -> tuple[float, float, float]:
    """sin*cosh - cos*sinh with derivatives, stable near t = 0."""
    if abs(t) < _SERIES_CUTOFF:
        mu = 2 * t**3 / 3 - 2 * t**7 / 315
        mu_p = 2 * t**2 - 2 * t**6 / 45
        mu_pp = 4 * t - 4 * t**5 / 15
        return mu, mu_p, mu_pp
    return (
        wronskian_value(Wronskian.SIN_SINH, t),
        wronskian_prime(Wronskian.SIN_SINH, t),
        wronskian_second(Wronskian.SIN_SINH, t),
    )


def eval_mu(model: Model, t: float) -> CharacteristicState:
    """Green-function branch of the characteristic equation.

    This is the solution whose leading behaviour at t -> 0 turns the
    propagator into a delta family: mu ~ 2a(0)t for regular models and
    mu ~ 2 t^3 / 3 for the models whose diffusion coefficient vanishes
    quadratically at t = 0.
    """
    tag = model.tag
    if tag in (ModelTag.M1, ModelTag.M2):
        w = Wronskian.COS_COSH
        return CharacteristicState(
            t, wronskian_value(w, t), wronskian_prime(w, t), wronskian_second(w, t)
        )
    if tag in (ModelTag.M3, ModelTag.M4):
        mu, mu_p, mu_pp = _cubic_branch(t)
        return CharacteristicState(t, mu, mu_p, mu_pp)
    if tag is ModelTag.FREE:
        return CharacteristicState(t, t, 1.0, 0.0)
    if tag is ModelTag.HARMONIC:
        return CharacteristicState(t, math.sin(t), math.cos(t), -math.sin(t))
    # DAMPED: mu = (omega0/omega) e^{-lam t} sin(omega t)
    w0, lam, w = model.omega0, model.lam, model.omega
    e = math.exp(-lam * t)
    s, c = math.sin(w * t), math.cos(w * t)
    mu = (w0 / w) * e * s
    mu_p = (w0 / w) * e * (w * c - lam * s)
    mu_pp = (w0 / w) * e * ((lam**2 - w**2) * s - 2 * lam * w * c)
    return CharacteristicState(t, mu, mu_p, mu_pp)


def integrate_characteristic(
    model_or_tau,
    sigma_fn=None,
    *,
    mu0: float,
    mu0_prime: float,
    t: float,
    dt: float = 1e-4,
    tau_bound: float = 1e6,
) -> CharacteristicState:
    """Integrate mu'' = tau(t) mu' - 4 sigma(t) mu by classic Runge-Kutta.

    Accepts either a Model (whose tau/sigma are used) or a pair of callables.
    Deliberately independent of the closed forms so it can serve as an oracle.
    Raises PoleCrossing when |tau| exceeds tau_bound along the path.
    """
    if isinstance(model_or_tau, Model):
        tau_fn = lambda s: model_tau(model_or_tau, s)
        sigma_fn = lambda s: model_sigma(model_or_tau, s)
    else:
        tau_fn = model_or_tau
        if sigma_fn is None:
            raise TypeError("sigma_fn is required when tau is a callable")

    def rhs(s, y):
        tv = tau_fn(s)
        if not math.isfinite(tv) or abs(tv) > tau_bound:
            raise PoleCrossing(f"damping coefficient blows up at t={s:.6g}")
        return np.array([y[1], tv * y[1] - 4.0 * sigma_fn(s) * y[0]])

    n = max(1, round(abs(t) / dt))
    h = t / n
    y = np.array([mu0, mu0_prime], dtype=float)
    s = 0.0
    for _ in range(n):
        k1 = rhs(s, y)
        k2 = rhs(s + h / 2, y + h / 2 * k1)
        k3 = rhs(s + h / 2, y + h / 2 * k2)
        k4 = rhs(s + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        s += h
    tv = tau_fn(t)
    mu_pp = tv * y[1] - 4.0 * sigma_fn(t) * y[0]
    return CharacteristicState(t, y[0], y[1], mu_pp)


def first_caustic(model: Model) -> float:
    """First positive zero of the Green-function branch mu(t)."""
    tag = model.tag
    if tag is ModelTag.FREE:
        return math.inf
    if tag is ModelTag.HARMONIC:
        return math.pi
    if tag is ModelTag.DAMPED:
        return math.pi / model.omega
    lo = 0.1
    f = lambda s: eval_mu(model, s).mu
    hi = lo + 0.5
    while f(lo) * f(hi) > 0:
        lo, hi = hi, hi + 0.5
        if hi > 50:  # pragma: no cover - all models cross well before this
            raise RuntimeError("no caustic found")
    return brentq(f, lo, hi, xtol=1e-14)


# ---------------------------------------------------------------------------
# products u_alpha v_beta: the basis of the fourth-order equation W'''' + 4W = 0

_U = {1: (math.cos, lambda t: -math.sin(t)), 2: (math.sin, math.cos)}
_V = {1: (math.cosh, math.sinh), 2: (math.sinh, math.cosh)}


def _product_derivatives(alpha: int, beta: int, t: float, orders: int = 4):
    """Values of (u_alpha v_beta)^{(k)} for k = 0..orders via Leibniz."""
    u, _ = _U[alpha]
    v, _ = _V[beta]
    # derivative cycles: trig period 4 with signs, hyperbolic period 2
    uv = [u(t)]
    vv = [v(t)]
    uc = {1: [math.cos(t), -math.sin(t), -math.cos(t), math.sin(t)],
          2: [math.sin(t), math.cos(t), -math.sin(t), -math.cos(t)]}[alpha]
    vc = {1: [math.cosh(t), math.sinh(t)],
          2: [math.sinh(t), math.cosh(t)]}[beta]
    for k in range(1, orders + 1):
        uv.append(uc[k % 4])
        vv.append(vc[k % 2])
    out = []
    for k in range(orders + 1):
        out.append(sum(math.comb(k, j) * uv[j] * vv[k - j] for j in range(k + 1)))
    return out


def biharmonic_residual(alpha: int, beta: int, t: float) -> float:
    """Residual of W'''' + 4 W = 0 for the product u_alpha v_beta."""
    d = _product_derivatives(alpha, beta, t, orders=4)
    return d[4] + 4.0 * d[0]


def operator_action(k: int, alpha: int, beta: int, t: float) -> float:
    """Apply the k-th second-order operator to the product u_alpha v_beta.

    The operators are d^2/dt^2 + p_k(t) d/dt + q_k with
    p_1 = 2 tan t, p_2 = -2 cot t (q = -2) and
    p_3 = -2 tanh t, p_4 = -2 coth t (q = +2).
    """
    d = _product_derivatives(alpha, beta, t, orders=2)
    if k == 1:
        p, q = 2 * math.tan(t), -2.0
    elif k == 2:
        p, q = -2 / math.tan(t), -2.0
    elif k == 3:
        p, q = -2 * math.tanh(t), 2.0
    elif k == 4:
        p, q = -2 / math.tanh(t), 2.0
    else:
        raise ValueError("operator index must be 1..4")
    return d[2] + p * d[1] + q * d[0]


def operator_action_expected(k: int, alpha: int, beta: int, t: float) -> float:
    """Tabulated closed form of operator_action (inhomogeneous right sides)."""
    u1, u2 = math.cos(t), math.sin(t)
    v1, v2 = math.cosh(t), math.sinh(t)
    table = {
        1: {(1, 1): -2 * v1 / u1, (1, 2): -2 * v2 / u1,
            (2, 1): 2 * v2 / u1, (2, 2): 2 * v1 / u1},
        2: {(1, 1): -2 * v2 / u2, (1, 2): -2 * v1 / u2,
            (2, 1): -2 * v1 / u2, (2, 2): -2 * v2 / u2},
        3: {(1, 1): 2 * u1 / v1, (1, 2): -2 * u2 / v1,
            (2, 1): 2 * u2 / v1, (2, 2): 2 * u1 / v1},
        4: {(1, 1): 2 * u2 / v2, (1, 2): -2 * u1 / v2,
            (2, 1): -2 * u1 / v2, (2, 2): -2 * u2 / v2},
    }
    return table[k][(alpha, beta)]


def shift_relation_residual(t: float, sign: int, half: bool = False) -> float:
    """Deviation in the shift relations of the oscillating-damping equations.

    For shifts by +/- pi the pair (y1, y2) maps onto itself through
    -[[cosh pi, s sinh pi], [s sinh pi, cosh pi]]; for shifts by +/- pi/2 it
    is produced from (y3, y4) through the analogous half-period matrix.
    """
    s = float(sign)
    if half:
        shift = s * math.pi / 2
        m11 = m22 = math.sinh(math.pi / 2)
        m12 = m21 = s * math.cosh(math.pi / 2)
        src = (wronskian_value(Y3, t), wronskian_value(Y4, t))
    else:
        shift = s * math.pi
        m11 = m22 = math.cosh(math.pi)
        m12 = m21 = s * math.sinh(math.pi)
        src = (wronskian_value(Y1, t), wronskian_value(Y2, t))
    lhs1 = wronskian_value(Y1, t + shift)
    lhs2 = wronskian_value(Y2, t + shift)
    rhs1 = -(m11 * src[0] + m12 * src[1])
    rhs2 = -(m21 * src[0] + m22 * src[1])
    return max(abs(lhs1 - rhs1), abs(lhs2 - rhs2))
