"""Quadratic phases of the propagators.

Every kernel in this library has the Gaussian form
prefactor * exp(i(alpha x^2 + beta x y + gamma y^2 + kappa)); this module
produces the (alpha, beta, gamma) triples in closed form: for the
Green-function branch of each model, for general two-parameter solution
families of the oscillating models, and for the regularized delta families
used in the ill-posedness analysis.  The nonlinear phase kappa and the
duality criterion connecting pairs of models live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .characteristic import (
    CharacteristicState,
    Wronskian,
    eval_mu,
    wronskian_prime,
    wronskian_value,
)
from .errors import DivergentPhase, InvalidSpan, SingularTime
from .models import Model, ModelTag, coefficients, sigma as model_sigma, tau as model_tau

_SING_TOL = 1e-12

# shorthands for the four basis Wronskians
_W1 = Wronskian.COS_SINH  # cos*cosh + sin*sinh
_W2 = Wronskian.COS_COSH  # cos*sinh + sin*cosh
_W3 = Wronskian.SIN_COSH  # sin*sinh - cos*cosh
_W4 = Wronskian.SIN_SINH  # sin*cosh - cos*sinh


@dataclass(frozen=True)
class PhaseTriple:
    """Coefficients of the quadratic phase at time t."""

    t: float
    alpha: float
    beta: float
    gamma: float
    kappa: float = 0.0


def _checked_div(num: float, den: float, t: float) -> float:
    if abs(den) <= _SING_TOL:
        raise SingularTime(f"phase denominator vanishes at t={t:.6g}")
    return num / den


def green_phase(model: Model, t: float) -> PhaseTriple:
    """Phase triple of the fundamental (delta initial data) propagator."""
    tag = model.tag
    if tag in (ModelTag.M1, ModelTag.M2):
        mu = wronskian_value(_W2, t)
        alpha = _checked_div(-wronskian_value(_W3, t), 2 * mu, t)
        beta = _checked_div(-1.0, mu, t)
        gamma = _checked_div(wronskian_value(_W1, t), 2 * mu, t)
        if tag is ModelTag.M2:
            alpha, gamma = gamma, alpha
        return PhaseTriple(t, alpha, beta, gamma)
    if tag in (ModelTag.M3, ModelTag.M4):
        mu = eval_mu(Model(ModelTag.M3), t).mu  # series-stabilized branch
        alpha = _checked_div(wronskian_value(_W1, t), 2 * mu, t)
        beta = _checked_div(-1.0, mu, t)
        gamma = _checked_div(-wronskian_value(_W3, t), 2 * mu, t)
        if tag is ModelTag.M4:
            alpha, gamma = gamma, alpha
        return PhaseTriple(t, alpha, beta, gamma)
    if tag is ModelTag.FREE:
        alpha = _checked_div(1.0, 2 * t, t)
        return PhaseTriple(t, alpha, -1.0 / t, alpha)
    if tag is ModelTag.HARMONIC:
        s, c = math.sin(t), math.cos(t)
        return PhaseTriple(
            t, _checked_div(c, 2 * s, t), _checked_div(-1.0, s, t), _checked_div(c, 2 * s, t)
        )
    # DAMPED
    w0, lam, w = model.omega0, model.lam, model.omega
    s, c = math.sin(w * t), math.cos(w * t)
    alpha = _checked_div((w * c - lam * s) * math.exp(2 * lam * t), 2 * w0 * s, t)
    beta = _checked_div(-w * math.exp(lam * t), w0 * s, t)
    # (w^2 - w0^2 sin^2) factors as (w cos - lam sin)(w cos + lam sin)
    gamma = _checked_div(w * c + lam * s, 2 * w0 * s, t)
    return PhaseTriple(t, alpha, beta, gamma)


# ---------------------------------------------------------------------------
# general two-parameter solution families of the four oscillating models


@dataclass(frozen=True)
class Span:
    """Initial span of the characteristic solution plus phase initial data.

    (c_a, c_b) multiply the model's natural pair of basis Wronskians:
    (cos,sinh)/(cos,cosh) for M1, (cos,cosh)/(sin,cosh) for M2,
    (sin,cosh)/(sin,sinh) for M3 and (cos,sinh)/(sin,sinh) for M4.
    """

    c_a: float
    c_b: float
    beta0: float = 1.0
    gamma0: float = 0.0
    kappa0: float = 0.0

    def __post_init__(self):
        if self.c_a == 0.0 and self.c_b == 0.0:
            raise InvalidSpan("span coefficients must not both vanish")


_SPAN_BASES = {
    ModelTag.M1: (_W1, _W2),
    ModelTag.M2: (_W2, _W3),
    ModelTag.M3: (_W3, _W4),
    ModelTag.M4: (_W1, _W4),
}


def span_mu(model: Model, span: Span, t: float) -> tuple[float, float]:
    """mu(t) and mu'(t) for the spanned characteristic solution."""
    try:
        wa, wb = _SPAN_BASES[model.tag]
    except KeyError:
        raise InvalidSpan(f"general spans are defined for M1..M4, not {model}")
    mu = span.c_a * wronskian_value(wa, t) + span.c_b * wronskian_value(wb, t)
    mu_p = span.c_a * wronskian_prime(wa, t) + span.c_b * wronskian_prime(wb, t)
    return mu, mu_p


def span_mu0(model: Model, span: Span) -> float:
    """mu(0) of the spanned solution."""
    mu0, _ = span_mu(model, span, 0.0)
    return mu0


def general_phase(model: Model, span: Span, t: float) -> PhaseTriple:
    """Phase triple of the general Gaussian solution family."""
    u1, u2 = math.cos(t), math.sin(t)
    v1, v2 = math.cosh(t), math.sinh(t)
    mu, _ = span_mu(model, span, t)
    if abs(mu) <= _SING_TOL:
        raise SingularTime(f"characteristic function vanishes at t={t:.6g}")
    b0, g0 = span.beta0, span.gamma0
    tag = model.tag
    if tag is ModelTag.M1:
        c1, c2 = span.c_a, span.c_b
        alpha = (u1 * (c1 * v2 + c2 * v1) - u2 * (c1 * v1 + c2 * v2)) / (2 * mu)
        beta = c1 * b0 / mu
        gamma = g0 - c1 * b0**2 * wronskian_value(_W2, t) / (2 * mu)
    elif tag is ModelTag.M2:
        c2, c3 = span.c_a, span.c_b
        alpha = (u1 * (c2 * v1 - c3 * v2) + u2 * (c2 * v2 + c3 * v1)) / (2 * mu)
        beta = -c3 * b0 / mu
        gamma = g0 + c3 * b0**2 * wronskian_value(_W2, t) / (2 * mu)
    elif tag is ModelTag.M3:
        c3, c4 = span.c_a, span.c_b
        alpha = (u2 * (c3 * v1 + c4 * v2) + u1 * (c3 * v2 + c4 * v1)) / (2 * mu)
        beta = -c3 * b0 / mu
        gamma = g0 + c3 * b0**2 * wronskian_value(_W4, t) / (2 * mu)
    elif tag is ModelTag.M4:
        c1, c4 = span.c_a, span.c_b
        alpha = -(v2 * (c1 * u1 + c4 * u2) + v1 * (c1 * u2 - c4 * u1)) / (2 * mu)
        beta = c1 * b0 / mu
        gamma = g0 - c1 * b0**2 * wronskian_value(_W4, t) / (2 * mu)
    else:  # pragma: no cover - guarded in span_mu
        raise InvalidSpan(f"general spans are defined for M1..M4, not {model}")
    return PhaseTriple(t, alpha, beta, gamma)


# ---------------------------------------------------------------------------
# nonlinear phase


def kappa_closed(model: Model, span: Span, s: float, lam: float, t: float) -> float:
    """kappa(t) for the gain h = lam * mu', integrated in closed form."""
    mu, _ = span_mu(model, span, t)
    mu0 = span_mu0(model, span)
    if s == 1.0:
        if abs(mu0) <= _SING_TOL:
            raise DivergentPhase("kappa diverges for s=1 when mu(0) = 0")
        return span.kappa0 - lam * math.log(mu / mu0)
    if s > 1.0 and abs(mu0) <= _SING_TOL:
        raise DivergentPhase(f"kappa diverges for s={s} when mu(0) = 0")
    p = 1.0 - s
    if p != round(p) and min(mu, mu0) < 0:
        raise DivergentPhase("fractional power of a negative characteristic function")
    return span.kappa0 - lam / p * (mu**p - mu0**p)


def kappa_quadrature(
    model: Model,
    span: Span,
    s: float,
    lam: float,
    t: float,
    tol: float = 1e-12,
) -> float:
    """kappa(t) by adaptive quadrature of -h(tau)/mu(tau)^s, h = lam mu'."""

    def integrand(u):
        mu, mu_p = span_mu(model, span, u)
        return lam * mu_p / mu**s

    val, _ = quad(integrand, 0.0, t, epsabs=tol, epsrel=tol, limit=200)
    return span.kappa0 - val


# ---------------------------------------------------------------------------
# regularized delta families


def regularized_mu(model: Model, eps: float, t: float) -> float:
    """Characteristic function of the regularized delta-family solution."""
    w1, w2 = wronskian_value(_W1, t), wronskian_value(_W2, t)
    w3, w4 = wronskian_value(_W3, t), wronskian_value(_W4, t)
    tag = model.tag
    if tag is ModelTag.M1:
        return 2 * math.pi * (eps * w1 + w2)
    if tag is ModelTag.M2:
        return 2 * math.pi * (w2 - eps * w3)
    if tag is ModelTag.M3:
        return 2 * math.pi * (w4 - eps * w3)
    if tag is ModelTag.M4:
        return 2 * math.pi * (w4 + eps * w1)
    raise InvalidSpan(f"regularized families are defined for M1..M4, not {model}")


def regularized_phase(model: Model, eps: float, t: float) -> PhaseTriple:
    """Phase triple of the regularized delta-family solution.

    At t = 0 the triple is (1/(2 eps), -1/eps, 1/(2 eps)): a Fresnel delta
    family of width eps.  As eps -> 0 at fixed t > 0 it approaches the
    Green-function phases.
    """
    u1, u2 = math.cos(t), math.sin(t)
    v1, v2 = math.cosh(t), math.sinh(t)
    tag = model.tag
    if tag is ModelTag.M1:
        den = u1 * (eps * v1 + v2) + u2 * (eps * v2 + v1)
        alpha = _checked_div(u1 * (eps * v2 + v1) - u2 * (eps * v1 + v2), 2 * den, t)
        beta = _checked_div(-1.0, den, t)
        gamma = _checked_div(wronskian_value(_W1, t), 2 * den, t)
    elif tag is ModelTag.M2:
        den = u1 * (v2 + eps * v1) + u2 * (v1 - eps * v2)
        alpha = _checked_div(u1 * (v1 + eps * v2) + u2 * (v2 - eps * v1), 2 * den, t)
        beta = _checked_div(-1.0, den, t)
        gamma = _checked_div(-wronskian_value(_W3, t), 2 * den, t)
    elif tag is ModelTag.M3:
        den = u2 * (v1 - eps * v2) - u1 * (v2 - eps * v1)
        alpha = _checked_div(u2 * (v2 - eps * v1) + u1 * (v1 - eps * v2), 2 * den, t)
        beta = _checked_div(-1.0, den, t)
        gamma = _checked_div(-wronskian_value(_W3, t), 2 * den, t)
    elif tag is ModelTag.M4:
        den = v2 * (u1 - eps * u2) - v1 * (u2 + eps * u1)
        alpha = _checked_div(v2 * (u2 + eps * u1) - v1 * (u1 - eps * u2), 2 * den, t)
        beta = _checked_div(1.0, den, t)
        gamma = _checked_div(-wronskian_value(_W1, t), 2 * den, t)
    else:
        raise InvalidSpan(f"regularized families are defined for M1..M4, not {model}")
    return PhaseTriple(t, alpha, beta, gamma)


def regularized_kappa(model: Model, eps: float, s: float, lam: float, t: float) -> float:
    """Nonlinear phase of the regularized family, gain h = (lam/2pi) mu_eps'.

    For s = 1 the phase diverges logarithmically as eps -> 0+ at fixed t > 0,
    which is the source of the ill-posedness of the nonlinear problem.
    """
    if eps < 0 or (eps == 0 and s >= 1):
        raise DivergentPhase("regularized kappa requires eps > 0 (any s) or s < 1")
    w1, w2 = wronskian_value(_W1, t), wronskian_value(_W2, t)
    w3, w4 = wronskian_value(_W3, t), wronskian_value(_W4, t)
    tag = model.tag
    combos = {
        ModelTag.M1: (w2, w1),
        ModelTag.M2: (w2, -w3),
        ModelTag.M3: (w4, -w3),
        ModelTag.M4: (w4, w1),
    }
    if tag not in combos:
        raise InvalidSpan(f"regularized families are defined for M1..M4, not {model}")
    main, extra = combos[tag]
    combo = main + eps * extra
    if s == 1.0:
        # eps > 0 here by the precondition; the log argument is combo / eps
        log_arg = main / eps + extra
        if log_arg <= 0:
            raise DivergentPhase("logarithmic phase undefined past the caustic")
        return -lam / (2 * math.pi) * math.log(log_arg)
    p = 1.0 - s
    if p != round(p) and combo < 0:
        raise DivergentPhase("fractional power of a negative characteristic function")
    return -lam / (2 * math.pi) ** s * (combo**p - eps**p) / p


# ---------------------------------------------------------------------------
# duality between coefficient sets sharing a characteristic function


def check_duality_criterion(
    model_a: Model,
    model_b: Model,
    t: float,
    state: CharacteristicState | None = None,
) -> float:
    """Deviation in the algebraic criterion for two models to share a kernel.

    Both coefficient sets must satisfy
    4(ab - cd + d^2) = (4 a_1 a_2 h^2 - mu'^2)/mu^2 - 2 e mu'/mu
    with e = c_1 - 2 d_1 and h = exp(-int e); for our models e = 0, h = 1.
    When the damping coefficients differ, mu'/mu is additionally pinned to
    4(sigma_1 - sigma_2)/(tau_1 - tau_2).  Returns the largest residual.
    """
    if state is None:
        state = eval_mu(model_a, t)
    mu, mu_p = state.mu, state.mu_prime
    if abs(mu) <= _SING_TOL:
        raise SingularTime(f"characteristic function vanishes at t={t:.6g}")
    a1, b1, c1, d1 = coefficients(model_a, t)
    a2, b2, c2, d2 = coefficients(model_b, t)
    lhs = 4 * (a1 * b1 - c1 * d1 + d1**2)
    rhs = 4 * (a2 * b2 - c2 * d2 + d2**2)
    mid = (4 * a1 * a2 - mu_p**2) / mu**2  # e = 0, h = 1 for all models here
    dev = max(abs(lhs - mid), abs(rhs - mid))
    t1, t2 = model_tau(model_a, t), model_tau(model_b, t)
    if abs(t1 - t2) > 1e-8:
        s1, s2 = model_sigma(model_a, t), model_sigma(model_b, t)
        dev = max(dev, abs(mu_p / mu - 4 * (s1 - s2) / (t1 - t2)))
    return dev
