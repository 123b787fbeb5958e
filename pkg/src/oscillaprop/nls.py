"""Gaussian particular solutions of the nonlinear evolution equations.

The quadratic-Hamiltonian equations extended by a gain term h(t)|psi|^{2s} psi
retain Gaussian particular solutions whose only new ingredient is the extra
time-dependent phase kappa.  With the matched gain h = lam * mu' the phase
integrates in closed form; the regularized delta families expose a
logarithmic divergence of that phase at the critical exponent s = 1, which
this module quantifies with a scan over the regularization parameter.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DivergentPhase, OscillapropError
from .models import Model, coefficients
from .phase import (
    Span,
    general_phase,
    kappa_closed,
    regularized_kappa,
    regularized_mu,
    regularized_phase,
    span_mu,
)


@dataclass(frozen=True)
class NlsParams:
    """Parameters of the nonlinear Gaussian solution family.

    s is the nonlinearity power, lam the gain coupling (h(t) = lam mu'(t)),
    phi a constant overall phase, span the initial span of the characteristic
    solution.
    """

    model: Model
    span: Span
    s: float = 1.0
    lam: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.s < 0:
            raise OscillapropError("nonlinearity power s must be nonnegative")


def gain(params: NlsParams, t: float) -> float:
    """The matched gain coefficient h(t) = lam mu'(t)."""
    _, mu_p = span_mu(params.model, params.span, t)
    return params.lam * mu_p


def nls_solution(params: NlsParams, x: float, y: float, t: float) -> complex:
    """Closed-form Gaussian solution psi(x, t) with gain h(t) = lam mu'(t).

    y is the frozen second argument of the kernel family.  The amplitude is
    mu^{-1/2}, the phase quadratic in x with the nonlinear correction kappa.
    """
    mu, _ = span_mu(params.model, params.span, t)
    ph = general_phase(params.model, params.span, t)
    kap = kappa_closed(params.model, params.span, params.s, params.lam, t)
    return cmath.exp(
        1j * (params.phi + ph.alpha * x**2 + ph.beta * x * y + ph.gamma * y**2 + kap)
    ) / cmath.sqrt(mu)


def nls_residual(
    params: NlsParams,
    x: float,
    y: float,
    t: float,
    hx: float = 1e-3,
    ht: float = 1e-3,
    linear: bool = False,
) -> complex:
    """Relative finite-difference residual of the nonlinear equation.

    Checks i psi_t = -a psi_xx + b x^2 psi - i(c x psi_x + d psi)
                     + h |psi|^{2s} psi
    with fourth-order stencils; the result is scaled by the largest term so
    its modulus is a relative residual.  With linear=True the nonlinear term
    is replaced by the equivalent linear gain h(t)/mu^s psi, which the same
    solution also satisfies.
    """
    a, b, c, d = coefficients(params.model, t)

    def f(xx, tt):
        return nls_solution(params, xx, y, tt)

    def d1(g, h):
        return (g(-2 * h) - 8 * g(-h) + 8 * g(h) - g(2 * h)) / (12 * h)

    def d2(g, h):
        return (-g(-2 * h) + 16 * g(-h) - 30 * g(0) + 16 * g(h) - g(2 * h)) / (12 * h**2)

    psi = f(x, t)
    psi_t = d1(lambda e: f(x, t + e), ht)
    psi_x = d1(lambda e: f(x + e, t), hx)
    psi_xx = d2(lambda e: f(x + e, t), hx)
    h_t = gain(params, t)
    if linear:
        mu, _ = span_mu(params.model, params.span, t)
        nonlinear = h_t / mu**params.s * psi
    else:
        nonlinear = h_t * abs(psi) ** (2 * params.s) * psi
    res = (
        1j * psi_t
        + a * psi_xx
        - b * x**2 * psi
        + 1j * (c * x * psi_x + d * psi)
        - nonlinear
    )
    scale = max(
        abs(a * psi_xx),
        abs(b * x**2 * psi),
        abs(c * x * psi_x),
        abs(nonlinear),
        abs(psi),
        1e-30,
    )
    return res / scale


def illposed_solution(
    model: Model, eps: float, s: float, lam: float, x: float, y: float, t: float
) -> complex:
    """Regularized delta-family solution of the nonlinear equation.

    At t = 0 this is a Fresnel approximation of delta(x - y); eps = 0 with
    t > 0 recovers the ordinary propagator up to a 2 pi scaling of the
    characteristic function.  For s = 1 the family fails to converge as
    eps -> 0+ because of the phase divergence.
    """
    if eps < 0 or (eps == 0 and t == 0):
        raise DivergentPhase("need eps > 0, or eps = 0 with t != 0")
    mu_eps = regularized_mu(model, eps, t)
    ph = regularized_phase(model, eps, t)
    kap = regularized_kappa(model, eps, s, lam, t)
    return cmath.exp(
        1j * (ph.alpha * x**2 + ph.beta * x * y + ph.gamma * y**2 + kap)
    ) / cmath.sqrt(1j * mu_eps)


def divergence_scan(
    model: Model, t: float, s: float, lam: float, eps_values
) -> list[tuple[float, float]]:
    """Nonlinear phase of the regularized family over a range of eps."""
    return [
        (float(e), regularized_kappa(model, float(e), s, lam, t)) for e in eps_values
    ]


def scan_csv(scan) -> str:
    """Render a divergence scan as CSV with an `eps,kappa` header."""
    lines = ["eps,kappa"]
    lines += [f"{e:.12g},{k:.12g}" for e, k in scan]
    return "\n".join(lines) + "\n"


def fit_log_slope(scan) -> float:
    """Least-squares slope of kappa_eps against ln(1/eps).

    For s = 1 the asymptotic slope has modulus lam/(2 pi); a nonzero slope
    is the quantitative signature of ill-posedness.
    """
    eps = np.array([row[0] for row in scan])
    kap = np.array([row[1] for row in scan])
    slope, _ = np.polyfit(np.log(1.0 / eps), kap, 1)
    return float(slope)


def cauchy_deviation(scan) -> float:
    """Largest successive difference of kappa_eps over the scan tail.

    Small values certify convergence of the family (the subcritical case
    s < 1); used as the counterpart of the divergent-slope fit.
    """
    kap = [row[1] for row in scan]
    return max(abs(b - a) for a, b in zip(kap, kap[1:]))
