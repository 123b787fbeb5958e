"""Coefficient sets for the quadratic Hamiltonian family.

Each model fixes the four time-dependent coefficients (a, b, c, d) of

    i psi_t = -a(t) psi_xx + b(t) x^2 psi - i (c(t) x psi_x + d(t) psi),

together with the damping/restoring pair (tau, sigma) of the associated
characteristic equation  mu'' - tau(t) mu' + 4 sigma(t) mu = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import OscillapropError


class ModelTag(Enum):
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    M4 = "M4"
    FREE = "FREE"
    HARMONIC = "HARMONIC"
    DAMPED = "DAMPED"


@dataclass(frozen=True)
class Model:
    """A coefficient set, optionally carrying damped-oscillator parameters."""

    tag: ModelTag
    omega0: float | None = None
    lam: float | None = None

    def __post_init__(self):
        if self.tag is ModelTag.DAMPED:
            if self.omega0 is None or self.lam is None:
                raise OscillapropError("DAMPED model needs omega0 and lam")
            if not (self.omega0 > self.lam >= 0.0):
                raise OscillapropError(
                    "DAMPED model requires omega0 > lam >= 0, got "
                    f"omega0={self.omega0}, lam={self.lam}"
                )
        elif self.omega0 is not None or self.lam is not None:
            raise OscillapropError(f"{self.tag.value} takes no extra parameters")

    @property
    def omega(self) -> float:
        """Reduced frequency sqrt(omega0^2 - lam^2) of the damped model."""
        if self.tag is not ModelTag.DAMPED:
            raise OscillapropError("omega is only defined for the DAMPED model")
        return math.sqrt(self.omega0**2 - self.lam**2)

    def __str__(self):
        if self.tag is ModelTag.DAMPED:
            return f"DAMPED(omega0={self.omega0}, lam={self.lam})"
        return self.tag.value


M1 = Model(ModelTag.M1)
M2 = Model(ModelTag.M2)
M3 = Model(ModelTag.M3)
M4 = Model(ModelTag.M4)
FREE = Model(ModelTag.FREE)
HARMONIC = Model(ModelTag.HARMONIC)


def damped(omega0: float, lam: float) -> Model:
    """Damped-oscillator coefficient set with frequency omega0 and damping lam."""
    return Model(ModelTag.DAMPED, omega0=omega0, lam=lam)


def coefficients(model: Model, t: float) -> tuple[float, float, float, float]:
    """Return (a, b, c, d) at time t."""
    tag = model.tag
    if tag is ModelTag.M1:
        s2 = math.sin(2 * t)
        return math.cos(t) ** 2, math.sin(t) ** 2, s2, s2 / 2
    if tag is ModelTag.M2:
        s2 = math.sinh(2 * t)
        return math.cosh(t) ** 2, math.sinh(t) ** 2, -s2, -s2 / 2
    if tag is ModelTag.M3:
        s2 = math.sin(2 * t)
        return math.sin(t) ** 2, math.cos(t) ** 2, -s2, -s2 / 2
    if tag is ModelTag.M4:
        s2 = math.sinh(2 * t)
        return math.sinh(t) ** 2, math.cosh(t) ** 2, s2, s2 / 2
    if tag is ModelTag.FREE:
        return 0.5, 0.0, 0.0, 0.0
    if tag is ModelTag.HARMONIC:
        return 0.5, 0.5, 0.0, 0.0
    # DAMPED
    w0, lam = model.omega0, model.lam
    return (w0 / 2) * math.exp(-2 * lam * t), (w0 / 2) * math.exp(2 * lam * t), 0.0, 0.0


def tau(model: Model, t: float) -> float:
    """Damping coefficient of the characteristic equation."""
    tag = model.tag
    if tag is ModelTag.M1:
        return -2 * math.tan(t)
    if tag is ModelTag.M2:
        return 2 * math.tanh(t)
    if tag is ModelTag.M3:
        return 2 / math.tan(t)
    if tag is ModelTag.M4:
        return 2 / math.tanh(t)
    if tag in (ModelTag.FREE, ModelTag.HARMONIC):
        return 0.0
    return -2 * model.lam


def sigma(model: Model, t: float) -> float:
    """Restoring coefficient of the characteristic equation."""
    tag = model.tag
    if tag in (ModelTag.M1, ModelTag.M3):
        return -0.5
    if tag in (ModelTag.M2, ModelTag.M4):
        return 0.5
    if tag is ModelTag.FREE:
        return 0.0
    if tag is ModelTag.HARMONIC:
        return 0.25
    return model.omega0**2 / 4
