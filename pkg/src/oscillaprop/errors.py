"""Typed errors raised by the numerical layers.

Singularities of the kernels (caustics, vanishing contour determinants,
divergent nonlinear phases) are genuine features of the models, so they are
reported as exceptions rather than as infinities.
"""


class OscillapropError(Exception):
    """Base class for all library errors."""


class SingularTime(OscillapropError):
    """The characteristic function (or a kernel denominator) vanishes at t."""


class SingularContour(OscillapropError):
    """The complex contour determinant z*zeta - conj(z*zeta) vanishes."""


class DivergentPhase(OscillapropError):
    """The nonlinear phase integral diverges for the requested parameters."""


class InvalidSpan(OscillapropError):
    """Both span coefficients vanish; no characteristic solution selected."""


class PoleCrossing(OscillapropError):
    """An ODE integration path runs into a pole of the damping coefficient."""


class TailLeak(OscillapropError):
    """Wavefunction amplitude at the grid boundary exceeds the tail budget."""


class DimensionMismatch(OscillapropError):
    """Coordinate vectors of unequal dimension."""


class InvalidQuantumNumbers(OscillapropError):
    """Quantum numbers violate the oscillator selection rules."""
