"""Exact propagators for Schrödinger equations with quadratic Hamiltonians.

The library evaluates closed-form Green functions for a family of modified
oscillators (trigonometric and hyperbolic coefficient sets that share the
same characteristic function), applies them as integral operators on sampled
wavefunctions, and certifies the analytic structure numerically: PDE
residuals, dual-pair kernel symmetry, operator diagrams with the Fourier
transform, eigenfunction expansions, and the nonlinear (gain-extended)
particular solutions with their ill-posedness scan.
"""

from . import _threads  # noqa: F401  (honor OSCILLAPROP_THREADS before numpy)

from .characteristic import (
    CharacteristicState,
    Wronskian,
    eval_mu,
    first_caustic,
    integrate_characteristic,
    wronskian_prime,
    wronskian_value,
)
from .errors import (
    DimensionMismatch,
    DivergentPhase,
    InvalidQuantumNumbers,
    InvalidSpan,
    OscillapropError,
    PoleCrossing,
    SingularContour,
    SingularTime,
    TailLeak,
)
from .estimators import FourierRepresentation, KernelPropagator
from .evolution import (
    WaveGrid,
    apply_inverse,
    apply_kernel,
    crank_nicolson_oracle,
    diagram_check,
    fourier,
    schrodinger_residual,
    semigroup_deviation,
)
from .kernels import (
    KernelValue,
    StandingKind,
    green_kernel,
    ndim_green,
    radial_kernel,
    standing_kernel,
)
from .models import (
    FREE,
    HARMONIC,
    M1,
    M2,
    M3,
    M4,
    Model,
    ModelTag,
    coefficients,
    damped,
)
from .nls import NlsParams, divergence_scan, illposed_solution, nls_residual, nls_solution
from .phase import PhaseTriple, Span, general_phase, green_phase

__version__ = "0.1.0"

__all__ = [
    "CharacteristicState",
    "DimensionMismatch",
    "DivergentPhase",
    "FourierRepresentation",
    "FREE",
    "HARMONIC",
    "InvalidQuantumNumbers",
    "InvalidSpan",
    "KernelPropagator",
    "KernelValue",
    "M1",
    "M2",
    "M3",
    "M4",
    "Model",
    "ModelTag",
    "NlsParams",
    "OscillapropError",
    "PhaseTriple",
    "PoleCrossing",
    "SingularContour",
    "SingularTime",
    "Span",
    "StandingKind",
    "TailLeak",
    "WaveGrid",
    "Wronskian",
    "apply_inverse",
    "apply_kernel",
    "coefficients",
    "crank_nicolson_oracle",
    "damped",
    "diagram_check",
    "divergence_scan",
    "eval_mu",
    "first_caustic",
    "fourier",
    "general_phase",
    "green_kernel",
    "green_phase",
    "illposed_solution",
    "integrate_characteristic",
    "ndim_green",
    "nls_residual",
    "nls_solution",
    "radial_kernel",
    "schrodinger_residual",
    "semigroup_deviation",
    "standing_kernel",
    "wronskian_prime",
    "wronskian_value",
]
