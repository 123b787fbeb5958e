"""Grid-based evolution operators and numerical oracles.

Wavefunctions live on a uniform grid x_j = -L + 2Lj/N, j = 0..N-1.  The
integral operators (propagators, standing-wave kernels, Fourier transform)
are applied by direct trapezoid quadrature, which is spectrally accurate for
the Gaussian-decaying wavefunctions this library works with.  A
Crank-Nicolson integrator with fourth-order spatial stencils serves as an
independent oracle, and finite-difference residuals verify that closed-form
fields satisfy the evolution equation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import DimensionMismatch, OscillapropError, TailLeak
from .kernels import StandingKind, branch_prefactor, standing_phase
from .models import Model, ModelTag, coefficients
from .phase import PhaseTriple, green_phase

TAIL_THRESHOLD = 1e-6


@dataclass
class WaveGrid:
    """A complex wavefunction sampled on the uniform grid over [-L, L)."""

    L: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        n = len(self.values)
        if n < 64 or n & (n - 1):
            raise OscillapropError(f"grid size must be a power of two >= 64, got {n}")
        if not np.all(np.isfinite(self.values)):
            raise OscillapropError("grid values must be finite")

    @property
    def N(self) -> int:
        return len(self.values)

    @property
    def dx(self) -> float:
        return 2 * self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    def norm(self) -> float:
        """L2 norm by the trapezoid rule (endpoint terms are negligible)."""
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.dx)

    def with_values(self, values: np.ndarray) -> "WaveGrid":
        return WaveGrid(self.L, values)

    @classmethod
    def gaussian(
        cls,
        L: float = 12.0,
        N: int = 1024,
        center: float = 0.0,
        width: float = 1.0,
        momentum: float = 0.0,
    ) -> "WaveGrid":
        """Normalized Gaussian packet; the default is the oscillator ground state."""
        x = -L + (2 * L / N) * np.arange(N)
        vals = (math.pi * width**2) ** (-0.25) * np.exp(
            -((x - center) ** 2) / (2 * width**2) + 1j * momentum * x
        )
        return cls(L, vals)


def check_tail(grid: WaveGrid, threshold: float = TAIL_THRESHOLD) -> None:
    """Raise TailLeak when boundary amplitudes are not negligible."""
    edge = max(abs(grid.values[0]), abs(grid.values[-1]))
    if edge > threshold:
        raise TailLeak(f"boundary amplitude {edge:.3e} exceeds {threshold:.1e}")


def _phase_matrix(pref: complex, ph, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return pref * np.exp(
        1j
        * (
            ph.alpha * x[:, None] ** 2
            + ph.beta * x[:, None] * y[None, :]
            + ph.gamma * y[None, :] ** 2
        )
    )


def kernel_matrix(kernel_id, x: np.ndarray, y: np.ndarray, t: float) -> np.ndarray:
    """Dense kernel matrix G(x_i, y_j, t) for a model or standing kernel."""
    if isinstance(kernel_id, Model):
        pref, _ = branch_prefactor(kernel_id, t)
        ph = green_phase(kernel_id, t)
    elif isinstance(kernel_id, StandingKind):
        den, ph = standing_phase(kernel_id, t)
        pref = 1.0 / cmath.sqrt(2 * math.pi * den)
    else:
        raise OscillapropError(f"unknown kernel id {kernel_id!r}")
    return _phase_matrix(pref, ph, x, y)


def _fourier_matrix(x: np.ndarray, sign: int) -> np.ndarray:
    return np.exp(sign * 1j * np.outer(x, x)) / math.sqrt(2 * math.pi)


def _standing_matrix(
    kind: StandingKind, x: np.ndarray, t: float, swap: bool = False
) -> np.ndarray:
    den, ph = standing_phase(kind, t)
    pref = 1.0 / cmath.sqrt(2 * math.pi * den)
    alpha, gamma = (ph.gamma, ph.alpha) if swap else (ph.alpha, ph.gamma)
    swapped = PhaseTriple(t, alpha, ph.beta, gamma)
    return _phase_matrix(pref, swapped, x, x)


def _grid_resolved(ph, L: float, dx: float) -> bool:
    """Whether the quadratic-phase kernel is sampled below Nyquist."""
    bandwidth = (abs(ph.beta) + 2 * max(abs(ph.alpha), abs(ph.gamma))) * L
    return bandwidth * dx <= math.pi


def _model_matrix(model: Model, x: np.ndarray, dx: float, t: float) -> np.ndarray:
    """Forward operator matrix A with psi_out = A psi dx.

    Near a caustic the fundamental kernel oscillates faster than the grid
    can sample, so the operator is assembled instead from its resolved
    factorization through the Fourier transform and a standing-wave kernel
    (M1 = K F^{-1}, M3 = L F; M2 and M4 are the transposes).
    """
    if model.tag in (ModelTag.M1, ModelTag.M2, ModelTag.M3, ModelTag.M4):
        ph = green_phase(model, t)
        L = -float(x[0])
        if not _grid_resolved(ph, L, dx):
            tag = model.tag
            if tag is ModelTag.M1:
                return _standing_matrix(StandingKind.PLUS, x, t) @ _fourier_matrix(x, -1) * dx
            if tag is ModelTag.M2:
                return _fourier_matrix(x, -1) @ _standing_matrix(StandingKind.PLUS, x, t, swap=True) * dx
            if tag is ModelTag.M3:
                return _standing_matrix(StandingKind.MINUS, x, t) @ _fourier_matrix(x, 1) * dx
            return _fourier_matrix(x, 1) @ _standing_matrix(StandingKind.MINUS, x, t, swap=True) * dx
    return kernel_matrix(model, x, x, t)


def _operator_matrix(kernel_id, x: np.ndarray, dx: float, t: float) -> np.ndarray:
    if isinstance(kernel_id, Model):
        return _model_matrix(kernel_id, x, dx, t)
    if isinstance(kernel_id, StandingKind):
        return kernel_matrix(kernel_id, x, x, t)
    raise OscillapropError(f"unknown kernel id {kernel_id!r}")


def apply_kernel(kernel_id, grid: WaveGrid, t: float) -> WaveGrid:
    """psi(x, t) = integral of G(x, y, t) psi(y) dy by quadrature."""
    check_tail(grid)
    mat = _operator_matrix(kernel_id, grid.x, grid.dx, t)
    return grid.with_values(mat @ grid.values * grid.dx)


def apply_inverse(kernel_id, grid: WaveGrid, t: float) -> WaveGrid:
    """Inverse evolution: integrate against G(y, x, -t).

    The backward kernel is the forward kernel at -t with its arguments
    swapped, i.e. the transpose of the forward operator matrix at -t, so
    composing with apply_kernel returns the initial data up to quadrature
    error.
    """
    check_tail(grid)
    mat = _operator_matrix(kernel_id, grid.x, grid.dx, -t)
    return grid.with_values(mat.T @ grid.values * grid.dx)


def fourier(grid: WaveGrid, sign: int = 1) -> WaveGrid:
    """Unitary Fourier transform (2 pi)^(-1/2) int e^{sign i x y} psi(y) dy.

    Implemented as direct quadrature on the same spatial grid rather than an
    FFT so that operator compositions need no resampling; for
    Gaussian-enveloped data the trapezoid sum is spectrally accurate.
    """
    check_tail(grid)
    if sign not in (1, -1):
        raise OscillapropError("sign must be +1 or -1")
    x = grid.x
    mat = np.exp(sign * 1j * np.outer(x, x)) / math.sqrt(2 * math.pi)
    return grid.with_values(mat @ grid.values * grid.dx)


# ---------------------------------------------------------------------------
# finite-difference stencils (fourth order)


def derivative(values: np.ndarray, dx: float, order: int = 1) -> np.ndarray:
    """Fourth-order central differences with zero padding at the edges."""
    padded = np.concatenate([np.zeros(2, dtype=complex), values, np.zeros(2, dtype=complex)])
    if order == 1:
        out = (
            padded[:-4] - 8 * padded[1:-3] + 8 * padded[3:-1] - padded[4:]
        ) / (12 * dx)
    elif order == 2:
        out = (
            -padded[:-4]
            + 16 * padded[1:-3]
            - 30 * padded[2:-2]
            + 16 * padded[3:-1]
            - padded[4:]
        ) / (12 * dx**2)
    else:
        raise OscillapropError("only first and second derivatives are provided")
    return out


def hamiltonian_apply(model: Model, grid: WaveGrid, t: float) -> WaveGrid:
    """H psi = -a psi_xx + b x^2 psi - i c x psi_x - i d psi on the grid."""
    a, b, c, d = coefficients(model, t)
    x = grid.x
    psi = grid.values
    out = (
        -a * derivative(psi, grid.dx, 2)
        + b * x**2 * psi
        - 1j * c * x * derivative(psi, grid.dx, 1)
        - 1j * d * psi
    )
    return grid.with_values(out)


def annihilation(grid: WaveGrid) -> WaveGrid:
    """(d/dx + x)/(i sqrt(2)) on the grid."""
    out = (derivative(grid.values, grid.dx, 1) + grid.x * grid.values) / (1j * math.sqrt(2))
    return grid.with_values(out)


def creation(grid: WaveGrid) -> WaveGrid:
    """(d/dx - x)/(i sqrt(2)) on the grid."""
    out = (derivative(grid.values, grid.dx, 1) - grid.x * grid.values) / (1j * math.sqrt(2))
    return grid.with_values(out)


def ladder_apply(model: Model, grid: WaveGrid, t: float) -> WaveGrid:
    """The Hamiltonian assembled from ladder operators.

    H = (a+b)/2 (AA* + A*A) + (a-b+2id)/2 A^2 + (a-b-2id)/2 (A*)^2, which
    agrees with hamiltonian_apply up to the stencil commutation error.
    """
    a, b, _, d = coefficients(model, t)
    sym = annihilation(creation(grid)).values + creation(annihilation(grid)).values
    down2 = annihilation(annihilation(grid)).values
    up2 = creation(creation(grid)).values
    out = (
        0.5 * (a + b) * sym
        + 0.5 * (a - b + 2j * d) * down2
        + 0.5 * (a - b - 2j * d) * up2
    )
    return grid.with_values(out)


def schrodinger_residual(
    model: Model,
    field,
    x: float,
    t: float,
    hx: float = 1e-3,
    ht: float = 1e-3,
) -> complex:
    """Pointwise residual i psi_t - H psi of a closed-form field psi(x, t).

    Uses fourth-order centered stencils in both variables; `field` is any
    callable returning the complex wave amplitude.
    """
    a, b, c, d = coefficients(model, t)
    f = field

    def stencil1(g, h):
        return (g(-2 * h) - 8 * g(-h) + 8 * g(h) - g(2 * h)) / (12 * h)

    def stencil2(g, h):
        return (-g(-2 * h) + 16 * g(-h) - 30 * g(0) + 16 * g(h) - g(2 * h)) / (12 * h**2)

    psi = f(x, t)
    psi_t = stencil1(lambda e: f(x, t + e), ht)
    psi_x = stencil1(lambda e: f(x + e, t), hx)
    psi_xx = stencil2(lambda e: f(x + e, t), hx)
    return 1j * psi_t + a * psi_xx - b * x**2 * psi + 1j * (c * x * psi_x + d * psi)


def relative_schrodinger_residual(model, field, x, t, hx=1e-3, ht=1e-3) -> float:
    """Residual scaled by the largest term entering the equation."""
    a, b, c, d = coefficients(model, t)
    f = field
    res = schrodinger_residual(model, f, x, t, hx=hx, ht=ht)
    psi = f(x, t)
    psi_x = (f(x - 2 * hx, t) - 8 * f(x - hx, t) + 8 * f(x + hx, t) - f(x + 2 * hx, t)) / (
        12 * hx
    )
    psi_xx = (
        -f(x - 2 * hx, t)
        + 16 * f(x - hx, t)
        - 30 * psi
        + 16 * f(x + hx, t)
        - f(x + 2 * hx, t)
    ) / (12 * hx**2)
    scale = max(
        abs(a * psi_xx), abs(b * x**2 * psi), abs(c * x * psi_x), abs(d * psi), abs(psi), 1e-30
    )
    return abs(res) / scale


def kernel_residual(
    model: Model, x: float, y: float, t: float, ht: float = 1e-5
) -> float:
    """Relative PDE residual of the closed-form Gaussian kernel.

    The kernel is pref(t) exp(i(alpha x^2 + beta x y + gamma y^2)), so the
    spatial derivatives are exact in terms of the phase triple and only the
    time derivatives of the smooth coefficient functions need stencils.
    Differencing the coefficients instead of the oscillatory field keeps the
    roundoff floor far below the phase magnitude even close to a caustic,
    where direct field stencils lose half their digits.
    """
    from .characteristic import eval_mu

    a, b, c, d = coefficients(model, t)
    ph = green_phase(model, t)
    mu_t = eval_mu(model, t)

    def coeffs(tt):
        p = green_phase(model, tt)
        return np.array([p.alpha, p.beta, p.gamma])

    dot = (
        coeffs(t - 2 * ht)
        - 8 * coeffs(t - ht)
        + 8 * coeffs(t + ht)
        - coeffs(t + 2 * ht)
    ) / (12 * ht)
    alpha_dot, beta_dot, gamma_dot = dot
    # i d/dt log psi: amplitude rate -mu'/(2 mu) plus the phase rates
    lhs = 1j * (-mu_t.mu_prime / (2 * mu_t.mu)) - (
        alpha_dot * x**2 + beta_dot * x * y + gamma_dot * y**2
    )
    phase_x = 2 * ph.alpha * x + ph.beta * y
    # H psi / psi for the Gaussian form (psi_x / psi = i phase_x)
    rhs = -a * (2j * ph.alpha - phase_x**2) + b * x**2 + c * x * phase_x - 1j * d
    scale = max(
        abs(a * (2j * ph.alpha - phase_x**2)),
        abs(b * x**2),
        abs(c * x * phase_x),
        abs(d),
        1.0,
    )
    return abs(lhs - rhs) / scale


# ---------------------------------------------------------------------------
# operator diagram

_U_MODEL = Model(ModelTag.M1)
_V_MODEL = Model(ModelTag.M3)

DIAGRAM_IDENTITIES = (
    "U=K.Finv",
    "U=F.L",
    "U=F.V.Finv",
    "V=L.F",
    "V=Finv.K",
    "V=Finv.U.F",
    "K=F.L.F",
    "L=Finv.K.Finv",
    "Uinv=F.Vinv.Finv",
    "Vinv=Finv.Uinv.F",
)


def diagram_check(identity: str, grid: WaveGrid, t: float) -> float:
    """Relative L2 deviation of one commutative-diagram identity.

    U and V are the forward propagators of the two dual oscillating models,
    K and L the corresponding standing-wave operators, F the Fourier
    transform.  The identity names use '.' for composition.
    """
    U = lambda g: apply_kernel(_U_MODEL, g, t)
    V = lambda g: apply_kernel(_V_MODEL, g, t)
    K = lambda g: apply_kernel(StandingKind.PLUS, g, t)
    Lop = lambda g: apply_kernel(StandingKind.MINUS, g, t)
    Uinv = lambda g: apply_inverse(_U_MODEL, g, t)
    Vinv = lambda g: apply_inverse(_V_MODEL, g, t)
    F = lambda g: fourier(g, 1)
    Finv = lambda g: fourier(g, -1)
    table = {
        "U=K.Finv": (U, (K, Finv)),
        "U=F.L": (U, (F, Lop)),
        "U=F.V.Finv": (U, (F, V, Finv)),
        "V=L.F": (V, (Lop, F)),
        "V=Finv.K": (V, (Finv, K)),
        "V=Finv.U.F": (V, (Finv, U, F)),
        "K=F.L.F": (K, (F, Lop, F)),
        "L=Finv.K.Finv": (Lop, (Finv, K, Finv)),
        "Uinv=F.Vinv.Finv": (Uinv, (F, Vinv, Finv)),
        "Vinv=Finv.Uinv.F": (Vinv, (Finv, Uinv, F)),
    }
    if identity not in table:
        raise OscillapropError(f"unknown identity {identity!r}")
    lhs_op, chain = table[identity]
    lhs = lhs_op(grid)
    rhs = grid
    for op in reversed(chain):
        rhs = op(rhs)
    ref = max(lhs.norm(), 1e-30)
    return grid.with_values(lhs.values - rhs.values).norm() / ref


def semigroup_deviation(model: Model, grid: WaveGrid, t: float, s: float) -> float:
    """|U(t+s) psi - U(t) U(s) psi| / |psi|.

    The oscillating models are driven by time-dependent Hamiltonians, so
    their propagators do not form one-parameter semigroups; the returned
    deviation is a diagnostic, not an error.
    """
    lhs = apply_kernel(model, grid, t + s)
    rhs = apply_kernel(model, apply_kernel(model, grid, s), t)
    return grid.with_values(lhs.values - rhs.values).norm() / max(grid.norm(), 1e-30)


# ---------------------------------------------------------------------------
# Crank-Nicolson oracle


def _hamiltonian_diagonals(model: Model, x: np.ndarray, dx: float, t: float) -> dict:
    """Diagonals {offset k: A[i, i+k] as array over i} of the banded H."""
    n = len(x)
    a, b, c, d = coefficients(model, t)
    s2 = np.array([-1, 16, -30, 16, -1]) / (12 * dx**2)  # offsets -2..2
    s1 = np.array([1, -8, 0, 8, -1]) / (12 * dx)
    cx = -1j * c * x
    diags = {}
    for k in (-2, -1, 0, 1, 2):
        core = (-a * s2[k + 2] + cx * s1[k + 2]) * np.ones(n, dtype=complex)
        if k == 0:
            core += b * x**2 - 1j * d
        diags[k] = core
    return diags


def _diag_matvec(diags: dict, v: np.ndarray) -> np.ndarray:
    n = len(v)
    out = np.zeros(n, dtype=complex)
    for k, core in diags.items():
        if k >= 0:
            out[: n - k] += core[: n - k] * v[k:] if k else core * v
        else:
            out[-k:] += core[-k:] * v[: n + k]
    return out


def _to_banded(diags: dict, n: int) -> np.ndarray:
    ab = np.zeros((5, n), dtype=complex)
    for k, core in diags.items():
        if k >= 0:
            ab[2 - k, k:] = core[: n - k] if k else core
        else:
            ab[2 - k, : n + k] = core[-k:]
    return ab


def crank_nicolson_oracle(
    model: Model, grid: WaveGrid, t: float, steps: int = 400
) -> WaveGrid:
    """Propagate by the Crank-Nicolson scheme (independent of the kernels)."""
    check_tail(grid)
    x = grid.x
    n = grid.N
    dt = t / steps
    psi = grid.values.copy()
    for k in range(steps):
        tm = (k + 0.5) * dt
        diags = _hamiltonian_diagonals(model, x, grid.dx, tm)
        rhs = psi - 0.5j * dt * _diag_matvec(diags, psi)
        scaled = {off: 0.5j * dt * core for off, core in diags.items()}
        ab = _to_banded(scaled, n)
        ab[2] += 1.0
        psi = solve_banded((2, 2), ab, rhs)
    return grid.with_values(psi)


# ---------------------------------------------------------------------------
# oscillatory Gaussian quadrature self-test


def oscillatory_gaussian_integral(
    a: float,
    b: float,
    damping: float = 0.0,
    half_width: float = 60.0,
    n: int = 262144,
) -> complex:
    """Trapezoid value of int exp(i((a + i*damping) z^2 + 2 b z)) dz."""
    z = np.linspace(-half_width, half_width, n)
    vals = np.exp(1j * (a + 1j * damping) * z**2 + 2j * b * z)
    dz = z[1] - z[0]
    return complex((np.sum(vals) - 0.5 * (vals[0] + vals[-1])) * dz)


def gaussian_integral_reference(a: complex, b: float) -> complex:
    """Closed form sqrt(pi i / a) exp(-i b^2 / a) of the Fresnel integral."""
    return cmath.sqrt(math.pi * 1j / a) * cmath.exp(-1j * b**2 / a)


def extrapolated_gaussian_integral(a: float, b: float) -> complex:
    """Damped quadrature extrapolated to zero damping (Richardson in delta)."""
    deltas = np.array([0.16, 0.08, 0.04, 0.02, 0.01])
    vals = np.array(
        [
            oscillatory_gaussian_integral(
                a, b, damping=d, half_width=math.sqrt(34.0 / d)
            )
            for d in deltas
        ]
    )
    # polynomial extrapolation delta -> 0
    coef_re = np.polyfit(deltas, vals.real, len(deltas) - 1)
    coef_im = np.polyfit(deltas, vals.imag, len(deltas) - 1)
    return complex(np.polyval(coef_re, 0.0), np.polyval(coef_im, 0.0))
