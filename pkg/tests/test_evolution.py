"""Grid operators: quadrature evolution, diagrams, oracles, residuals."""

import math

import numpy as np
import pytest

from oscillaprop.errors import OscillapropError, TailLeak
from oscillaprop.evolution import (
    DIAGRAM_IDENTITIES,
    WaveGrid,
    apply_inverse,
    apply_kernel,
    check_tail,
    crank_nicolson_oracle,
    diagram_check,
    extrapolated_gaussian_integral,
    fourier,
    gaussian_integral_reference,
    hamiltonian_apply,
    kernel_residual,
    ladder_apply,
    relative_schrodinger_residual,
    semigroup_deviation,
)
from oscillaprop.kernels import StandingKind, green_kernel
from oscillaprop.models import HARMONIC, M1, M2, M3, M4


@pytest.fixture(scope="module")
def gauss():
    return WaveGrid.gaussian()


def test_grid_validation():
    with pytest.raises(OscillapropError):
        WaveGrid(12.0, np.zeros(100))  # not a power of two
    with pytest.raises(OscillapropError):
        WaveGrid(12.0, np.full(128, np.nan))
    g = WaveGrid.gaussian(N=256)
    assert g.N == 256
    assert g.dx == pytest.approx(2 * g.L / 256)
    assert g.norm() == pytest.approx(1.0, abs=1e-12)


def test_tail_leak():
    g = WaveGrid(12.0, np.ones(128))
    with pytest.raises(TailLeak):
        check_tail(g)
    with pytest.raises(TailLeak):
        apply_kernel(M1, g, 0.3)


def test_fourier_unitarity_and_inversion(gauss):
    fg = fourier(gauss, 1)
    assert fg.norm() == pytest.approx(gauss.norm(), abs=1e-8)
    back = fourier(fg, -1)
    assert gauss.with_values(back.values - gauss.values).norm() < 1e-8
    with pytest.raises(OscillapropError):
        fourier(gauss, 2)


def test_unitarity(gauss):
    for model in (M1, M2, M3, M4):
        out = apply_kernel(model, gauss, 0.5)
        assert abs(out.norm() - gauss.norm()) < 1e-5


def test_round_trips(gauss):
    for model in (M1, M3):
        for t in (0.2, 0.5, 0.8):
            rt = apply_inverse(model, apply_kernel(model, gauss, t), t)
            dev = gauss.with_values(rt.values - gauss.values).norm()
            assert dev < 1e-4, (model, t, dev)


def test_all_diagram_identities(gauss):
    for ident in DIAGRAM_IDENTITIES:
        dev = diagram_check(ident, gauss, 0.4)
        assert dev < 1e-4, (ident, dev)
    with pytest.raises(OscillapropError):
        diagram_check("U=V", gauss, 0.4)


def test_time_reversal(gauss):
    # conjugation, dual evolution, conjugation equals the inverse evolution
    fwd = apply_kernel(M1, gauss, 0.5)
    conj = fwd.with_values(np.conj(fwd.values))
    dual = apply_kernel(M2, conj, 0.5)
    back = dual.with_values(np.conj(dual.values))
    dev = gauss.with_values(back.values - gauss.values).norm()
    assert dev < 1e-4


def test_momentum_representation(gauss):
    # conjugating the M1 propagator by the Fourier transform gives the dual
    # coefficient set (a <-> b, d -> -d), which is the M3 evolution
    lhs = fourier(apply_kernel(M1, fourier(gauss, 1), 0.4), -1)
    rhs = apply_kernel(M3, gauss, 0.4)
    dev = gauss.with_values(lhs.values - rhs.values).norm()
    assert dev < 1e-4


def test_kernel_residuals_all_models():
    rng = np.random.default_rng(7)
    for model in (M1, M2, M3, M4):
        worst = 0.0
        for _ in range(50):
            x, y = rng.uniform(-2, 2, size=2)
            t = rng.uniform(0.05, 1.2)
            worst = max(worst, kernel_residual(model, x, y, t))
        assert worst < 1e-6, (model, worst)


def test_field_residual_on_harmonic_kernel():
    field = lambda x, t: green_kernel(HARMONIC, x, 0.3, t).value
    for x in (-0.8, 0.2, 1.1):
        assert relative_schrodinger_residual(HARMONIC, field, x, 0.6) < 1e-6


def test_ladder_form_matches_xp_form(gauss):
    for model in (M1, M2, HARMONIC):
        direct = hamiltonian_apply(model, gauss, 0.4)
        ladder = ladder_apply(model, gauss, 0.4)
        dev = gauss.with_values(direct.values - ladder.values).norm()
        assert dev < 1e-6, (model, dev)


def test_ladder_fourier_intertwining(gauss):
    # F A = (i A) F for the annihilation operator
    from oscillaprop.evolution import annihilation

    lhs = fourier(annihilation(gauss), 1)
    rhs = annihilation(fourier(gauss, 1))
    dev = gauss.with_values(lhs.values - 1j * rhs.values).norm()
    assert dev < 1e-6


def test_crank_nicolson_matches_kernel(gauss):
    cn = crank_nicolson_oracle(M1, gauss, 0.4, steps=400)
    kr = apply_kernel(M1, gauss, 0.4)
    dev = gauss.with_values(cn.values - kr.values).norm()
    assert dev < 1e-4


def test_crank_nicolson_harmonic_phase(gauss):
    # the ground state only picks up the phase e^{-it/2}
    cn = crank_nicolson_oracle(HARMONIC, gauss, 0.5, steps=400)
    want = np.exp(-0.25j) * gauss.values
    dev = gauss.with_values(cn.values - want).norm()
    assert dev < 1e-5


def test_semigroup_deviation_is_large(gauss):
    # driven Hamiltonians: U(s) U(t-s) differs from U(t) well above noise
    dev = semigroup_deviation(M1, gauss, 0.3, 0.3)
    assert dev > 1e-4


def test_oscillatory_gaussian_quadrature():
    for a, b in ((1.0, 0.5), (2.5, -1.2)):
        got = extrapolated_gaussian_integral(a, b)
        want = gaussian_integral_reference(a, b)
        assert abs(got - want) < 1e-6
