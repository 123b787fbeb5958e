"""Classical phase-space flows and their link to the characteristic ODEs."""

import math

import pytest

from oscillaprop.classical import (
    PhasePoint,
    characteristic_from_hamiltonian,
    classical_solution,
    damped_green_phase,
    hamilton_flow,
)
from oscillaprop.errors import OscillapropError
from oscillaprop.models import FREE, HARMONIC, M1, M2, M3, M4, damped
from oscillaprop.phase import green_phase

TS = [0.25, 0.55, 0.9]


def test_phase_point_validation():
    with pytest.raises(OscillapropError):
        PhasePoint(math.nan, 0.0, 0.0)
    with pytest.raises(OscillapropError):
        hamilton_flow(M1, PhasePoint(1.0, 0.0, 0.0), 0.5, dt=1e-2)


def test_harmonic_flow_quarter_period():
    # (q, p) = (1, 0) rotates to (0, -1) after a quarter period
    end = hamilton_flow(HARMONIC, PhasePoint(1.0, 0.0, 0.0), math.pi / 2)
    assert end.q == pytest.approx(0.0, abs=1e-10)
    assert end.p == pytest.approx(-1.0, abs=1e-10)


def test_free_flow():
    end = hamilton_flow(FREE, PhasePoint(0.5, 1.0, 0.0), 2.0)
    assert end.q == pytest.approx(0.5 + 2.0, abs=1e-12)  # q' = p for a = 1/2
    assert end.p == pytest.approx(1.0, abs=1e-12)


def test_flow_matches_closed_solutions():
    # the q-component of each model's flow solves the classical oscillator
    # equation, so it must match the span of the fundamental Wronskian basis
    cases = {M1: "ahc1", M2: "ahc2", M3: "ahc3", M4: "ahc4"}
    from oscillaprop.characteristic import wronskian_prime, wronskian_value
    from oscillaprop.classical import _EQ_PAIRS
    from oscillaprop.models import coefficients

    # start at an interior time so the diffusion coefficient is nonzero for
    # every model (M3/M4 have a(0) = 0 and cannot encode q'(0) in p there)
    t0 = 0.3
    for model, eq_id in cases.items():
        wa, wb = _EQ_PAIRS[eq_id]
        q0 = wronskian_value(wa, t0) + wronskian_value(wb, t0)
        qp0 = wronskian_prime(wa, t0) + wronskian_prime(wb, t0)
        a0, _, _, d0 = coefficients(model, t0)
        p0 = (qp0 - 2 * d0 * q0) / (2 * a0)
        for t in (0.6, 0.9):
            end = hamilton_flow(model, PhasePoint(q0, p0, t0), t)
            want = classical_solution(eq_id, 1.0, 1.0, t)
            assert end.q == pytest.approx(want, abs=1e-6), (model, t)


def test_classical_solution_frozen():
    assert classical_solution("ahc2", 0.0, 1.0, 0.5) == pytest.approx(
        -0.7397584858994584, abs=1e-14
    )
    with pytest.raises(OscillapropError):
        classical_solution("ahc9", 1.0, 0.0, 0.5)


def test_characteristic_from_hamiltonian():
    for model in (M1, M2, M3, M4, HARMONIC, damped(2.0, 0.5)):
        for t in TS:
            assert abs(characteristic_from_hamiltonian(model, t)) < 1e-10, model


def test_damped_phase_family():
    # lam = 0 reduces to the harmonic propagator phases
    for t in TS:
        pd = damped_green_phase(1.0, 0.0, t)
        ph = green_phase(HARMONIC, t)
        assert pd.alpha == pytest.approx(ph.alpha, abs=1e-12)
        assert pd.beta == pytest.approx(ph.beta, abs=1e-12)
    # with damping the phases stay finite below the first caustic and the
    # off-diagonal coefficient carries the e^{lam t} weighting
    p = damped_green_phase(2.0, 0.5, 0.4)
    w = math.sqrt(4 - 0.25)
    assert p.beta == pytest.approx(
        -w * math.exp(0.2) / (2.0 * math.sin(w * 0.4)), abs=1e-12
    )


def test_damped_kernel_residual():
    # the damped propagator satisfies its evolution equation
    from oscillaprop.evolution import kernel_residual

    m = damped(2.0, 0.5)
    for t in TS:
        for x in (-0.8, 0.3, 1.0):
            assert kernel_residual(m, x, 0.2, t) < 1e-6, (t, x)
