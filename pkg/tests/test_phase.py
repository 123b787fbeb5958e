"""Quadratic phases, nonlinear phases and the regularized delta families."""

import math

import pytest

from oscillaprop.characteristic import eval_mu
from oscillaprop.errors import DivergentPhase, InvalidSpan, SingularTime
from oscillaprop.models import FREE, HARMONIC, M1, M2, M3, M4, damped
from oscillaprop.phase import (
    Span,
    check_duality_criterion,
    general_phase,
    green_phase,
    kappa_closed,
    kappa_quadrature,
    regularized_kappa,
    regularized_mu,
    regularized_phase,
    span_mu,
    span_mu0,
)

SPANS = {M1: Span(1, 0), M2: Span(0, -1), M3: Span(-1, 0), M4: Span(1, 0)}
TS = [0.15, 0.4, 0.75, 1.1]


def test_green_phase_frozen():
    ph = green_phase(M1, 0.5)
    assert ph.alpha == pytest.approx(0.3706513694652236, abs=1e-14)
    assert ph.beta == pytest.approx(-1.0020875097216508, abs=1e-14)
    assert ph.gamma == pytest.approx(0.6209992819991923, abs=1e-14)


def test_green_phase_duality_swap():
    # the dual model's phases are the same triple with alpha and gamma swapped
    for a, b in ((M1, M2), (M3, M4)):
        for t in TS:
            pa, pb = green_phase(a, t), green_phase(b, t)
            assert pa.alpha == pb.gamma
            assert pa.gamma == pb.alpha
            assert pa.beta == pb.beta


def test_free_and_harmonic_phases():
    ph = green_phase(FREE, 0.7)
    assert ph.alpha == pytest.approx(1 / 1.4)
    assert ph.beta == pytest.approx(-1 / 0.7)
    ph = green_phase(HARMONIC, 0.7)
    assert ph.alpha == pytest.approx(math.cos(0.7) / (2 * math.sin(0.7)))
    assert ph.beta == pytest.approx(-1 / math.sin(0.7))
    assert ph.gamma == ph.alpha


def test_damped_phase_reduces_to_harmonic():
    # lam -> 0, omega0 = 1 must give the harmonic-oscillator phases
    for t in TS:
        pd = green_phase(damped(1.0, 0.0), t)
        ph = green_phase(HARMONIC, t)
        assert pd.alpha == pytest.approx(ph.alpha, abs=1e-12)
        assert pd.beta == pytest.approx(ph.beta, abs=1e-12)
        assert pd.gamma == pytest.approx(ph.gamma, abs=1e-12)


def test_phase_singular_at_caustic():
    with pytest.raises(SingularTime):
        green_phase(HARMONIC, math.pi)


def test_alpha_satisfies_riccati():
    # alpha' + 4 a alpha^2 + (2c) alpha ... reduces for these models to the
    # derivative relation alpha'(t) = -a beta^2 checked structurally:
    # d(alpha)/dt + a(t) (2 alpha)^2 + b(t) - c(t) * 2 alpha ... spot-check
    # via the kernel residual instead; here assert beta mu = -1 exactly.
    for model in (M1, M2, M3, M4):
        for t in TS:
            ph = green_phase(model, t)
            mu = eval_mu(model, t).mu
            assert ph.beta * mu == pytest.approx(-1.0, abs=1e-12)


def test_duality_criterion():
    for a, b in ((M1, M2), (M2, M1), (M3, M4), (M4, M3)):
        for t in TS + [0.95, 0.55]:
            assert check_duality_criterion(a, b, t) < 1e-10


def test_span_mu_initial_values():
    # the default spans are normalized so mu(0) = 1
    for model, span in SPANS.items():
        assert span_mu0(model, span) == pytest.approx(1.0)
    with pytest.raises(InvalidSpan):
        Span(0.0, 0.0)
    with pytest.raises(InvalidSpan):
        span_mu(FREE, Span(1, 0), 0.5)


def test_general_phase_reduces_to_green_on_the_delta_branch():
    # the span (0, 1) picks the Green-function branch of M1, and the family's
    # alpha coefficient then coincides with the fundamental propagator's
    for t in TS:
        ph = general_phase(M1, Span(0.0, 1.0), t)
        gp = green_phase(M1, t)
        mu, _ = span_mu(M1, Span(0.0, 1.0), t)
        assert mu == pytest.approx(eval_mu(M1, t).mu, abs=1e-12)
        assert ph.alpha == pytest.approx(gp.alpha, abs=1e-12)


KAPPA_FROZEN = {
    (1.0,): -0.6002792679833533,
    (0.5,): -0.7000946138193114,
}


def test_kappa_closed_frozen():
    span = Span(1, 0)
    assert kappa_closed(M1, span, 1.0, 1.0, 1.0) == pytest.approx(
        KAPPA_FROZEN[(1.0,)], abs=1e-14
    )
    assert kappa_closed(M1, span, 0.5, 1.0, 1.0) == pytest.approx(
        KAPPA_FROZEN[(0.5,)], abs=1e-14
    )


def test_kappa_closed_vs_quadrature():
    for model, span in SPANS.items():
        for s in (0.0, 0.5, 1.0):
            for t in (0.4, 0.8):
                closed = kappa_closed(model, span, s, 1.0, t)
                quad = kappa_quadrature(model, span, s, 1.0, t)
                assert closed == pytest.approx(quad, abs=1e-8)


def test_kappa_divergence_guard():
    # s = 1 with mu(0) = 0 diverges logarithmically
    with pytest.raises(DivergentPhase):
        kappa_closed(M1, Span(0.0, 1.0), 1.0, 1.0, 0.5)


def test_regularized_family_at_t0():
    # at t = 0 the phases are the Fresnel delta family of width eps
    eps = 0.05
    for model in (M1, M2, M3, M4):
        ph = regularized_phase(model, eps, 0.0)
        assert ph.alpha == pytest.approx(1 / (2 * eps), abs=1e-9)
        assert abs(ph.beta) == pytest.approx(1 / eps, abs=1e-9)
        assert ph.gamma == pytest.approx(1 / (2 * eps), abs=1e-9)
        assert regularized_mu(model, eps, 0.0) == pytest.approx(
            2 * math.pi * eps, abs=1e-12
        )


def test_regularized_phase_approaches_green():
    for model in (M1, M3):
        gp = green_phase(model, 0.6)
        for eps in (1e-3, 1e-5):
            rp = regularized_phase(model, eps, 0.6)
            assert rp.beta == pytest.approx(gp.beta, abs=50 * eps)
        r5 = regularized_phase(model, 1e-5, 0.6)
        r3 = regularized_phase(model, 1e-3, 0.6)
        assert abs(r5.beta - gp.beta) < abs(r3.beta - gp.beta)


def test_regularized_kappa_log_divergence():
    # s = 1: kappa_eps ~ -(lam / 2 pi) ln(1/eps) + const as eps -> 0
    lam = 2 * math.pi
    k1 = regularized_kappa(M1, 1e-4, 1.0, lam, 0.5)
    k2 = regularized_kappa(M1, 1e-8, 1.0, lam, 0.5)
    assert (k2 - k1) / math.log(1e-4 / 1e-8) == pytest.approx(-1.0, rel=1e-3)


def test_regularized_kappa_preconditions():
    with pytest.raises(DivergentPhase):
        regularized_kappa(M1, -1e-3, 1.0, 1.0, 0.5)
    with pytest.raises(DivergentPhase):
        regularized_kappa(M1, 0.0, 1.0, 1.0, 0.5)
    # eps = 0 is allowed below the critical exponent
    val = regularized_kappa(M1, 0.0, 0.5, 1.0, 0.5)
    assert math.isfinite(val)
