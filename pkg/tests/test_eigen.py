"""Oscillator eigenfunctions, representation matrices and expansions."""

import math

import numpy as np
import pytest

from oscillaprop.eigen import (
    PARITY_J,
    bargmann_v,
    evolve_by_expansion,
    expanded_green,
    expansion_coefficients,
    fourier_eigen_phase,
    hankel_radial_check,
    hermite_wavefunction,
    legendre_sum_check,
    radial_wavefunction,
    s_minus1,
    v_matrix,
)
from oscillaprop.errors import InvalidQuantumNumbers, OscillapropError
from oscillaprop.evolution import WaveGrid, apply_kernel
from oscillaprop.kernels import green_kernel, ndim_green
from oscillaprop.models import M1, M2


def test_hermite_orthonormality():
    x = np.linspace(-12, 12, 4001)
    dx = x[1] - x[0]
    states = [hermite_wavefunction(n, x) for n in range(21)]
    for a in range(0, 21, 5):
        for b in range(0, 21, 5):
            ip = float(np.sum(states[a] * states[b]) * dx)
            assert ip == pytest.approx(1.0 if a == b else 0.0, abs=1e-8)
    assert hermite_wavefunction(0, np.array([0.0]))[0] == pytest.approx(
        math.pi ** -0.25
    )
    assert hermite_wavefunction(1, np.array([0.0]))[0] == pytest.approx(0.0)
    with pytest.raises(InvalidQuantumNumbers):
        hermite_wavefunction(-1, x)


def test_radial_normalization_and_orthogonality():
    r = np.linspace(0, 20, 4001)
    for N, K, n in ((0, 0, 1), (2, 0, 3), (3, 1, 3), (4, 0, 3)):
        R = radial_wavefunction(N, K, n, r)
        norm = float(np.trapezoid(R**2 * r ** (n - 1), r))
        assert norm == pytest.approx(1.0, abs=1e-8), (N, K, n)
    R0 = radial_wavefunction(0, 0, 3, r)
    R2 = radial_wavefunction(2, 0, 3, r)
    assert float(np.trapezoid(R0 * R2 * r**2, r)) == pytest.approx(0.0, abs=1e-8)
    with pytest.raises(InvalidQuantumNumbers):
        radial_wavefunction(1, 0, 3, r)  # N - K odd


def test_bargmann_ground_entry():
    # m = m' = j+1: the terminating series is 1 and the closed form collapses
    for j in (-0.75, -0.25, 0.5):
        for mu in (0.4, 0.8, 1.5):
            want = math.cosh(mu / 2) ** (-2 * j - 2)
            assert bargmann_v(j, j + 1, j + 1, mu) == pytest.approx(want, abs=1e-12)
    with pytest.raises(InvalidQuantumNumbers):
        bargmann_v(-0.75, 0.5, 0.25, 0.8)  # m - j - 1 not an integer
    with pytest.raises(InvalidQuantumNumbers):
        bargmann_v(-0.75, 0.25, 0.25, -0.3)


def test_bargmann_truncated_unitarity():
    for j in PARITY_J:
        for mu in (0.4, 1.0):
            vm = v_matrix(j, mu, 60)
            gram = vm @ vm.T - np.eye(60)
            assert np.max(np.abs(gram[:6, :6])) < 1e-6


def test_v_matrix_group_properties():
    vm0 = v_matrix(-0.75, 0.0, 10)
    assert np.allclose(vm0, np.eye(10))
    vneg = v_matrix(-0.75, -0.7, 20)
    vpos = v_matrix(-0.75, 0.7, 20)
    assert np.allclose(vneg, vpos.T)


def test_expansion_coefficients_ground_state():
    g = WaveGrid.gaussian()
    c = expansion_coefficients(g, -0.75, 0.0, cutoff=20)
    assert abs(c[0] - 1.0) < 1e-8
    assert np.max(np.abs(c[1:])) < 1e-8
    c_t = expansion_coefficients(g, -0.75, 0.3, cutoff=40)
    assert float(np.sum(np.abs(c_t) ** 2)) == pytest.approx(1.0, abs=1e-5)
    with pytest.raises(InvalidQuantumNumbers):
        expansion_coefficients(g, -0.5, 0.3)


def test_expansion_evolution_matches_kernel():
    g = WaveGrid.gaussian(center=0.4, momentum=0.3)
    direct = apply_kernel(M1, g, 0.5)
    exp = evolve_by_expansion(g, 0.5, cutoff=40)
    assert g.with_values(direct.values - exp.values).norm() < 1e-8


def test_dual_expansion_matches_dual_kernel():
    g = WaveGrid.gaussian(center=0.4, momentum=0.3)
    direct = apply_kernel(M2, g, 0.5)
    exp = evolve_by_expansion(g, 0.5, cutoff=40, dual=True)
    assert g.with_values(direct.values - exp.values).norm() < 1e-8


def test_expanded_green_at_reference_point():
    got = expanded_green(0.5, 0.3, 0.3, cutoff=40)
    want = green_kernel(M1, 0.5, 0.3, 0.3).value
    assert abs(got - want) < 1e-3


def test_expanded_green_partial_sum_is_much_worse():
    # the raw square partial sum of the conditionally convergent series
    # plateaus near 4e-2; the regularized evaluation is the default
    got = expanded_green(0.5, 0.3, 0.3, cutoff=40, method="partial")
    want = green_kernel(M1, 0.5, 0.3, 0.3).value
    assert 1e-3 < abs(got - want) < 0.1
    with pytest.raises(OscillapropError):
        expanded_green(0.5, 0.3, 0.3, method="bogus")


def test_expanded_green_time_reversal_symmetry():
    # G_t(x, y) = conj(G_{-t}(x, y)) within the evaluation accuracy
    fwd = expanded_green(0.4, 0.2, 0.35, cutoff=40)
    bwd = expanded_green(0.4, 0.2, -0.35, cutoff=40)
    assert abs(fwd - bwd.conjugate()) < 2e-3


def test_expanded_green_improves_with_cutoff():
    want = green_kernel(M1, 0.5, 0.3, 0.8).value
    err40 = abs(expanded_green(0.5, 0.3, 0.8, cutoff=40) - want)
    err60 = abs(expanded_green(0.5, 0.3, 0.8, cutoff=60) - want)
    assert err60 < err40


def test_fourier_eigen_phases():
    for nu in range(11):
        assert abs(fourier_eigen_phase(nu) - 1j**nu) < 1e-6


def test_s_minus1_methods_agree():
    r = np.linspace(0.2, 3.0, 8)
    rp = 1.3
    for K, n in ((0, 3), (2, 3), (1, 2)):
        bessel = s_minus1(K, n, r, rp, method="bessel")
        series = s_minus1(K, n, r, rp, method="series")
        assert np.max(np.abs(bessel - series)) < 1e-10
    with pytest.raises(OscillapropError):
        s_minus1(0, 3, r, rp, method="bogus")


def test_hankel_radial_identities():
    for N in range(0, 5):
        for K in range(N % 2, N + 1, 2):
            assert hankel_radial_check(N, K, 3) < 1e-5, (N, K)


def test_legendre_sum_matches_product_kernel():
    xs = np.array([0.62, 0.5, 0.6])
    ys = np.array([0.4, 0.42, 0.5])
    assert legendre_sum_check(xs, ys, 0.4) < 1e-4
    # antipodal configuration
    xs2 = np.array([0.0, 0.0, 1.0])
    ys2 = np.array([0.0, 0.0, -0.8])
    assert legendre_sum_check(xs2, ys2, 0.4) < 1e-4
    with pytest.raises(InvalidQuantumNumbers):
        legendre_sum_check(np.array([1.0, 0.0]), np.array([0.0, 1.0]), 0.4)


def test_legendre_small_rp_single_term():
    # as r' -> 0 only the K = 0 partial wave survives
    from oscillaprop.kernels import radial_kernel

    xs = np.array([0.7, 0.1, 0.2])
    ys = 1e-6 * np.array([1.0, 0.0, 0.0])
    r = float(np.linalg.norm(xs))
    direct = ndim_green(M1, xs, ys, 0.4).value
    k0 = radial_kernel(0, 3, r, float(np.linalg.norm(ys)), 0.4) / (4 * math.pi)
    assert abs(k0 - direct) < 1e-6
