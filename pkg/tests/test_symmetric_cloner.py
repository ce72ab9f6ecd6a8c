import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import dblquad

from gaussclone import symmetric_cloner as sc
from gaussclone.errors import DomainError, UnsupportedStateError
from gaussclone.ensembles import GaussianEnsemble
from gaussclone.phase_space import CoherentAmplitude
from gaussclone.single_quad_cloner import duan_value

JUNCTION_SIGMA = math.sqrt(0.5 + 1 / math.sqrt(2))


def brute_force_fbar(G, sigma):
    """Direct 2-D integration of fidelity x prior, no closed form involved."""
    V = G
    g = math.sqrt(G / 2)

    def integrand(y, x):
        f = 2 / (1 + V) * math.exp(-2 * (1 - g) ** 2 * (x * x + y * y) / (1 + V))
        p = math.exp(-(x * x + y * y) / (2 * sigma**2)) / (2 * math.pi * sigma**2)
        return f * p

    L = 10 * sigma
    return dblquad(integrand, -L, L, -L, L, epsabs=1e-13, epsrel=1e-12)[0]


def test_config_validation():
    with pytest.raises(DomainError):
        sc.ClonerConfig(0.99)


@pytest.mark.parametrize("alpha", [(0, 0), (1, 0), (2.5, -1.5)])
def test_unity_gain_clone(alpha):
    r = sc.clone(CoherentAmplitude(*alpha), sc.ClonerConfig(2.0))
    assert r.g == pytest.approx(1.0, abs=1e-14)
    assert (r.v_plus, r.v_minus) == pytest.approx((2.0, 2.0), abs=1e-13)
    assert r.fidelity == pytest.approx(2 / 3, abs=1e-12)


def test_vacuum_at_unit_gain():
    assert sc.clone(CoherentAmplitude(), sc.ClonerConfig(1.0)).fidelity == pytest.approx(1.0, abs=1e-15)


def test_alpha_one_unit_gain():
    r = sc.clone(CoherentAmplitude(1, 0), sc.ClonerConfig(1.0))
    assert r.fidelity == pytest.approx(0.917790, abs=1e-6)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(1, 6))
@settings(max_examples=200, deadline=None)
def test_circuit_matches_formulas(ax, ay, G):
    r0 = sc.clone(CoherentAmplitude(ax, ay), sc.ClonerConfig(G), arm=0)
    r1 = sc.clone(CoherentAmplitude(ax, ay), sc.ClonerConfig(G), arm=1)
    g = math.sqrt(G / 2)
    for r in (r0, r1):
        assert r.clone_mean == pytest.approx((2 * g * ax, 2 * g * ay), abs=1e-12)
        assert r.v_plus == pytest.approx(G, abs=1e-12)
        assert r.v_minus == pytest.approx(G, abs=1e-12)
    assert r0.fidelity == pytest.approx(r1.fidelity, abs=1e-14)


@pytest.mark.parametrize("G, sigma", [(1.0, 0.5), (1.5, 1.0), (2.0, 2.0), (1.28, math.sqrt(2)), (3.0, 0.7)])
def test_closed_form_against_brute_force(G, sigma):
    assert sc.average_fidelity(sc.ClonerConfig(G), sigma).value == pytest.approx(
        brute_force_fbar(G, sigma), abs=1e-9
    )


@pytest.mark.parametrize("sigma", [0.1, 1.0, 10.0, 0.0])
def test_unity_gain_average(sigma):
    assert sc.average_fidelity(sc.ClonerConfig(2.0), sigma).value == pytest.approx(2 / 3, abs=1e-12)


def test_junction_value():
    v = sc.average_fidelity(sc.ClonerConfig(1.0), JUNCTION_SIGMA, "quadrature").value
    assert v == pytest.approx(2 * (math.sqrt(2) - 1), abs=1e-9)
    assert v == pytest.approx(0.828427, abs=1e-6)


def test_sigma_zero_unit_gain():
    r = sc.average_fidelity(sc.ClonerConfig(1.0), 0.0, "quadrature")
    assert r.value == 1.0


def test_asymmetric_ensemble_rejected():
    with pytest.raises(UnsupportedStateError):
        sc.average_fidelity(sc.ClonerConfig(1.5), GaussianEnsemble(1, 2))


def test_optimal_gain_limits():
    assert sc.optimal_gain(1e6) == pytest.approx(2.0, abs=1e-5)
    assert sc.optimal_gain(JUNCTION_SIGMA) == pytest.approx(1.0, abs=1e-15)
    assert sc.optimal_gain(0.5) == 1.0
    assert sc.optimal_gain(math.sqrt(2)) == pytest.approx(1.28, abs=1e-14)


def test_optimal_gain_numeric_sigma_sqrt2():
    r = sc.numeric_optimal_gain(math.sqrt(2))
    assert r.argmax == pytest.approx(1.28, abs=1e-6)


def test_optimal_gain_sigma3():
    r = sc.numeric_optimal_gain(3.0, method="closed")
    assert r.argmax == pytest.approx(648 / 361, abs=1e-8)


def test_max_average_fidelity_values():
    assert sc.max_average_fidelity(10.0) == pytest.approx(402 / 601, abs=1e-14)
    assert sc.max_average_fidelity(0.0) == 1.0
    s = JUNCTION_SIGMA**2
    upper = (4 * s + 2) / (6 * s + 1)
    lower = 1 / ((3 - 2 * math.sqrt(2)) * s + 1)
    assert upper == pytest.approx(lower, abs=1e-12)
    assert upper == pytest.approx(0.828427, abs=1e-6)


def test_max_average_fidelity_brute_force_sigma10():
    r = sc.numeric_optimal_gain(10.0, method="quadrature")
    assert r.value == pytest.approx(402 / 601, abs=1e-9)


@pytest.mark.parametrize("sigma", np.linspace(0.0, 10.0, 50))
def test_optimality_consistency(sigma):
    r = sc.numeric_optimal_gain(sigma, method="closed", bracket=(1.0, 6.0))
    assert r.argmax == pytest.approx(sc.optimal_gain(sigma), abs=1e-6)
    assert r.value == pytest.approx(sc.max_average_fidelity(sigma), abs=1e-6)
    assert sc.average_fidelity(sc.ClonerConfig(sc.optimal_gain(sigma)), sigma).value == pytest.approx(
        sc.max_average_fidelity(sigma), abs=1e-14
    )


def test_monotone_and_bounded():
    sig = np.linspace(1e-3, 50, 4000)
    f = sc.max_average_fidelity(sig)
    assert np.all(np.diff(f) < 0)
    assert np.all((f >= 2 / 3) & (f <= 1))


def test_optimal_gain_continuous():
    sig = np.linspace(0, 10, 20001)
    G = sc.optimal_gain(sig)
    assert np.max(np.abs(np.diff(G))) < 1e-3


@pytest.mark.parametrize("G", [1.0, 1.28, 2.0, 4.0, 17.3])
def test_snr_transfer_half(G):
    assert sc.snr_transfer(sc.ClonerConfig(G)) == pytest.approx(0.5, abs=1e-12)
    assert sc.clone(CoherentAmplitude(0.3, 0.1), sc.ClonerConfig(G)).snr_transfer == pytest.approx(0.5, abs=1e-12)


def test_symmetric_clones_not_entangled():
    cov = sc.clone_quadrature_covariance(sc.ClonerConfig(2.0))
    assert duan_value(cov) == pytest.approx(4.0, abs=1e-12)
