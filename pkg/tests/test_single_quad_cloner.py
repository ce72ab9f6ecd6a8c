import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussclone import single_quad_cloner as sq
from gaussclone.ensembles import GaussianEnsemble
from gaussclone.errors import DomainError
from gaussclone.phase_space import CoherentAmplitude, fidelity_vs_coherent
from gaussclone.symmetric_cloner import ClonerConfig, clone_quadrature_covariance

V_OPT = math.sqrt(8 / 5)
F_MAX = 4 / 9 * (math.sqrt(10) - 1)


def test_unity_gain_H():
    assert sq.unity_gain_H() == 1.125
    assert sq.unity_gain_H_bisect() == pytest.approx(1.125, abs=1e-10)
    state = sq.clone_line_state(1.0, sq.LineClonerConfig())
    assert state.mode_mean(0)[0] == pytest.approx(2.0, abs=1e-14)


def test_config_validation():
    with pytest.raises(DomainError):
        sq.LineClonerConfig(H=0.9)
    with pytest.raises(DomainError):
        sq.LineClonerConfig(v_plus=0)


def test_optimal_variances():
    c = sq.clone_line(0.0, sq.LineClonerConfig())
    for k in (0, 1):
        vp, vm = c.clone_variances(k)
        assert vp == pytest.approx(1.632456, abs=1e-6)
        assert vm == pytest.approx(0.645285, abs=1e-6)
        assert 1 <= vp * vm <= 1.06
    assert c.cov[0, 2] == pytest.approx(0.367544, abs=1e-6)


@given(st.floats(1.0, 4.0), st.floats(0.05, 20.0), st.floats(-5, 5))
@settings(max_examples=100, deadline=None)
def test_circuit_matches_variance_display(H, v, ax):
    c = sq.clone_line(ax, sq.LineClonerConfig(H, v))
    expected = sq.clone_variance_formula(H, v)
    for k in (0, 1):
        assert c.clone_variances(k) == pytest.approx(expected, abs=1e-12 * max(1, H * v, H / v))


@given(st.floats(1.0, 4.0), st.floats(0.05, 20.0), st.floats(-5, 5))
@settings(max_examples=100, deadline=None)
def test_two_opo_construction_matches(H, v, ax):
    cfg = sq.LineClonerConfig(H, v)
    a = sq.clone_line(ax, cfg)
    b = sq.clone_line(ax, cfg, construction="two_opo")
    scale = max(1.0, H * v, H / v)
    np.testing.assert_allclose(a.mean, b.mean, atol=1e-12 * max(1, abs(ax)) * scale)
    np.testing.assert_allclose(a.cov, b.cov, atol=1e-12 * scale)


def test_unknown_construction():
    with pytest.raises(DomainError):
        sq.clone_line(0.0, sq.LineClonerConfig(), construction="magic")


def test_fidelity_line_examples():
    assert sq.fidelity_line(V_OPT) == pytest.approx(F_MAX, abs=1e-14)
    # 0.961011 is the truncated decimal; the value is 0.9610122934...
    assert F_MAX == pytest.approx(0.9610123, abs=1e-7)
    assert sq.fidelity_line(1.0) == pytest.approx(2 / math.sqrt(4.375), abs=1e-14)
    assert sq.fidelity_line(1.0) == pytest.approx(0.956183, abs=1e-6)
    assert sq.fidelity_line(4.0) == pytest.approx(2 / math.sqrt(5.5), abs=1e-14)
    with pytest.raises(DomainError):
        sq.fidelity_line(0.0)


@pytest.mark.parametrize("v", [0.2, 1.0, V_OPT, 4.0])
def test_fidelity_circuit_matches_closed(v):
    cfg = sq.LineClonerConfig(v_plus=v)
    for k in (0, 1):
        assert sq.fidelity_line_circuit(0.7, cfg, k) == pytest.approx(sq.fidelity_line(v), abs=1e-12)


def test_alpha_independence():
    cfg = sq.LineClonerConfig()
    values = [sq.fidelity_line_circuit(a, cfg) for a in (0, 1, 5, 20)]
    assert max(values) - min(values) < 1e-12


def test_optimum_numeric():
    r = sq.optimal_vsqz_numeric()
    assert r.argmax == pytest.approx(V_OPT, abs=1e-8)
    assert r.value == pytest.approx(F_MAX, abs=1e-10)
    assert sq.optimal_vsqz() == (sq.OPTIMAL_V_PLUS, sq.MAX_LINE_FIDELITY)


def test_unimodal():
    v = np.geomspace(1e-3, 10, 5001)
    f = sq.fidelity_line(v)
    i = int(np.argmax(f))
    assert 0 < i < len(v) - 1
    assert np.all(np.diff(f[: i + 1]) > 0)
    assert np.all(np.diff(f[i:]) < 0)


def test_snr_plus_examples():
    assert sq.snr_plus(V_OPT) == pytest.approx(5 / (5 + math.sqrt(10)), abs=1e-14)
    assert sq.snr_plus(V_OPT) == pytest.approx(0.612574, abs=1e-6)
    assert sq.snr_plus(1.0) == pytest.approx(2 / 3)
    assert sq.snr_plus(1e-12) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("v", [0.1, 1.0, V_OPT, 10.0])
def test_snr_circuit(v):
    cfg = sq.LineClonerConfig(v_plus=v)
    assert sq.snr_plus_circuit(cfg) == pytest.approx(sq.snr_plus(v), abs=1e-12)
    assert sq.sum_snr_transfer(cfg) == pytest.approx(1.0, abs=1e-12)


def test_duan_values():
    assert sq.duan_value(sq.clone_line(0.0, sq.LineClonerConfig())) == pytest.approx(V_OPT + 0.5, abs=1e-12)
    assert V_OPT + 0.5 == pytest.approx(1.764911, abs=1e-6)
    assert sq.duan_value(sq.clone_line(0.0, sq.LineClonerConfig(1.0, 1.0))) == pytest.approx(2.0, abs=1e-14)
    assert sq.duan_value(clone_quadrature_covariance(ClonerConfig(2.0))) == pytest.approx(4.0, abs=1e-12)
    with pytest.raises(DomainError):
        sq.duan_value(np.eye(2))


def test_line_average_unity_gain_is_exact():
    cfg = sq.LineClonerConfig()
    for sx in (0.0, 1.0, 1e3):
        r = sq.line_average_fidelity(cfg, GaussianEnsemble(sx, 0.0))
        assert r.value == pytest.approx(F_MAX, abs=1e-12)


@pytest.mark.parametrize("H, v", [(1.0, 1.0), (1.5, 0.7), (2.0, 3.0)])
def test_line_average_closed_vs_numeric(H, v):
    cfg = sq.LineClonerConfig(H, v)
    e = GaussianEnsemble(0.8, 0.3)
    closed = sq.line_average_fidelity(cfg, e).value
    quad = sq.line_average_fidelity(cfg, e, "quadrature").value
    assert quad == pytest.approx(closed, abs=1e-10)
    mc = sq.line_average_fidelity(cfg, e, "monte_carlo", budget=200_000, seed=3)
    assert abs(mc.value - closed) < 4 * mc.std_error


def test_line_average_needs_centred_ensemble():
    with pytest.raises(DomainError):
        sq.line_average_fidelity(sq.LineClonerConfig(), GaussianEnsemble(1, 0, mean_x=1))


def test_clone_fidelity_matches_phase_space():
    cfg = sq.LineClonerConfig(1.3, 2.0)
    state = sq.clone_line_state(0.4, cfg)
    assert sq.fidelity_line_circuit(0.4, cfg) == fidelity_vs_coherent(CoherentAmplitude(0.4, 0), state, 0)


def test_sweep_global():
    r = sq.parameter_sweep()
    assert r.fidelity <= F_MAX + 1e-6
    assert r.H == pytest.approx(9 / 8, abs=1e-4)
    assert r.v_plus == pytest.approx(V_OPT, abs=1e-4)
    assert r.fidelity == pytest.approx(F_MAX, abs=1e-6)
    assert r.grid_best <= r.fidelity


def test_sweep_restricted():
    fixed_v = sq.parameter_sweep(fixed_v=1.0)
    assert fixed_v.fidelity == pytest.approx(2 / math.sqrt(4.375), abs=1e-6)
    assert fixed_v.H == pytest.approx(9 / 8, abs=1e-4)
    passive = sq.parameter_sweep(fixed_H=1.0)
    assert passive.fidelity < F_MAX
