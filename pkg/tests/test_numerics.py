import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussclone import numerics
from gaussclone.errors import DomainError


def gaussian_moment(k):
    # integral t^k exp(-t^2) dt over the real line
    if k % 2:
        return 0.0
    return math.gamma((k + 1) / 2)


def test_order_one_rule():
    t, w = numerics.gauss_hermite_nodes(1)
    assert t.tolist() == [0.0]
    assert w[0] == pytest.approx(math.sqrt(math.pi), abs=1e-15)


def test_order_two_rule():
    t, w = numerics.gauss_hermite_nodes(2)
    np.testing.assert_allclose(t, [-1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
    np.testing.assert_allclose(w, [math.sqrt(math.pi) / 2] * 2, atol=1e-15)


def test_order_twenty_tenth_moment():
    t, w = numerics.gauss_hermite_nodes(20)
    # Gamma(11/2) = 945 sqrt(pi) / 32
    assert w @ t**10 == pytest.approx(945 * math.sqrt(math.pi) / 32, abs=1e-12)


@pytest.mark.parametrize("order", [1, 2, 5, 20, 40])
def test_rule_shape_invariants(order):
    t, w = numerics.gauss_hermite_nodes(order)
    assert np.all(w > 0)
    assert w.sum() == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    np.testing.assert_array_equal(t, -t[::-1])


@pytest.mark.parametrize("order", [1, 3, 8, 15])
def test_polynomial_exactness(order):
    t, w = numerics.gauss_hermite_nodes(order)
    for k in range(2 * order):
        exact = gaussian_moment(k)
        scale = max(1.0, w @ np.abs(t) ** k)
        assert w @ t**k == pytest.approx(exact, abs=1e-12 * scale)


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_bad_order(bad):
    with pytest.raises(DomainError):
        numerics.gauss_hermite_nodes(bad)


def test_maximize_quadratic():
    r = numerics.maximize_scalar(lambda x: -((x - 2.0) ** 2), 0.0, 5.0, tol=1e-10)
    assert r.argmax == pytest.approx(2.0, abs=1e-10)
    assert r.value == pytest.approx(0.0, abs=1e-18)
    assert r.tolerance_achieved <= 1e-10


def test_maximize_boundary_peak():
    r = numerics.maximize_scalar(lambda x: -x, 1.0, 3.0, tol=1e-12)
    assert r.argmax == pytest.approx(1.0, abs=1e-11)


def test_maximize_stays_inside_bracket():
    seen = []

    def f(x):
        seen.append(x)
        return math.sin(x)

    numerics.maximize_scalar(f, 0.3, 2.9, tol=1e-11)
    assert min(seen) >= 0.3 and max(seen) <= 2.9


def test_maximize_matches_scipy():
    from scipy.optimize import minimize_scalar

    f = lambda x: x * math.exp(-x)  # noqa: E731
    ours = numerics.maximize_scalar(f, 0.0, 6.0)
    ref = minimize_scalar(lambda x: -f(x), bounds=(0, 6), method="bounded", options={"xatol": 1e-12})
    assert ours.argmax == pytest.approx(ref.x, abs=1e-8)
    assert ours.argmax == pytest.approx(1.0, abs=1e-8)


def test_maximize_invalid_bracket():
    with pytest.raises(DomainError):
        numerics.maximize_scalar(lambda x: x, 2.0, 1.0)


def test_find_root_linear():
    assert numerics.find_root(lambda x: x - 0.5, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)


def test_find_root_opo_unity_gain():
    g = lambda H: math.sqrt(H) + math.sqrt(H - 1) - math.sqrt(2)  # noqa: E731
    assert numerics.find_root(g, 1.0, 2.0, tol=1e-14) == pytest.approx(9 / 8, abs=1e-12)


def test_find_root_no_sign_change():
    with pytest.raises(DomainError):
        numerics.find_root(lambda x: x * x + 1, -1.0, 1.0)


def test_find_root_interval_halves():
    calls = []

    def f(x):
        calls.append(x)
        return x - 1 / 3

    numerics.find_root(f, 0.0, 1.0, tol=1e-10)
    mids = calls[2:]
    # successive midpoints move by exactly half the previous step
    steps = np.abs(np.diff(mids))
    np.testing.assert_allclose(steps[1:] / steps[:-1], 0.5, rtol=1e-9)


@given(st.floats(-50, 50), st.floats(0.01, 10))
@settings(max_examples=50, deadline=None)
def test_find_root_property(root, half_width):
    r = numerics.find_root(lambda x: x - root, root - half_width, root + half_width * 0.7, tol=1e-13)
    assert abs(r - root) <= 1e-12 * max(1, abs(root))


def test_stream_determinism():
    a = numerics.seeded_stream(123).standard_normal(10_000)
    b = numerics.seeded_stream(123).standard_normal(10_000)
    np.testing.assert_array_equal(a, b)


def test_stream_moments():
    z = numerics.seeded_stream(2024).standard_normal(1_000_000)
    assert abs(z.mean()) < 4 / math.sqrt(1e6)
    assert abs(z.var() - 1) < 0.01


def test_spawned_streams_are_distinct_and_reproducible():
    a = [g.standard_normal(5) for g in numerics.spawn_streams(7, 3)]
    b = [g.standard_normal(5) for g in numerics.spawn_streams(7, 3)]
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)
    assert not np.allclose(a[0], a[1])
