"""Deterministic numerical kernels shared by the rest of the package.

Gauss-Hermite rules, a golden-section maximizer, a bisection root finder and
seeded normal streams. Nothing here knows about quantum optics.

Random streams use numpy's ``PCG64`` bit generator seeded directly with the
integer seed; normal deviates come from ``Generator.standard_normal`` (numpy's
ziggurat sampler). Independent substreams for parallel workers are derived
with ``SeedSequence(seed).spawn(k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class OptimizationResult:
    argmax: float
    value: float
    iterations: int
    tolerance_achieved: float


def gauss_hermite_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``integral exp(-t**2) f(t) dt``.

    The rule with ``order`` points is exact for polynomials of degree up to
    ``2 * order - 1``. Weights are positive and sum to ``sqrt(pi)``.
    """
    if int(order) != order or order < 1:
        raise DomainError(f"quadrature order must be a positive integer, got {order!r}")
    return _hermite_rule(int(order))


@lru_cache(maxsize=64)
def _hermite_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    # hermgauss is symmetric up to rounding; enforce it exactly
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 500,
    polish: bool = True,
) -> OptimizationResult:
    """Maximize a unimodal function on ``[lo, hi]`` by golden-section search.

    The bracket shrinks by the golden ratio every iteration until its width is
    at most ``tol``. Near a smooth interior maximum, comparisons stop being
    meaningful once the bracket is about ``sqrt(eps)`` wide, so with
    ``polish=True`` a single parabolic step through three points spaced
    ``1e-6 * (hi - lo)`` apart refines the estimate. The polished point is only
    accepted if it lies inside that local stencil and does not lower ``f``.

    ``f`` is never evaluated outside ``[lo, hi]``.
    """
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise DomainError(f"invalid bracket [{lo}, {hi}]")
    if tol <= 0:
        raise DomainError("tol must be positive")

    a, b = float(lo), float(hi)
    h = b - a
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    iterations = 0
    while (b - a) > tol and iterations < max_iter:
        iterations += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI_SQ * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = f(d)

    x_best, f_best = (c, fc) if fc >= fd else (d, fd)
    for x_end in (a, b):
        f_end = f(x_end)
        if f_end > f_best:
            x_best, f_best = x_end, f_end

    if polish:
        step = 1e-6 * (hi - lo)
        left, right = x_best - step, x_best + step
        if left >= lo and right <= hi:
            f_left, f_right = f(left), f(right)
            curvature = f_left - 2.0 * f_best + f_right
            if curvature < 0.0:
                shift = 0.5 * step * (f_left - f_right) / curvature
                if abs(shift) <= step:
                    x_new = x_best + shift
                    f_new = f(x_new)
                    if f_new >= f_best - 4.0 * np.finfo(float).eps * abs(f_best):
                        x_best, f_best = x_new, f_new

    return OptimizationResult(
        argmax=float(x_best),
        value=float(f_best),
        iterations=iterations,
        tolerance_achieved=float(b - a),
    )


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 400,
) -> float:
    """Bisection root of ``f`` on ``[lo, hi]``; requires ``f(lo) * f(hi) <= 0``."""
    if not lo < hi:
        raise DomainError(f"invalid bracket [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if np.sign(flo) == np.sign(fhi):
        raise DomainError(f"no sign change on [{lo}, {hi}]: f={flo:.3g}, {fhi:.3g}")

    a, b = float(lo), float(hi)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if np.sign(fm) == np.sign(flo):
            a, flo = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def seeded_stream(seed: int) -> np.random.Generator:
    """Return a PCG64 generator seeded with ``seed``; draw normals with ``standard_normal``."""
    return np.random.Generator(np.random.PCG64(seed))


def spawn_streams(seed: int, n_streams: int) -> list[np.random.Generator]:
    """Independent PCG64 substreams for ``n_streams`` parallel workers."""
    if n_streams < 1:
        raise DomainError("need at least one stream")
    children = np.random.SeedSequence(seed).spawn(n_streams)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]
