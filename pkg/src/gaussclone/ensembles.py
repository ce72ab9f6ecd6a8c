"""Gaussian priors over coherent amplitudes and averages over them."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import numerics
from .errors import DomainError
from .phase_space import CoherentAmplitude

DEFAULT_ORDER = 40
DEFAULT_SAMPLES = 100_000

METHODS = ("closed", "quadrature", "monte_carlo")


@dataclass(frozen=True)
class GaussianEnsemble:
    """Independent normal priors on the real and imaginary parts of ``alpha``."""

    sigma_x: float
    sigma_y: float
    mean_x: float = 0.0
    mean_y: float = 0.0

    def __post_init__(self):
        if not (self.sigma_x >= 0 and self.sigma_y >= 0):
            raise DomainError(f"ensemble widths must be >= 0, got {self.sigma_x}, {self.sigma_y}")

    @classmethod
    def symmetric(cls, sigma: float) -> "GaussianEnsemble":
        return cls(sigma, sigma)

    @property
    def is_symmetric(self) -> bool:
        return self.sigma_x == self.sigma_y

    @property
    def is_delta(self) -> bool:
        return self.sigma_x == 0 and self.sigma_y == 0


@dataclass(frozen=True)
class EnsembleAverage:
    value: float
    method: str
    std_error: float = 0.0
    n_evaluations: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown averaging method {self.method!r}")
        if self.std_error < 0:
            raise DomainError("std_error must be non-negative")
        if self.method != "monte_carlo" and self.std_error != 0:
            raise DomainError("deterministic averages carry no standard error")


def density(ensemble: GaussianEnsemble, alpha: CoherentAmplitude):
    """Probability density ``P(alpha)`` with respect to ``d(re) d(im)``."""
    sx, sy = ensemble.sigma_x, ensemble.sigma_y
    if sx == 0 or sy == 0:
        raise DomainError("density is undefined for a zero-width ensemble")
    dx = np.asarray(alpha.re) - ensemble.mean_x
    dy = np.asarray(alpha.im) - ensemble.mean_y
    return np.exp(-0.5 * (dx / sx) ** 2 - 0.5 * (dy / sy) ** 2) / (2.0 * np.pi * sx * sy)


def _draw(ensemble: GaussianEnsemble, n: int, rng: np.random.Generator) -> CoherentAmplitude:
    z = rng.standard_normal((2, n))
    return CoherentAmplitude(
        ensemble.mean_x + ensemble.sigma_x * z[0],
        ensemble.mean_y + ensemble.sigma_y * z[1],
    )


def sample(ensemble: GaussianEnsemble, n: int, seed: int) -> CoherentAmplitude:
    """Draw ``n`` amplitudes as one batched :class:`CoherentAmplitude`.

    A zero-width axis is returned at its mean exactly. A fully degenerate
    ensemble (both widths zero) is rejected; average over it with
    :func:`average`, which evaluates the integrand at the mean.
    """
    if n < 1:
        raise DomainError("need at least one sample")
    if ensemble.is_delta:
        raise DomainError("cannot sample a zero-width ensemble")
    return _draw(ensemble, int(n), numerics.seeded_stream(seed))


def _chunk_sizes(n: int, workers: int) -> list[int]:
    base, extra = divmod(n, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def average(
    f: Callable[[CoherentAmplitude], np.ndarray],
    ensemble: GaussianEnsemble,
    method: str = "quadrature",
    budget: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> EnsembleAverage:
    """Average ``f`` over the ensemble.

    ``f`` receives a batched :class:`CoherentAmplitude` and must return an
    array of the same shape.

    ``method="quadrature"`` uses a tensor-product Gauss-Hermite rule with
    ``budget`` nodes per axis (default 40). ``method="monte_carlo"`` draws
    ``budget`` samples (default 1e5); with ``workers > 1`` the draw is split
    over ``workers`` spawned substreams, so the result depends on
    ``(seed, workers)`` but not on scheduling. A zero-width ensemble is
    averaged exactly by evaluating ``f`` at the mean.
    """
    if method not in ("quadrature", "monte_carlo"):
        raise DomainError(f"method must be 'quadrature' or 'monte_carlo', got {method!r}")
    if budget is not None and budget < 1:
        raise DomainError("budget must be at least 1")

    if ensemble.is_delta:
        value = float(np.asarray(f(CoherentAmplitude(ensemble.mean_x, ensemble.mean_y))))
        return EnsembleAverage(value, method, 0.0, 1)

    if method == "quadrature":
        order = DEFAULT_ORDER if budget is None else int(budget)
        t, w = numerics.gauss_hermite_nodes(order)
        w = w / np.sqrt(np.pi)

        def axis(sigma, mu):
            if sigma == 0:
                return np.array([mu]), np.array([1.0])
            return mu + np.sqrt(2.0) * sigma * t, w

        xs, wx = axis(ensemble.sigma_x, ensemble.mean_x)
        ys, wy = axis(ensemble.sigma_y, ensemble.mean_y)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        values = np.asarray(f(CoherentAmplitude(gx, gy)))
        value = float(wx @ values @ wy)
        return EnsembleAverage(value, "quadrature", 0.0, values.size)

    n = DEFAULT_SAMPLES if budget is None else int(budget)
    if workers < 1:
        raise DomainError("workers must be >= 1")
    if workers == 1:
        values = np.asarray(f(_draw(ensemble, n, numerics.seeded_stream(seed))))
    else:
        streams = numerics.spawn_streams(seed, workers)
        sizes = _chunk_sizes(n, workers)

        def run(job):
            rng, size = job
            return np.asarray(f(_draw(ensemble, size, rng)))

        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.concatenate(list(pool.map(run, zip(streams, sizes))))
    std_error = float(values.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return EnsembleAverage(float(values.mean()), "monte_carlo", std_error, n)
